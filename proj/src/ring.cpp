#include "mmv/ring.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>

namespace mmv {

namespace {

constexpr uint64_t kMaxPrime = (uint64_t(1) << 61) - 1;
constexpr uint64_t kMaxFieldSize = uint64_t(1) << 40;  // desk-scale cap for GF(p^e)

uint64_t parse_u64_strict(const std::string& s, const char* what) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) fail(Errc::ParseError, std::string("bad ") + what + ": '" + s + "'");
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(Errc::ParseError, std::string("bad ") + what + ": '" + s + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------- int128

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

i128 parse_i128(const std::string& s) {
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && s[i] == '-') {
    neg = true;
    ++i;
  }
  if (i == s.size()) fail(Errc::ParseError, "empty integer");
  if (s[i] == '0' && s.size() > i + 1) fail(Errc::ParseError, "non-canonical integer '" + s + "'");
  u128 acc = 0;
  constexpr u128 limit = ~u128(0);
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9') fail(Errc::ParseError, "bad integer '" + s + "'");
    if (acc > (limit - (c - '0')) / 10) fail(Errc::ParseError, "integer out of range '" + s + "'");
    acc = acc * 10 + static_cast<unsigned>(c - '0');
  }
  constexpr u128 max_pos = (u128(1) << 127) - 1;
  if (!neg && acc > max_pos) fail(Errc::ParseError, "integer out of range '" + s + "'");
  if (neg && acc > max_pos + 1) fail(Errc::ParseError, "integer out of range '" + s + "'");
  if (neg) {
    if (acc == max_pos + 1) return -static_cast<i128>(max_pos) - 1;
    return -static_cast<i128>(acc);
  }
  return static_cast<i128>(acc);
}

u128 isqrt(u128 x) {
  if (x == 0) return 0;
  u128 r = 0;
  u128 bit = u128(1) << 126;
  while (bit > x) bit >>= 2;
  while (bit != 0) {
    if (x >= r + bit) {
      x -= r + bit;
      r = (r >> 1) + bit;
    } else {
      r >>= 1;
    }
    bit >>= 2;
  }
  return r;
}

// ---------------------------------------------------------------- scalar mod-p

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;  // p < 2^61, no wrap
  return s >= p ? s - p : s;
}

uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((u128(a) * b) % p);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t p) {
  uint64_t r = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) fail(Errc::NotInvertible, "0 has no inverse mod " + std::to_string(p));
  // extended Euclid on (a, p); coefficients tracked mod p
  int64_t t = 0, new_t = 1;
  uint64_t r = p, new_r = a;
  while (new_r != 0) {
    uint64_t q = r / new_r;
    int64_t tmp_t = t - static_cast<int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  assert(r == 1);  // p prime, a != 0
  int64_t res = t % static_cast<int64_t>(p);
  if (res < 0) res += static_cast<int64_t>(p);
  return static_cast<uint64_t>(res);
}

// ---------------------------------------------------------------- primes

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

uint64_t find_prime_in(uint64_t lo, uint64_t hi) {
  if (lo < 2) lo = 2;
  if (hi > kMaxPrime) fail(Errc::TooLarge, "prime search above 2^61");
  for (uint64_t p = lo; p <= hi; ++p) {
    if (is_prime_u64(p)) return p;
  }
  fail(Errc::NoPrimeInRange, "no prime in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------- polynomials over Z_p

namespace {

// dense coefficient vectors over Z_p, lowest degree first
using Poly = std::vector<uint64_t>;

size_t poly_degree(const Poly& a) {
  size_t d = a.size();
  while (d > 0 && a[d - 1] == 0) --d;
  return d == 0 ? 0 : d - 1;
}

bool poly_is_zero(const Poly& a) {
  for (uint64_t c : a)
    if (c != 0) return false;
  return true;
}

// a mod f, f monic of degree e >= 1
Poly poly_mod(Poly a, const Poly& f, uint64_t p) {
  size_t e = f.size() - 1;
  if (a.size() <= e) {
    a.resize(e, 0);
    return a;
  }
  for (size_t d = a.size() - 1; d >= e; --d) {
    uint64_t c = a[d];
    if (c != 0) {
      a[d] = 0;
      for (size_t j = 0; j < e; ++j) {
        a[d - e + j] = sub_mod(a[d - e + j], mul_mod(c, f[j], p), p);
      }
    }
    if (d == e) break;
  }
  a.resize(e, 0);
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
  size_t e = f.size() - 1;
  Poly conv(2 * e - 1, 0);
  for (size_t i = 0; i < e; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < e; ++j) {
      if (b[j] == 0) continue;
      conv[i + j] = add_mod(conv[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  return poly_mod(std::move(conv), f, p);
}

// g^(p^reps) mod f by iterated powering
Poly poly_frobenius(Poly g, const Poly& f, uint64_t p, uint32_t reps) {
  size_t e = f.size() - 1;
  for (uint32_t r = 0; r < reps; ++r) {
    Poly result(e, 0);
    result[0] = 1;
    Poly base = g;
    uint64_t exp = p;
    while (exp > 0) {
      if (exp & 1) result = poly_mulmod(result, base, f, p);
      base = poly_mulmod(base, base, f, p);
      exp >>= 1;
    }
    g = std::move(result);
  }
  return g;
}

// a <- a mod b, b non-zero; the leading term cancels exactly each step
void poly_reduce(Poly& a, const Poly& b, uint64_t p) {
  size_t db = poly_degree(b);
  uint64_t lead_inv = mod_inverse(b[db], p);
  while (!poly_is_zero(a)) {
    size_t da = poly_degree(a);
    if (da < db) break;
    uint64_t c = mul_mod(a[da], lead_inv, p);
    size_t shift = da - db;
    for (size_t j = 0; j <= db; ++j) {
      a[shift + j] = sub_mod(a[shift + j], mul_mod(c, b[j], p), p);
    }
  }
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  while (!poly_is_zero(b)) {
    poly_reduce(a, b, p);
    std::swap(a, b);
  }
  a.resize(poly_degree(a) + 1);
  return a;
}

}  // namespace

bool is_irreducible(uint64_t p, std::span<const uint64_t> poly) {
  // Rabin's criterion: monic f of degree e is irreducible over Z_p iff
  // x^(p^e) == x (mod f) and gcd(x^(p^(e/q)) - x mod f, f) = 1 for every prime q | e.
  if (poly.size() < 2) return false;
  size_t e = poly.size() - 1;
  if (poly[e] != 1) return false;
  if (e == 1) return true;
  Poly f(poly.begin(), poly.end());
  Poly x(e, 0);
  x[1] = 1;

  for (uint64_t q : prime_factors(e)) {
    Poly g = poly_frobenius(x, f, p, static_cast<uint32_t>(e / q));
    Poly diff = g;
    diff[1] = sub_mod(diff[1], 1, p);
    if (poly_is_zero(diff)) return false;
    Poly d = poly_gcd(f, diff, p);
    if (poly_degree(d) != 0) return false;
  }
  Poly full = poly_frobenius(x, f, p, static_cast<uint32_t>(e));
  Poly diff = full;
  diff[1] = sub_mod(diff[1], 1, p);
  return poly_is_zero(diff);
}

namespace {

// Candidate moduli are enumerated as x^e + c_{e-1} x^{e-1} + ... + c_0 with
// (c_{e-1}, ..., c_0) the base-p digits of an increasing counter, so the first
// irreducible hit is the same on every platform.
std::vector<uint64_t> canonical_ipoly(uint64_t p, uint32_t e) {
  if (e == 1) return {0, 1};  // x
  std::vector<uint64_t> f(e + 1, 0);
  f[e] = 1;
  u128 total = 1;
  for (uint32_t i = 0; i < e; ++i) total *= p;
  for (u128 counter = 0; counter < total; ++counter) {
    u128 v = counter;
    for (uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<uint64_t>(v % p);
      v /= p;
    }
    if (is_irreducible(p, f)) return f;
  }
  fail(Errc::TooLarge, "no irreducible polynomial found");  // unreachable: they exist for every p, e
}

}  // namespace

RingSpec build_extension(uint64_t p, uint64_t min_size) {
  if (!is_prime_u64(p)) fail(Errc::ConfigError, std::to_string(p) + " is not prime");
  if (min_size < 2) fail(Errc::ConfigError, "extension size must be at least 2");
  if (p >= min_size) return RingSpec::ext_field(p, 1);
  uint32_t e = 1;
  u128 size = p;
  while (size < min_size) {
    size *= p;
    ++e;
    if (size > kMaxFieldSize) fail(Errc::TooLarge, "extension field past the 2^40 desk-scale cap");
  }
  return RingSpec::ext_field(p, e);
}

uint64_t element_of_order_at_least(const RingSpec& spec, uint64_t m) {
  if (spec.kind() != RingKind::PrimeField) fail(Errc::RingMismatch, "generator search needs a prime field");
  uint64_t p = spec.prime();
  if (p - 1 < m) {
    fail(Errc::OrderUnavailable,
         "group order " + std::to_string(p - 1) + " below requested " + std::to_string(m));
  }
  std::vector<uint64_t> factors = prime_factors(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    bool generator = true;
    for (uint64_t q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  fail(Errc::OrderUnavailable, "no generator found");  // unreachable for prime p > 2
}

// ---------------------------------------------------------------- RingSpec

RingSpec RingSpec::prime_field(uint64_t p) {
  if (p > kMaxPrime) fail(Errc::TooLarge, "prime modulus must be below 2^61");
  if (!is_prime_u64(p)) fail(Errc::ConfigError, std::to_string(p) + " is not prime");
  RingSpec r;
  r.kind_ = RingKind::PrimeField;
  r.p_ = p;
  return r;
}

RingSpec RingSpec::ext_field(uint64_t p, uint32_t degree) {
  if (!is_prime_u64(p)) fail(Errc::ConfigError, std::to_string(p) + " is not prime");
  if (degree < 1) fail(Errc::ConfigError, "extension degree must be >= 1");
  u128 size = 1;
  for (uint32_t i = 0; i < degree; ++i) {
    size *= p;
    if (size > kMaxFieldSize) fail(Errc::TooLarge, "extension field past the 2^40 desk-scale cap");
  }
  RingSpec r;
  r.kind_ = RingKind::ExtField;
  r.p_ = p;
  r.degree_ = degree;
  r.ipoly_ = canonical_ipoly(p, degree);
  return r;
}

RingSpec RingSpec::ext_field(uint64_t p, uint32_t degree, std::vector<uint64_t> ipoly) {
  RingSpec r = ext_field(p, degree);
  if (ipoly.size() != degree + size_t(1) || ipoly[degree] != 1)
    fail(Errc::ConfigError, "modulus must be monic of the stated degree");
  for (uint64_t c : ipoly)
    if (c >= p) fail(Errc::ConfigError, "modulus coefficients must be canonical residues");
  if (!is_irreducible(p, ipoly)) fail(Errc::ConfigError, "modulus polynomial is reducible");
  r.ipoly_ = std::move(ipoly);
  return r;
}

RingSpec RingSpec::integers(i128 magnitude_bound) {
  if (magnitude_bound < 1) fail(Errc::ConfigError, "integer magnitude bound must be >= 1");
  if (static_cast<u128>(magnitude_bound) >= kMagnitudeCap)
    fail(Errc::MagnitudeOverflow, "integer magnitude bound must stay below 2^126");
  RingSpec r;
  r.kind_ = RingKind::Int;
  r.magnitude_ = magnitude_bound;
  return r;
}

RingSpec RingSpec::parse_token(const std::string& token) {
  auto split = [&](const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
      size_t pos = s.find(':', start);
      if (pos == std::string::npos) {
        parts.push_back(s.substr(start));
        break;
      }
      parts.push_back(s.substr(start, pos - start));
      start = pos + 1;
    }
    return parts;
  };
  std::vector<std::string> parts = split(token);
  if (parts.size() == 2 && parts[0] == "zmod") return prime_field(parse_u64_strict(parts[1], "prime"));
  if (parts.size() == 3 && parts[0] == "gf") {
    uint64_t p = parse_u64_strict(parts[1], "prime");
    uint64_t e = parse_u64_strict(parts[2], "degree");
    if (e == 0 || e > 64) fail(Errc::ParseError, "bad extension degree in '" + token + "'");
    return ext_field(p, static_cast<uint32_t>(e));
  }
  if (parts.size() == 2 && parts[0] == "int") {
    i128 m = parse_i128(parts[1]);
    return integers(m);
  }
  fail(Errc::ParseError, "bad ring token '" + token + "'");
}

std::string RingSpec::token() const {
  switch (kind_) {
    case RingKind::PrimeField:
      return "zmod:" + std::to_string(p_);
    case RingKind::ExtField:
      return "gf:" + std::to_string(p_) + ":" + std::to_string(degree_);
    case RingKind::Int:
      return "int:" + to_string(magnitude_);
  }
  return {};
}

uint64_t RingSpec::field_size() const {
  assert(is_field());
  if (kind_ == RingKind::PrimeField) return p_;
  uint64_t s = 1;
  for (uint32_t i = 0; i < degree_; ++i) s *= p_;
  return s;
}

bool RingSpec::operator==(const RingSpec& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case RingKind::PrimeField:
      return p_ == other.p_;
    case RingKind::ExtField:
      return p_ == other.p_ && degree_ == other.degree_ && ipoly_ == other.ipoly_;
    case RingKind::Int:
      return magnitude_ == other.magnitude_;
  }
  return false;
}

// ---------------------------------------------------------------- Element

Element Element::of_residue(uint64_t r) {
  Element e;
  e.kind = RingKind::PrimeField;
  e.residue = r;
  return e;
}

Element Element::of_coeffs(std::vector<uint64_t> c) {
  Element e;
  e.kind = RingKind::ExtField;
  e.coeffs = std::move(c);
  return e;
}

Element Element::of_int(i128 v) {
  Element e;
  e.kind = RingKind::Int;
  e.value = v;
  return e;
}

bool Element::is_zero() const {
  switch (kind) {
    case RingKind::PrimeField:
      return residue == 0;
    case RingKind::Int:
      return value == 0;
    case RingKind::ExtField:
      for (uint64_t c : coeffs)
        if (c != 0) return false;
      return true;
  }
  return true;
}

bool Element::operator==(const Element& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case RingKind::PrimeField:
      return residue == other.residue;
    case RingKind::Int:
      return value == other.value;
    case RingKind::ExtField:
      return coeffs == other.coeffs;
  }
  return false;
}

// ---------------------------------------------------------------- ext coefficient arithmetic

void ext_add(const RingSpec& f, std::span<const uint64_t> a, std::span<const uint64_t> b, std::span<uint64_t> out) {
  uint64_t p = f.prime();
  for (size_t i = 0; i < a.size(); ++i) out[i] = add_mod(a[i], b[i], p);
}

void ext_sub(const RingSpec& f, std::span<const uint64_t> a, std::span<const uint64_t> b, std::span<uint64_t> out) {
  uint64_t p = f.prime();
  for (size_t i = 0; i < a.size(); ++i) out[i] = sub_mod(a[i], b[i], p);
}

void ext_neg(const RingSpec& f, std::span<const uint64_t> a, std::span<uint64_t> out) {
  uint64_t p = f.prime();
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] == 0 ? 0 : p - a[i];
}

void ext_mul(const RingSpec& f, std::span<const uint64_t> a, std::span<const uint64_t> b, std::span<uint64_t> out) {
  uint64_t p = f.prime();
  size_t e = f.degree();
  const std::vector<uint64_t>& ip = f.ipoly();
  std::vector<uint64_t> conv(2 * e - 1, 0);
  for (size_t i = 0; i < e; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < e; ++j) {
      if (b[j] == 0) continue;
      conv[i + j] = add_mod(conv[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  for (size_t d = 2 * e - 2; d >= e; --d) {
    uint64_t c = conv[d];
    if (c != 0) {
      conv[d] = 0;
      for (size_t j = 0; j < e; ++j) conv[d - e + j] = sub_mod(conv[d - e + j], mul_mod(c, ip[j], p), p);
    }
    if (d == e) break;
  }
  for (size_t i = 0; i < e; ++i) out[i] = conv[i];
}

void ext_inv(const RingSpec& f, std::span<const uint64_t> a, std::span<uint64_t> out) {
  // extended Euclid in Z_p[x] against the modulus
  uint64_t p = f.prime();
  size_t e = f.degree();
  bool zero = true;
  for (size_t i = 0; i < e; ++i)
    if (a[i] != 0) zero = false;
  if (zero) fail(Errc::NotInvertible, "0 has no inverse in " + f.token());

  std::vector<uint64_t> r0(f.ipoly());
  std::vector<uint64_t> r1(a.begin(), a.end());
  r1.resize(e + 1, 0);
  std::vector<uint64_t> t0(e + 1, 0), t1(e + 1, 0);
  t1[0] = 1;

  auto deg = [](const std::vector<uint64_t>& v) {
    size_t d = v.size();
    while (d > 0 && v[d - 1] == 0) --d;
    return d == 0 ? size_t(0) : d - 1;
  };
  auto zerop = [](const std::vector<uint64_t>& v) {
    for (uint64_t c : v)
      if (c) return false;
    return true;
  };

  while (!zerop(r1)) {
    size_t d1 = deg(r1);
    uint64_t inv_lead = mod_inverse(r1[d1], p);
    // r0 <- r0 mod r1, applying the same quotient to t0
    while (!zerop(r0)) {
      size_t d0 = deg(r0);
      if (d0 < d1) break;
      uint64_t c = mul_mod(r0[d0], inv_lead, p);
      size_t shift = d0 - d1;
      for (size_t j = 0; j <= d1; ++j) r0[shift + j] = sub_mod(r0[shift + j], mul_mod(c, r1[j], p), p);
      for (size_t j = 0; j + shift <= e; ++j) t0[shift + j] = sub_mod(t0[shift + j], mul_mod(c, t1[j], p), p);
    }
    std::swap(r0, r1);
    std::swap(t0, t1);
  }
  // r0 is now a non-zero constant gcd; scale t0 by its inverse
  uint64_t scale = mod_inverse(r0[0], p);
  for (size_t i = 0; i < e; ++i) out[i] = mul_mod(t0[i], scale, p);
}

// ---------------------------------------------------------------- FieldOps

FieldOps::FieldOps(const RingSpec& spec) : spec_(spec) {
  if (!spec.is_field()) fail(Errc::RingMismatch, "FieldOps requires a field");
  size_ = spec.field_size();
}

void FieldOps::index_to_coeffs(uint64_t index, std::span<uint64_t> out) const {
  uint64_t p = spec_.prime();
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = index % p;
    index /= p;
  }
}

uint64_t FieldOps::coeffs_to_index(std::span<const uint64_t> coeffs) const {
  uint64_t p = spec_.prime();
  uint64_t idx = 0;
  for (size_t i = coeffs.size(); i-- > 0;) idx = idx * p + coeffs[i];
  return idx;
}

uint64_t FieldOps::add(uint64_t a, uint64_t b) const {
  if (spec_.kind() == RingKind::PrimeField) return add_mod(a, b, spec_.prime());
  size_t e = spec_.degree();
  std::vector<uint64_t> ca(e), cb(e), co(e);
  index_to_coeffs(a, ca);
  index_to_coeffs(b, cb);
  ext_add(spec_, ca, cb, co);
  return coeffs_to_index(co);
}

uint64_t FieldOps::sub(uint64_t a, uint64_t b) const {
  if (spec_.kind() == RingKind::PrimeField) return sub_mod(a, b, spec_.prime());
  size_t e = spec_.degree();
  std::vector<uint64_t> ca(e), cb(e), co(e);
  index_to_coeffs(a, ca);
  index_to_coeffs(b, cb);
  ext_sub(spec_, ca, cb, co);
  return coeffs_to_index(co);
}

uint64_t FieldOps::neg(uint64_t a) const { return sub(0, a); }

uint64_t FieldOps::mul(uint64_t a, uint64_t b) const {
  if (spec_.kind() == RingKind::PrimeField) return mul_mod(a, b, spec_.prime());
  size_t e = spec_.degree();
  std::vector<uint64_t> ca(e), cb(e), co(e);
  index_to_coeffs(a, ca);
  index_to_coeffs(b, cb);
  ext_mul(spec_, ca, cb, co);
  return coeffs_to_index(co);
}

uint64_t FieldOps::inv(uint64_t a) const {
  if (spec_.kind() == RingKind::PrimeField) return mod_inverse(a, spec_.prime());
  size_t e = spec_.degree();
  std::vector<uint64_t> ca(e), co(e);
  index_to_coeffs(a, ca);
  ext_inv(spec_, ca, co);
  return coeffs_to_index(co);
}

uint64_t FieldOps::pow(uint64_t base, uint64_t exp) const {
  if (spec_.kind() == RingKind::PrimeField) return pow_mod(base, exp, spec_.prime());
  uint64_t r = 1;
  while (exp > 0) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NoPrimeInRange: return "NoPrimeInRange";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::TooLarge: return "TooLarge";
    case Errc::OrderUnavailable: return "OrderUnavailable";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::MagnitudeOverflow: return "MagnitudeOverflow";
    case Errc::NoWitness: return "NoWitness";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::DegeneratePoints: return "DegeneratePoints";
    case Errc::TooLargeForOracle: return "TooLargeForOracle";
    case Errc::NotAllZeroesForm: return "NotAllZeroesForm";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::UsageError: return "UsageError";
  }
  return "Error";
}

}  // namespace mmv

#include "mmv/verify.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <numeric>

#include "mmv/codes.hpp"

namespace mmv {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t elapsed_nanos(Clock::time_point start) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

size_t instance_n(const Instance& inst) {
  const Matrix* mats[3] = {&inst.A, &inst.B, &inst.C};
  size_t n = inst.A.rows();
  if (n == 0) fail(Errc::DimMismatch, "empty instance");
  for (const Matrix* m : mats) {
    if (m->rows() != n || m->cols() != n) fail(Errc::DimMismatch, "instance matrices must be square and equal-sized");
    if (m->ring() != inst.ring) fail(Errc::RingMismatch, "instance matrices must share the instance ring");
  }
  return n;
}

uint64_t ceil_isqrt(uint64_t t) {
  uint64_t r = static_cast<uint64_t>(isqrt(t));
  if (r * r < t) ++r;
  return r;
}

// ---- magnitude bookkeeping for the Int ring ----

u128 mul_or_cap(u128 a, u128 b) {
  u128 r;
  if (!mul_fits_u128(a, b, &r)) return ~u128(0);
  return r;
}

u128 add_or_cap(u128 a, u128 b) {
  u128 r = a + b;
  if (r < a) return ~u128(0);
  return r;
}

// n * coeff * (n * M_a * M_b + M_c): worst |H (AB - C)| style bound
u128 sparse_bound(u128 n, u128 coeff, u128 ma, u128 mb, u128 mc) {
  u128 inner = add_or_cap(mul_or_cap(mul_or_cap(n, ma), mb), mc);
  return mul_or_cap(mul_or_cap(n, coeff), inner);
}

// The declared-magnitude admissibility gate for Int sparse verifiers:
// n * 2n * (n M^2 + M) must stay below 2^126.
void require_int_admissible(const Instance& inst, size_t n) {
  u128 m = static_cast<u128>(inst.ring.magnitude());
  if (sparse_bound(n, 2 * u128(n), m, m, m) >= kMagnitudeCap) {
    fail(Errc::MagnitudeOverflow, "declared magnitude bound fails the admissibility check for n = " +
                                      std::to_string(n));
  }
}

// ---- lifting a field instance into a large-enough extension ----

RingSpec lift_field(const RingSpec& ring, uint64_t min_size) {
  if (ring.field_size() >= min_size) return ring;
  if (ring.kind() == RingKind::PrimeField) return build_extension(ring.prime(), min_size);
  fail(Errc::FieldTooSmall, ring.token() + " has fewer than " + std::to_string(min_size) +
                                " elements and is not liftable");
}

Matrix lift_matrix(const Matrix& m, const RingSpec& target) {
  if (m.ring() == target) return m;
  // residues embed as constant polynomials
  Matrix out(target, m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out.coeffs_mut(i, j)[0] = m.word(i, j);
  }
  return out;
}

// Int matrix reduced to canonical residues mod q.
Matrix reduce_mod(const Matrix& m, const RingSpec& fq) {
  uint64_t q = fq.prime();
  Matrix out(fq, m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      i128 v = m.intval(i, j) % static_cast<i128>(q);
      if (v < 0) v += q;
      out.set_word(i, j, static_cast<uint64_t>(v));
    }
  }
  return out;
}

std::optional<std::pair<size_t, size_t>> first_difference(const Matrix& a, const Matrix& b) {
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) {
      if (!(a.get(i, j) == b.get(i, j))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

uint64_t entry_index_of(const Matrix& m, const FieldOps& f, size_t i, size_t j) {
  if (m.ring().kind() == RingKind::PrimeField) return m.word(i, j);
  return f.coeffs_to_index(m.coeffs(i, j));
}

void set_entry_index(Matrix& m, const FieldOps& f, size_t i, size_t j, uint64_t index) {
  if (m.ring().kind() == RingKind::PrimeField) {
    m.set_word(i, j, index);
  } else {
    f.index_to_coeffs(index, m.coeffs_mut(i, j));
  }
}

// ---- typed integer pipelines for the two sparse verifiers ----
//
// All coefficient vectors (parity rows, Cauchy columns) are residues below a
// known prime, so the products fit a machine word whenever the scanned bound
// allows it; otherwise they run in 128 bits. Both lanes are exact: the bound
// is established before the lane is entered.

template <typename T>
std::vector<T> int_buffer(const Matrix& m) {
  std::vector<T> out(m.rows() * m.cols());
  const i128* src = m.int_data();
  for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<T>(src[i]);
  return out;
}

template <typename T>
std::vector<T> int_buffer_transposed(const Matrix& m) {
  size_t r = m.rows(), c = m.cols();
  std::vector<T> out(r * c);
  const i128* src = m.int_data();
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) out[j * r + i] = static_cast<T>(src[i * c + j]);
  return out;
}

// first non-zero of ((H A) B) - (H C), row-major; H is kp x n residues
template <typename T>
std::optional<std::pair<size_t, size_t>> parity_mismatch(const std::vector<uint64_t>& H, size_t kp,
                                                         size_t n, const std::vector<T>& A,
                                                         const std::vector<T>& B,
                                                         const std::vector<T>& C) {
  std::vector<T> HA(kp * n, T(0));
  for (size_t r = 0; r < kp; ++r) {
    const uint64_t* hrow = H.data() + r * n;
    T* out = HA.data() + r * n;
    for (size_t k = 0; k < n; ++k) {
      T h = static_cast<T>(hrow[k]);
      if (h == 0) continue;
      const T* arow = A.data() + k * n;
      for (size_t j = 0; j < n; ++j) out[j] += h * arow[j];
    }
  }
  std::vector<T> D(kp * n, T(0));
  for (size_t r = 0; r < kp; ++r) {
    T* drow = D.data() + r * n;
    const T* harow = HA.data() + r * n;
    for (size_t k = 0; k < n; ++k) {
      T w = harow[k];
      if (w == 0) continue;
      const T* brow = B.data() + k * n;
      for (size_t j = 0; j < n; ++j) drow[j] += w * brow[j];
    }
    const uint64_t* hrow = H.data() + r * n;
    for (size_t k = 0; k < n; ++k) {
      T h = static_cast<T>(hrow[k]);
      if (h == 0) continue;
      const T* crow = C.data() + k * n;
      for (size_t j = 0; j < n; ++j) drow[j] -= h * crow[j];
    }
  }
  for (size_t r = 0; r < kp; ++r) {
    for (size_t j = 0; j < n; ++j) {
      if (D[r * n + j] != T(0)) return std::make_pair(r, j);
    }
  }
  return std::nullopt;
}

template <typename T>
std::vector<T> matvec_raw(const std::vector<T>& M, const std::vector<T>& x, size_t n) {
  std::vector<T> out(n, T(0));
  for (size_t i = 0; i < n; ++i) {
    const T* row = M.data() + i * n;
    T acc = 0;
    for (size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

// x^T M, streaming M by rows
template <typename T>
std::vector<T> vecmat_raw(const std::vector<T>& x, const std::vector<T>& M, size_t n) {
  std::vector<T> out(n, T(0));
  for (size_t i = 0; i < n; ++i) {
    T xi = x[i];
    if (xi == 0) continue;
    const T* row = M.data() + i * n;
    for (size_t j = 0; j < n; ++j) out[j] += xi * row[j];
  }
  return out;
}

template <typename T>
std::optional<std::pair<Side, size_t>> cauchy_test_mismatch(const std::vector<uint64_t>& s,
                                                            const Matrix& A, const Matrix& B,
                                                            const Matrix& C, size_t n) {
  std::vector<T> sv(n);
  for (size_t i = 0; i < n; ++i) sv[i] = static_cast<T>(s[i]);
  std::vector<T> a = int_buffer<T>(A), b = int_buffer<T>(B), c = int_buffer<T>(C);
  std::vector<T> u = matvec_raw(b, sv, n);
  std::vector<T> v = matvec_raw(a, u, n);
  std::vector<T> w = matvec_raw(c, sv, n);
  for (size_t i = 0; i < n; ++i) {
    if (v[i] != w[i]) return std::make_pair(Side::Direct, i);
  }
  std::vector<T> ut = vecmat_raw(sv, a, n);  // s^T A
  std::vector<T> vt = vecmat_raw(ut, b, n);  // (s^T A) B
  std::vector<T> wt = vecmat_raw(sv, c, n);  // s^T C
  for (size_t i = 0; i < n; ++i) {
    if (vt[i] != wt[i]) return std::make_pair(Side::Transpose, i);
  }
  return std::nullopt;
}

// ---- field-side evaluation helpers ----

Matrix index_column(const RingSpec& field, const std::vector<uint64_t>& vals) {
  FieldOps f(field);
  Matrix out(field, vals.size(), 1);
  for (size_t i = 0; i < vals.size(); ++i) set_entry_index(out, f, i, 0, vals[i]);
  return out;
}

uint64_t dot_indexed(const Matrix& x, const Matrix& y) {
  FieldOps f(x.ring());
  uint64_t acc = 0;
  for (size_t i = 0; i < x.rows(); ++i) {
    acc = f.add(acc, f.mul(entry_index_of(x, f, i, 0), entry_index_of(y, f, i, 0)));
  }
  return acc;
}

// generator of the multiplicative group of any field at desk scale
uint64_t field_generator(const RingSpec& field) {
  if (field.kind() == RingKind::PrimeField) return element_of_order_at_least(field, 1);
  FieldOps f(field);
  uint64_t order = f.size() - 1;
  std::vector<uint64_t> factors = prime_factors(order);
  for (uint64_t cand = 2; cand < f.size(); ++cand) {
    bool ok = true;
    for (uint64_t q : factors) {
      if (f.pow(cand, order / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  fail(Errc::OrderUnavailable, "no generator found in " + field.token());
}

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 a = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(a >> 64));
  mpz_class lo(static_cast<unsigned long>(a & ~0ULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational Rational::parse(const std::string& s) {
  auto bad = [&]() -> uint64_t { fail(Errc::ConfigError, "bad probability '" + s + "'"); };
  auto parse_u = [&](const std::string& part) -> uint64_t {
    if (part.empty() || part.size() > 7) bad();
    uint64_t v = 0;
    for (char c : part) {
      if (c < '0' || c > '9') bad();
      v = v * 10 + static_cast<uint64_t>(c - '0');
    }
    return v;
  };
  uint64_t num = 0, den = 1;
  size_t slash = s.find('/');
  size_t dot = s.find('.');
  if (slash != std::string::npos) {
    num = parse_u(s.substr(0, slash));
    den = parse_u(s.substr(slash + 1));
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (fp.empty() || fp.size() > 6) bad();
    uint64_t scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    num = parse_u(ip.empty() ? "0" : ip) * scale + parse_u(fp);
    den = scale;
  } else {
    num = parse_u(s);
  }
  if (den == 0) bad();
  uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den > 1000000) bad();
  return Rational{num, den};
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

uint64_t rand_sparse_k(uint64_t t, Rational eps) {
  if (t == 0) return 0;
  // smallest k with (k * num)^2 >= t * den^2, i.e. k >= sqrt(t) / eps
  u128 target = u128(t) * eps.den * eps.den;
  uint64_t k = std::max<uint64_t>(1, static_cast<uint64_t>(isqrt(target)) / eps.num);
  while (u128(k) * eps.num * u128(k) * eps.num < target) ++k;
  return k;
}

uint64_t rand_sparse_kprime(uint64_t t, Rational eps) {
  return std::bit_ceil(std::max<uint64_t>(rand_sparse_k(t, eps), 1));
}

unsigned rand_sparse_bits(uint64_t t, Rational eps) {
  return static_cast<unsigned>(std::countr_zero(rand_sparse_kprime(t, eps)));
}

// ---------------------------------------------------------------- exact

Verdict verify_exact(const Instance& inst) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  Verdict v;
  Matrix p = matmul(inst.A, inst.B);
  v.stats.elem_ops = uint64_t(n) * n * n;
  if (auto diff = first_difference(p, inst.C)) {
    v.answer = Answer::NotEqual;
    Witness w;
    w.kind = Witness::Kind::Entry;
    w.row = diff->first;
    w.col = diff->second;
    v.witness = w;
  }
  v.stats.wall_nanos = elapsed_nanos(start);
  return v;
}

// ---------------------------------------------------------------- freivalds

Verdict verify_freivalds(const Instance& inst, uint32_t rounds, BitSource& src) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  if (rounds < 1) fail(Errc::UsageError, "rounds must be >= 1");
  uint64_t bits_before = src.bits_consumed();

  Verdict out;
  for (uint32_t r = 0; r < rounds && out.answer == Answer::Equal; ++r) {
    Matrix x(inst.ring, n, 1);
    for (size_t i = 0; i < n; ++i) {
      uint64_t bit = src.bits(1);
      if (bit == 0) continue;
      switch (inst.ring.kind()) {
        case RingKind::PrimeField: x.set_word(i, 0, 1); break;
        case RingKind::ExtField: x.coeffs_mut(i, 0)[0] = 1; break;
        case RingKind::Int: x.set_intval(i, 0, 1); break;
      }
    }
    Matrix u = matvec(inst.B, x);
    Matrix v = matvec(inst.A, u);
    Matrix w = matvec(inst.C, x);
    out.stats.elem_ops += 3 * uint64_t(n) * n;
    if (auto diff = first_difference(v, w)) {
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::TestVector;
      wit.side = Side::Direct;
      wit.vec = x;
      wit.index = diff->first;
      out.witness = wit;
    }
  }
  out.stats.random_bits = src.bits_consumed() - bits_before;
  out.stats.wall_nanos = elapsed_nanos(start);
  return out;
}

// ---------------------------------------------------------------- kimbrel-sinha

Verdict verify_kimbrel_sinha(const Instance& inst, BitSource& src) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  if (inst.ring.kind() != RingKind::Int) fail(Errc::RingMismatch, "kimbrel-sinha runs on integer instances");
  uint64_t bits_before = src.bits_consumed();

  uint64_t q = find_prime_in(2 * n, 4 * n);
  RingSpec fq = RingSpec::prime_field(q);
  Matrix aq = reduce_mod(inst.A, fq);
  Matrix bq = reduce_mod(inst.B, fq);
  Matrix cq = reduce_mod(inst.C, fq);

  uint64_t alpha = src.uniform_below(2 * n) + 1;
  Matrix v(fq, n, 1);
  uint64_t power = 1 % q;
  for (size_t i = 0; i < n; ++i) {
    v.set_word(i, 0, power);
    power = mul_mod(power, alpha % q, q);
  }

  Matrix u = matvec(bq, v);
  Matrix w = matvec(aq, u);
  Matrix z = matvec(cq, v);

  Verdict out;
  out.stats.elem_ops = 3 * uint64_t(n) * n + n;
  if (auto diff = first_difference(w, z)) {
    out.answer = Answer::NotEqual;
    Witness wit;
    wit.kind = Witness::Kind::TestVector;
    wit.side = Side::Direct;
    wit.vec = Matrix(inst.ring, n, 1);
    for (size_t i = 0; i < n; ++i) wit.vec.set_intval(i, 0, static_cast<i128>(v.word(i, 0)));
    wit.index = diff->first;
    out.witness = wit;
  }
  out.stats.random_bits = src.bits_consumed() - bits_before;
  out.stats.wall_nanos = elapsed_nanos(start);
  return out;
}

// ---------------------------------------------------------------- korec-wiedermann

Verdict verify_korec_wiedermann(const Instance& inst, size_t n_cap) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  if (inst.ring.kind() != RingKind::Int) fail(Errc::RingMismatch, "korec-wiedermann runs on integer instances");
  if (n > n_cap) {
    fail(Errc::CapExceeded, "n = " + std::to_string(n) + " is above the big-integer cap " + std::to_string(n_cap));
  }

  u128 mu128 = std::max({max_abs_entry(inst.A), max_abs_entry(inst.B), max_abs_entry(inst.C)});
  mpz_class mu = mpz_from_i128(static_cast<i128>(mu128));
  // strictly past the root bound 1 + max|coeff|: coefficients of the row
  // polynomials of AB - C are at most n*mu^2 + mu in magnitude
  mpz_class alpha = mpz_class(static_cast<unsigned long>(n)) * mu * mu + mu + 2;

  std::vector<mpz_class> v(n);
  v[0] = 1;
  for (size_t i = 1; i < n; ++i) v[i] = v[i - 1] * alpha;

  auto big_matvec = [&](const Matrix& m, const std::vector<mpz_class>& x) {
    std::vector<mpz_class> out(n);
    for (size_t i = 0; i < n; ++i) {
      mpz_class acc = 0;
      for (size_t j = 0; j < n; ++j) {
        i128 e = m.intval(i, j);
        if (e == 0) continue;
        acc += mpz_from_i128(e) * x[j];
      }
      out[i] = acc;
    }
    return out;
  };

  std::vector<mpz_class> u = big_matvec(inst.B, v);
  std::vector<mpz_class> w = big_matvec(inst.A, u);
  std::vector<mpz_class> z = big_matvec(inst.C, v);

  Verdict out;
  out.stats.elem_ops = 3 * uint64_t(n) * n + n - 1;
  for (size_t i = 0; i < n; ++i) {
    if (w[i] != z[i]) {
      // row i of AB differs from row i of C somewhere; locate one entry
      size_t col = n;
      for (size_t j = 0; j < n && col == n; ++j) {
        mpz_class acc = 0;
        for (size_t k = 0; k < n; ++k) acc += mpz_from_i128(inst.A.intval(i, k)) * mpz_from_i128(inst.B.intval(k, j));
        if (acc != mpz_from_i128(inst.C.intval(i, j))) col = j;
      }
      assert(col < n);
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::Entry;
      wit.row = i;
      wit.col = col;
      out.witness = wit;
      break;
    }
  }
  out.stats.wall_nanos = elapsed_nanos(start);
  return out;
}

// ---------------------------------------------------------------- geometric

Verdict verify_geometric(const Instance& inst, uint64_t t) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  if (t < 1) fail(Errc::UsageError, "geometric verifier needs t >= 1");

  RingSpec field;
  Matrix af, bf, cf;
  u128 nsq = u128(n) * n;
  if (inst.ring.kind() == RingKind::Int) {
    u128 m = static_cast<u128>(inst.ring.magnitude());
    u128 ma = max_abs_entry(inst.A), mb = max_abs_entry(inst.B), mc = max_abs_entry(inst.C);
    u128 lo = std::max({nsq, mul_or_cap(2, add_or_cap(mul_or_cap(mul_or_cap(n, m), m), m)),
                        mul_or_cap(2, add_or_cap(mul_or_cap(mul_or_cap(n, ma), mb), mc))});
    lo = add_or_cap(lo, 1);
    if (lo >= (u128(1) << 61)) fail(Errc::MagnitudeOverflow, "working prime would exceed 2^61");
    uint64_t q = find_prime_in(static_cast<uint64_t>(lo), 2 * static_cast<uint64_t>(lo));
    field = RingSpec::prime_field(q);
    af = reduce_mod(inst.A, field);
    bf = reduce_mod(inst.B, field);
    cf = reduce_mod(inst.C, field);
  } else {
    if (u128(inst.ring.field_size()) <= nsq) {
      fail(Errc::FieldTooSmall, inst.ring.token() + " needs more than n^2 elements for the geometric test");
    }
    field = inst.ring;
    af = inst.A;
    bf = inst.B;
    cf = inst.C;
  }

  FieldOps f(field);
  uint64_t alpha = field_generator(field);
  uint64_t t_eff = static_cast<uint64_t>(std::min<u128>(t, nsq));

  Verdict out;
  uint64_t beta = 1;
  for (uint64_t i = 0; i < t_eff; ++i) {
    if (i > 0) beta = f.mul(beta, alpha);
    std::vector<uint64_t> xs(n), ys(n);
    uint64_t betan = f.pow(beta, n);
    uint64_t px = 1, py = 1;
    for (size_t j = 0; j < n; ++j) {
      xs[j] = px;
      ys[j] = py;
      px = f.mul(px, beta);
      py = f.mul(py, betan);
    }
    Matrix x = index_column(field, xs);
    Matrix y = index_column(field, ys);
    Matrix u = matvec(bf, y);
    Matrix v = matvec(af, u);
    Matrix w = matvec(cf, y);
    out.stats.elem_ops += 3 * uint64_t(n) * n + 4 * uint64_t(n);
    uint64_t s1 = dot_indexed(x, v);
    uint64_t s2 = dot_indexed(x, w);
    if (s1 != s2) {
      auto diff = first_difference(v, w);
      assert(diff);
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::TestVector;
      wit.side = Side::Direct;
      wit.index = diff->first;
      if (inst.ring.kind() == RingKind::Int) {
        wit.vec = Matrix(inst.ring, n, 1);
        for (size_t j = 0; j < n; ++j) wit.vec.set_intval(j, 0, static_cast<i128>(y.word(j, 0)));
      } else {
        wit.vec = y;
      }
      out.witness = wit;
      break;
    }
  }
  out.stats.wall_nanos = elapsed_nanos(start);
  return out;
}

// ---------------------------------------------------------------- det-sparse

Verdict verify_det_sparse(const Instance& inst, uint64_t t) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  uint64_t kprime = t == 0 ? 1 : std::min<uint64_t>(ceil_isqrt(t), n);

  Verdict out;
  out.stats.elem_ops = 6 * kprime * uint64_t(n) * n + (kprime - 1) * uint64_t(n);

  if (inst.ring.kind() == RingKind::Int) {
    require_int_admissible(inst, n);
    uint64_t p = find_prime_in(n, 2 * n);

    // parity rows as plain residues; arithmetic over the integers from here on
    std::vector<uint64_t> H(kprime * n);
    for (size_t j = 0; j < n; ++j) H[j] = 1;
    for (size_t r = 1; r < kprime; ++r) {
      for (size_t j = 0; j < n; ++j) H[r * n + j] = mul_mod(H[(r - 1) * n + j], j % p, p);
    }

    u128 ma = max_abs_entry(inst.A), mb = max_abs_entry(inst.B), mc = max_abs_entry(inst.C);
    u128 bound = std::max(sparse_bound(n, p - 1, ma, mb, mc), sparse_bound(n, p - 1, mb, ma, mc));
    if (bound >= kMagnitudeCap) fail(Errc::MagnitudeOverflow, "instance magnitudes fail the 127-bit bound");

    std::optional<std::pair<size_t, size_t>> hit;
    Side side = Side::Direct;
    if (bound < (u128(1) << 62)) {
      auto a = int_buffer<int64_t>(inst.A), b = int_buffer<int64_t>(inst.B), c = int_buffer<int64_t>(inst.C);
      hit = parity_mismatch(H, kprime, n, a, b, c);
      if (!hit) {
        auto at = int_buffer_transposed<int64_t>(inst.A), bt = int_buffer_transposed<int64_t>(inst.B),
             ct = int_buffer_transposed<int64_t>(inst.C);
        hit = parity_mismatch(H, kprime, n, bt, at, ct);
        side = Side::Transpose;
      }
    } else {
      auto a = int_buffer<i128>(inst.A), b = int_buffer<i128>(inst.B), c = int_buffer<i128>(inst.C);
      hit = parity_mismatch(H, kprime, n, a, b, c);
      if (!hit) {
        auto at = int_buffer_transposed<i128>(inst.A), bt = int_buffer_transposed<i128>(inst.B),
             ct = int_buffer_transposed<i128>(inst.C);
        hit = parity_mismatch(H, kprime, n, bt, at, ct);
        side = Side::Transpose;
      }
    }
    if (hit) {
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::ParityRow;
      wit.side = side;
      wit.row = hit->first;
      wit.col = hit->second;
      out.witness = wit;
    }
  } else {
    RingSpec field = lift_field(inst.ring, n);
    Matrix af = lift_matrix(inst.A, field);
    Matrix bf = lift_matrix(inst.B, field);
    Matrix cf = lift_matrix(inst.C, field);
    Matrix H = vandermonde_parity_check(field, kprime, n).H;

    Matrix d = mat_sub(matmul(matmul(H, af), bf), matmul(H, cf));
    std::optional<std::pair<size_t, size_t>> hit;
    Side side = Side::Direct;
    for (size_t r = 0; r < d.rows() && !hit; ++r) {
      for (size_t c = 0; c < d.cols(); ++c) {
        if (!d.entry_is_zero(r, c)) {
          hit = std::make_pair(r, c);
          break;
        }
      }
    }
    if (!hit) {
      Matrix e = mat_sub(matmul(matmul(H, transpose(bf)), transpose(af)), matmul(H, transpose(cf)));
      side = Side::Transpose;
      for (size_t r = 0; r < e.rows() && !hit; ++r) {
        for (size_t c = 0; c < e.cols(); ++c) {
          if (!e.entry_is_zero(r, c)) {
            hit = std::make_pair(r, c);
            break;
          }
        }
      }
    }
    if (hit) {
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::ParityRow;
      wit.side = side;
      wit.row = hit->first;
      wit.col = hit->second;
      out.witness = wit;
    }
  }
  out.stats.wall_nanos = elapsed_nanos(start);
  return out;
}

// ---------------------------------------------------------------- rand-sparse

Verdict verify_rand_sparse(const Instance& inst, uint64_t t, Rational eps, BitSource& src) {
  auto start = Clock::now();
  size_t n = instance_n(inst);
  if (eps.num == 0 || 2 * eps.num > eps.den) fail(Errc::UsageError, "eps must satisfy 0 < eps <= 1/2");
  uint64_t bits_before = src.bits_consumed();

  uint64_t kprime = rand_sparse_kprime(t, eps);
  unsigned bits = static_cast<unsigned>(std::countr_zero(kprime));
  uint64_t column = src.bits(bits) + 1;  // uniform over {1..k'}, exactly log2(k') bits

  Verdict out;
  out.stats.elem_ops = 6 * uint64_t(n) * n + n;

  if (inst.ring.kind() == RingKind::Int) {
    require_int_admissible(inst, n);
    uint64_t p = find_prime_in(kprime + n, 2 * (kprime + n));
    std::vector<uint64_t> s = cauchy_column(RingSpec::prime_field(p), n, kprime, column);

    u128 ma = max_abs_entry(inst.A), mb = max_abs_entry(inst.B), mc = max_abs_entry(inst.C);
    u128 bound = std::max(sparse_bound(n, p - 1, ma, mb, mc), sparse_bound(n, p - 1, mb, ma, mc));
    if (bound >= kMagnitudeCap) fail(Errc::MagnitudeOverflow, "instance magnitudes fail the 127-bit bound");

    std::optional<std::pair<Side, size_t>> hit;
    if (bound < (u128(1) << 62)) {
      hit = cauchy_test_mismatch<int64_t>(s, inst.A, inst.B, inst.C, n);
    } else {
      hit = cauchy_test_mismatch<i128>(s, inst.A, inst.B, inst.C, n);
    }
    if (hit) {
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::TestVector;
      wit.side = hit->first;
      wit.index = hit->second;
      wit.vec = Matrix(inst.ring, n, 1);
      for (size_t i = 0; i < n; ++i) wit.vec.set_intval(i, 0, static_cast<i128>(s[i]));
      out.witness = wit;
    }
  } else {
    RingSpec field = lift_field(inst.ring, kprime + n);
    Matrix af = lift_matrix(inst.A, field);
    Matrix bf = lift_matrix(inst.B, field);
    Matrix cf = lift_matrix(inst.C, field);
    Matrix s = index_column(field, cauchy_column(field, n, kprime, column));

    Matrix u = matvec(bf, s);
    Matrix v = matvec(af, u);
    Matrix w = matvec(cf, s);
    std::optional<std::pair<Side, size_t>> hit;
    if (auto diff = first_difference(v, w)) hit = std::make_pair(Side::Direct, diff->first);
    if (!hit) {
      Matrix st = transpose(s);
      Matrix ut = vecmat(st, af);
      Matrix vt = vecmat(ut, bf);
      Matrix wt = vecmat(st, cf);
      if (auto diff = first_difference(vt, wt)) hit = std::make_pair(Side::Transpose, diff->second);
    }
    if (hit) {
      out.answer = Answer::NotEqual;
      Witness wit;
      wit.kind = Witness::Kind::TestVector;
      wit.side = hit->first;
      wit.index = hit->second;
      wit.vec = s;
      out.witness = wit;
    }
  }
  out.stats.random_bits = src.bits_consumed() - bits_before;
  assert(out.stats.random_bits == bits);
  out.stats.wall_nanos = elapsed_nanos(start);
  return out;
}

// ---------------------------------------------------------------- mps

bool mps_decide(const Matrix& A, const Matrix& B, uint64_t r) {
  Matrix p = matmul(A, B);
  return count_nnz(p).nnz <= r;
}

// ---------------------------------------------------------------- dispatch

const std::vector<std::string>& verifier_names() {
  static const std::vector<std::string> names = {"exact",     "freivalds",        "kimbrel-sinha",
                                                 "korec-wiedermann", "geometric", "det-sparse",
                                                 "rand-sparse",      "mps"};
  return names;
}

bool verifier_known(const std::string& alg) {
  const auto& names = verifier_names();
  return std::find(names.begin(), names.end(), alg) != names.end();
}

bool verifier_uses_eps(const std::string& alg) { return alg == "rand-sparse"; }

bool verifier_is_randomized(const std::string& alg) {
  return alg == "freivalds" || alg == "kimbrel-sinha" || alg == "rand-sparse";
}

Verdict run_verifier(const std::string& alg, const Instance& inst, const VerifierOptions& opt) {
  auto need_t = [&]() -> uint64_t {
    if (opt.t) return *opt.t;
    if (inst.promise_t) return *inst.promise_t;
    fail(Errc::UsageError, alg + " needs a sparsity parameter t (flag or instance promise)");
  };
  if (alg == "exact") return verify_exact(inst);
  if (alg == "freivalds") {
    BitSource src(opt.seed);
    return verify_freivalds(inst, opt.rounds, src);
  }
  if (alg == "kimbrel-sinha") {
    BitSource src(opt.seed);
    return verify_kimbrel_sinha(inst, src);
  }
  if (alg == "korec-wiedermann") return verify_korec_wiedermann(inst, opt.kw_cap);
  if (alg == "geometric") return verify_geometric(inst, need_t());
  if (alg == "det-sparse") return verify_det_sparse(inst, need_t());
  if (alg == "rand-sparse") {
    BitSource src(opt.seed);
    return verify_rand_sparse(inst, need_t(), opt.eps, src);
  }
  if (alg == "mps") {
    Verdict v;
    v.answer = mps_decide(inst.A, inst.B, opt.mps_r) ? Answer::Equal : Answer::NotEqual;
    return v;
  }
  fail(Errc::UsageError, "unknown verifier '" + alg + "'");
}

// ---------------------------------------------------------------- witness validation

namespace {

// (AB - C)[i][j] != 0, one inner product
bool entry_differs(const Instance& inst, size_t i, size_t j) {
  size_t n = inst.A.rows();
  switch (inst.ring.kind()) {
    case RingKind::Int: {
      i128 acc = 0;
      for (size_t k = 0; k < n; ++k) acc = checked_add(acc, checked_mul(inst.A.intval(i, k), inst.B.intval(k, j)));
      return acc != inst.C.intval(i, j);
    }
    case RingKind::PrimeField: {
      uint64_t p = inst.ring.prime();
      uint64_t acc = 0;
      for (size_t k = 0; k < n; ++k) acc = add_mod(acc, mul_mod(inst.A.word(i, k), inst.B.word(k, j), p), p);
      return acc != inst.C.word(i, j);
    }
    case RingKind::ExtField: {
      FieldOps f(inst.ring);
      uint64_t acc = 0;
      for (size_t k = 0; k < n; ++k) {
        acc = f.add(acc, f.mul(entry_index_of(inst.A, f, i, k), entry_index_of(inst.B, f, k, j)));
      }
      return acc != entry_index_of(inst.C, f, i, j);
    }
  }
  return false;
}

bool test_vector_differs(const Instance& inst, const Witness& w) {
  // The vector may live in a lifted extension of a small base field.
  Matrix a = inst.A, b = inst.B, c = inst.C;
  if (w.vec.ring() != inst.ring) {
    if (inst.ring.kind() == RingKind::PrimeField && w.vec.ring().kind() == RingKind::ExtField) {
      a = lift_matrix(a, w.vec.ring());
      b = lift_matrix(b, w.vec.ring());
      c = lift_matrix(c, w.vec.ring());
    } else {
      return false;
    }
  }
  if (w.side == Side::Direct) {
    Matrix lhs = matvec(a, matvec(b, w.vec));
    Matrix rhs = matvec(c, w.vec);
    return !(lhs.get(w.index, 0) == rhs.get(w.index, 0));
  }
  Matrix vt = transpose(w.vec);
  Matrix lhs = vecmat(vecmat(vt, a), b);
  Matrix rhs = vecmat(vt, c);
  return !(lhs.get(0, w.index) == rhs.get(0, w.index));
}

bool parity_row_differs(const Instance& inst, const Witness& w, uint64_t t) {
  size_t n = inst.A.rows();
  uint64_t kprime = t == 0 ? 1 : std::min<uint64_t>(ceil_isqrt(t), n);
  if (w.row >= kprime || w.col >= n) return false;

  if (inst.ring.kind() == RingKind::Int) {
    uint64_t p = find_prime_in(n, 2 * n);
    i128 acc = 0;
    for (size_t j = 0; j < n; ++j) {
      uint64_t h = pow_mod(j % p, w.row, p);
      if (h == 0) continue;
      // (AB - C)[j][col] on the direct side, (AB - C)[col][j] transposed
      size_t ri = w.side == Side::Direct ? j : w.col;
      size_t ci = w.side == Side::Direct ? w.col : j;
      i128 entry = 0;
      for (size_t k = 0; k < n; ++k) entry = checked_add(entry, checked_mul(inst.A.intval(ri, k), inst.B.intval(k, ci)));
      entry = checked_sub(entry, inst.C.intval(ri, ci));
      acc = checked_add(acc, checked_mul(static_cast<i128>(h), entry));
    }
    return acc != 0;
  }

  RingSpec field = lift_field(inst.ring, n);
  FieldOps f(field);
  Matrix a = lift_matrix(inst.A, field), b = lift_matrix(inst.B, field), c = lift_matrix(inst.C, field);
  uint64_t acc = 0;
  for (size_t j = 0; j < n; ++j) {
    uint64_t h = f.pow(j, w.row);
    if (h == 0) continue;
    size_t ri = w.side == Side::Direct ? j : w.col;
    size_t ci = w.side == Side::Direct ? w.col : j;
    uint64_t entry = 0;
    for (size_t k = 0; k < n; ++k) {
      entry = f.add(entry, f.mul(entry_index_of(a, f, ri, k), entry_index_of(b, f, k, ci)));
    }
    entry = f.sub(entry, entry_index_of(c, f, ri, ci));
    acc = f.add(acc, f.mul(h, entry));
  }
  return acc != 0;
}

}  // namespace

bool witness_checks_out(const Instance& inst, const Verdict& v, uint64_t t) {
  if (v.answer == Answer::Equal) return true;
  if (!v.witness) return false;
  const Witness& w = *v.witness;
  switch (w.kind) {
    case Witness::Kind::Entry:
      return entry_differs(inst, w.row, w.col);
    case Witness::Kind::TestVector:
      return test_vector_differs(inst, w);
    case Witness::Kind::ParityRow:
      return parity_row_differs(inst, w, t);
  }
  return false;
}

}  // namespace mmv

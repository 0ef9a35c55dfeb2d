#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmv/int128.hpp"

namespace mmv {

// Arithmetic domains: prime fields Z_p (p < 2^61), extension fields GF(p^e)
// with an explicit monic irreducible modulus, and bounded integers with a
// 127-bit overflow discipline. All values are kept in canonical form: residues
// in [0, p), coefficient vectors of length e with coefficients in [0, p),
// signed integers. Ring values are immutable; every operation here is a pure
// function and safe to call concurrently.

enum class RingKind { PrimeField, ExtField, Int };

class RingSpec {
 public:
  RingSpec() = default;

  /// Z_p; validates primality by trial division.
  static RingSpec prime_field(uint64_t p);

  /// GF(p^e) with the canonical modulus polynomial (first irreducible monic
  /// polynomial of degree e in the coefficient enumeration order).
  static RingSpec ext_field(uint64_t p, uint32_t degree);

  /// GF(p^e) with an explicit monic modulus; validates irreducibility.
  static RingSpec ext_field(uint64_t p, uint32_t degree, std::vector<uint64_t> ipoly);

  /// Bounded integers with magnitude bound M >= 1.
  static RingSpec integers(i128 magnitude_bound);

  /// Parse/format the text tokens `zmod:<p>`, `gf:<p>:<e>`, `int:<M>`.
  static RingSpec parse_token(const std::string& token);
  std::string token() const;

  RingKind kind() const { return kind_; }
  uint64_t prime() const { return p_; }
  uint32_t degree() const { return degree_; }

  /// Monic modulus, length degree()+1, most significant coefficient last (== 1).
  const std::vector<uint64_t>& ipoly() const { return ipoly_; }

  i128 magnitude() const { return magnitude_; }

  bool is_field() const { return kind_ != RingKind::Int; }

  /// Number of field elements (p or p^e). Only valid for field kinds.
  uint64_t field_size() const;

  bool operator==(const RingSpec& other) const;
  bool operator!=(const RingSpec& other) const { return !(*this == other); }

 private:
  RingKind kind_ = RingKind::Int;
  uint64_t p_ = 0;
  uint32_t degree_ = 1;
  std::vector<uint64_t> ipoly_;
  i128 magnitude_ = 1;
};

/// One ring value in canonical form; which member is active follows the kind.
struct Element {
  RingKind kind = RingKind::Int;
  uint64_t residue = 0;          // PrimeField
  std::vector<uint64_t> coeffs;  // ExtField, length = degree
  i128 value = 0;                // Int

  static Element of_residue(uint64_t r);
  static Element of_coeffs(std::vector<uint64_t> c);
  static Element of_int(i128 v);

  bool is_zero() const;
  bool operator==(const Element& other) const;
};

// ---- prime-field scalar arithmetic (p < 2^61, canonical residues) ----

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t p);

/// Multiplicative inverse by extended Euclid; errors with NotInvertible when a == 0 (mod p).
uint64_t mod_inverse(uint64_t a, uint64_t p);

// ---- primes ----

bool is_prime_u64(uint64_t n);

/// Smallest prime p with lo <= p <= hi; errors with NoPrimeInRange if none.
uint64_t find_prime_in(uint64_t lo, uint64_t hi);

/// Prime factors of n (ascending, deduplicated), by trial division.
std::vector<uint64_t> prime_factors(uint64_t n);

// ---- extension fields ----

/// Deterministic irreducibility test for a monic polynomial over Z_p.
bool is_irreducible(uint64_t p, std::span<const uint64_t> poly);

/// Smallest extension of Z_p with at least `min_size` elements. Picks the
/// minimal degree e with p^e >= min_size and the canonical modulus; errors
/// with TooLarge if p^e would exceed the desk-scale cap (2^40).
RingSpec build_extension(uint64_t p, uint64_t min_size);

/// A generator g of Z_p^* (order p-1 >= m), smallest candidate first.
/// Errors with OrderUnavailable if p-1 < m.
uint64_t element_of_order_at_least(const RingSpec& spec, uint64_t m);

// ---- uniform element arithmetic on canonical element indices ----
//
// Field elements are enumerated 0, 1, 2, ...: residues for Z_p; for GF(p^e)
// index k maps to the coefficient vector of base-p digits of k (digit i =
// coefficient of x^i). Index arithmetic keeps the codes/verifier layers
// independent of the element representation.

class FieldOps {
 public:
  explicit FieldOps(const RingSpec& spec);

  uint64_t size() const { return size_; }
  const RingSpec& spec() const { return spec_; }

  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t inv(uint64_t a) const;
  uint64_t pow(uint64_t base, uint64_t exp) const;

  void index_to_coeffs(uint64_t index, std::span<uint64_t> out) const;
  uint64_t coeffs_to_index(std::span<const uint64_t> coeffs) const;

 private:
  RingSpec spec_;
  uint64_t size_ = 0;
};

// ---- extension-field coefficient-vector arithmetic (length e slices) ----

void ext_add(const RingSpec& f, std::span<const uint64_t> a, std::span<const uint64_t> b, std::span<uint64_t> out);
void ext_sub(const RingSpec& f, std::span<const uint64_t> a, std::span<const uint64_t> b, std::span<uint64_t> out);
void ext_neg(const RingSpec& f, std::span<const uint64_t> a, std::span<uint64_t> out);
void ext_mul(const RingSpec& f, std::span<const uint64_t> a, std::span<const uint64_t> b, std::span<uint64_t> out);
void ext_inv(const RingSpec& f, std::span<const uint64_t> a, std::span<uint64_t> out);

}  // namespace mmv

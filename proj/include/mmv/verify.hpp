#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmv/bitsource.hpp"
#include "mmv/matrix.hpp"

namespace mmv {

/// A verification instance: decide whether AB = C over the ring, optionally
/// under the promise that AB - C has at most promise_t non-zero entries.
struct Instance {
  RingSpec ring;
  Matrix A, B, C;
  std::optional<uint64_t> promise_t;
  bool c_omitted = false;  // file came in AB = 0 form; C is the zero matrix
};

struct RunStats {
  uint64_t random_bits = 0;  // exactly the bits drawn from the BitSource
  uint64_t elem_ops = 0;     // ring multiplications in the dominant products
  uint64_t wall_nanos = 0;
};

enum class Answer { Equal, NotEqual };
enum class Side { Direct, Transpose };

struct Witness {
  enum class Kind { Entry, TestVector, ParityRow };
  Kind kind = Kind::Entry;
  Side side = Side::Direct;
  size_t row = 0;  // Entry / ParityRow
  size_t col = 0;
  Matrix vec;      // TestVector payload (n x 1); may live in a lifted field
  size_t index = 0;
};

struct Verdict {
  Answer answer = Answer::Equal;
  std::optional<Witness> witness;
  RunStats stats;
};

/// Exact rational in lowest terms; used for failure-probability parameters so
/// that round counts and bit budgets never depend on floating point.
struct Rational {
  uint64_t num = 1;
  uint64_t den = 2;

  /// Accepts "a/b", decimals like "0.25", and plain integers.
  static Rational parse(const std::string& s);
  std::string str() const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// ---- the verifiers ----

/// Ground truth: multiply and compare. NotEqual carries the first differing
/// entry in row-major order.
Verdict verify_exact(const Instance& inst);

/// Per round: draw x in {0,1}^n (n bits), accept the round iff A(Bx) = Cx.
/// One-sided; never rejects a true instance.
Verdict verify_freivalds(const Instance& inst, uint32_t rounds, BitSource& src);

/// Integer rings only. Tests A(Bv) = Cv (mod q) on v = (1, a, ..., a^(n-1))
/// for a uniform a in {1..2n} and a fixed prime q in [2n, 4n]. One-sided.
Verdict verify_kimbrel_sinha(const Instance& inst, BitSource& src);

/// Integer rings only, deterministic. Evaluates the row polynomials of AB - C
/// at a point past every possible root, in arbitrary precision.
/// Errors with CapExceeded above n_cap.
Verdict verify_korec_wiedermann(const Instance& inst, size_t n_cap = 256);

/// Deterministic under the promise |AB - C|_0 <= t: evaluates the bilinear
/// form x^T (AB - C) y on t geometric-progression points of a generator.
Verdict verify_geometric(const Instance& inst, uint64_t t);

/// Deterministic sparse verifier: k' = ceil(sqrt(t)) parity rows H; accepts
/// iff H(AB-C) = 0 and H(AB-C)^T = 0, computed as ((HA)B) - HC without ever
/// forming AB. Exact whenever |AB - C|_0 <= t.
Verdict verify_det_sparse(const Instance& inst, uint64_t t);

/// Randomized sparse verifier: draws one column of a Cauchy matrix with
/// k' = next power of two >= ceil(sqrt(t)/eps) columns, consuming exactly
/// log2(k') bits. One-sided; under the promise, rejects a false instance with
/// probability at least 1 - eps.
Verdict verify_rand_sparse(const Instance& inst, uint64_t t, Rational eps, BitSource& src);

/// Decide |AB|_0 <= r by multiplying and counting.
bool mps_decide(const Matrix& A, const Matrix& B, uint64_t r);

// ---- parameter plumbing shared with the harness and CLI ----

struct VerifierOptions {
  std::optional<uint64_t> t;
  Rational eps{1, 2};
  uint32_t rounds = 1;
  uint64_t seed = 0;
  size_t kw_cap = 256;
  uint64_t mps_r = 0;
};

/// Dispatch by CLI token: exact, freivalds, kimbrel-sinha, korec-wiedermann,
/// geometric, det-sparse, rand-sparse, mps.
Verdict run_verifier(const std::string& alg, const Instance& inst, const VerifierOptions& opt);

bool verifier_known(const std::string& alg);
bool verifier_uses_eps(const std::string& alg);
bool verifier_is_randomized(const std::string& alg);
const std::vector<std::string>& verifier_names();

/// Column count of the randomized sparse verifier before / after the
/// power-of-two rounding.
uint64_t rand_sparse_k(uint64_t t, Rational eps);
uint64_t rand_sparse_kprime(uint64_t t, Rational eps);
unsigned rand_sparse_bits(uint64_t t, Rational eps);

/// Re-validate a NotEqual witness against the instance; Equal verdicts pass
/// trivially. `t` must be the sparsity parameter the verifier ran with (used
/// to rebuild parity rows).
bool witness_checks_out(const Instance& inst, const Verdict& v, uint64_t t);

}  // namespace mmv

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmv/verify.hpp"

namespace mmv {

/// A product-chain instance: decide whether mats[0] * ... * mats[k-1] equals C
/// (or equals the zero matrix when C is absent).
struct KInstance {
  RingSpec ring;
  std::vector<Matrix> mats;
  std::optional<Matrix> C;
};

// Every reduction is a total function on well-formed inputs, runs in O(n^2)
// element moves, preserves the answer, and returns a fresh instance. The
// optional `moves` counter tallies element writes for the cost assertions.

/// (A, B, C) -> 2n x 2n (A', B') with A'B' = [[AB - C, 0], [0, 0]]; the output
/// asks whether A'B' = 0 and has exactly the same number of product non-zeroes
/// as AB - C. The sparsity promise carries over unchanged.
Instance mmv_to_allzeroes(const Instance& inst, size_t* moves = nullptr);

/// AB = 0 instance -> 3n x 3n inverse-verification instance: A'B' equals the
/// identity iff AB = 0. Errors with NotAllZeroesForm when C != 0.
Instance allzeroes_to_inverse(const Instance& inst, size_t* moves = nullptr);

/// (A, B, C) -> 3n x 3n (A', B', C') with A', B' symmetric and A'B' = C' iff
/// AB = C.
Instance mmv_to_symmetric(const Instance& inst, size_t* moves = nullptr);

/// Pairwise-orthogonality of the columns of V -> (V^T, V, diag of the column
/// self-inner-products); the product equals C iff all distinct columns are
/// orthogonal.
Instance mcapo_to_mmv(const Matrix& vectors_as_columns, size_t* moves = nullptr);

/// k-matrix product against C -> k matrices of size 2n whose product is zero
/// iff the original product equals C.
KInstance kmmv_to_kaz(const KInstance& kinst, size_t* moves = nullptr);

/// Exact product of the chain (ground truth for k-instances).
Matrix kproduct(const KInstance& kinst);

// ---- zero-test budget audit ----
//
// Exponents are exact fixed-point micro-units (1.0 == 1000000) so the audit is
// purely symbolic: a family of zero tests L_i X R_i with shapes n^a_i x n and
// n x n^b_i can certify X = 0 for all large n only if some a_i + b_i reaches 2.

struct BudgetTest {
  int64_t alpha_micro = 0;
  int64_t beta_micro = 0;
};

struct BudgetSpec {
  std::vector<BudgetTest> tests;
};

struct BudgetResult {
  bool sufficient = false;
  int64_t deficit_micro = 0;  // 2 - max(alpha+beta), zero when sufficient
};

BudgetResult budget_audit(const BudgetSpec& spec);

/// Parse an exponent in [0, 1] ("0.5", "1") to micro-units.
int64_t parse_exponent_micro(const std::string& s);
std::string format_micro(int64_t micro);

}  // namespace mmv

#pragma once

#include <cstdint>
#include <vector>

#include "mmv/matrix.hpp"
#include "mmv/ring.hpp"

namespace mmv {

// Structured matrices from coding theory. Field elements are addressed by
// their canonical indices (see FieldOps); the canonical point sequence is
// 0, 1, 2, ... which pins every construction bit-exactly.

/// H_{i,j} = x_j^(i-1) on distinct points x_1..x_n; every non-zero vector with
/// at most k' non-zeroes is moved off zero by H.
struct ParityCheck {
  Matrix H;                     // k' x n over the field
  std::vector<uint64_t> points; // canonical element indices, length n
  size_t kprime = 0;
};

struct CauchySpec {
  std::vector<uint64_t> xs;  // n distinct element indices
  std::vector<uint64_t> ys;  // k more, all n+k pairwise distinct
};

/// Errors with FieldTooSmall if n exceeds the field size.
ParityCheck vandermonde_parity_check(const RingSpec& field, size_t kprime, size_t n);

/// Column i (1-based) of the n x k Cauchy matrix on the canonical points
/// xs = first n elements, ys = next k elements; entry j is (x_j - y_i)^-1.
/// Runs in O(n) field operations. Errors with FieldTooSmall if n + k exceeds
/// the field size.
std::vector<uint64_t> cauchy_column(const RingSpec& field, size_t n, size_t k, size_t i);

/// The canonical points used by cauchy_column.
CauchySpec cauchy_points(const RingSpec& field, size_t n, size_t k);

/// Closed-form determinant of the square Cauchy matrix on the given points;
/// non-zero whenever the points are pairwise distinct. Errors with
/// DegeneratePoints on any coincidence.
uint64_t cauchy_det_closed_form(const RingSpec& field, const std::vector<uint64_t>& xs,
                                const std::vector<uint64_t>& ys);

/// Test oracle: true iff every subset of rows(H) columns of H is linearly
/// independent (Gaussian elimination per subset). Brute force; errors with
/// TooLargeForOracle past n = 14, k' = 7.
bool check_mds_parity(const Matrix& H);
bool check_mds_parity(const ParityCheck& pc);

/// Test oracle: true iff every k x k submatrix of S is non-singular.
/// Brute force; errors with TooLargeForOracle past 8 x 8.
bool check_k_regular(const Matrix& S, size_t k);

/// Assemble the full n x k Cauchy matrix from cauchy_column calls.
Matrix cauchy_matrix(const RingSpec& field, size_t n, size_t k);

}  // namespace mmv

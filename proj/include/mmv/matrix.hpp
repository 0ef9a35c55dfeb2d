#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmv/ring.hpp"

namespace mmv {

struct LineWitness {
  enum class Axis { Row, Col };
  Axis axis = Axis::Row;
  size_t index = 0;
  uint64_t nnz_of_line = 0;
};

struct SparsityReport {
  uint64_t nnz = 0;
  std::optional<LineWitness> witness_line;
};

/// Dense row-major matrix over a RingSpec. Storage is packed per ring kind:
/// one 64-bit residue per entry for prime fields, `degree` words per entry for
/// extension fields, one signed 128-bit value per entry for bounded integers.
/// Matrices are immutable by convention once built; all free functions below
/// return fresh matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingSpec ring, size_t rows, size_t cols);  // zero-filled
  static Matrix identity(const RingSpec& ring, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const RingSpec& ring() const { return ring_; }

  Element get(size_t i, size_t j) const;
  void set(size_t i, size_t j, const Element& e);
  bool entry_is_zero(size_t i, size_t j) const;

  // typed fast paths
  uint64_t word(size_t i, size_t j) const { return words_[i * cols_ + j]; }
  void set_word(size_t i, size_t j, uint64_t v) { words_[i * cols_ + j] = v; }
  i128 intval(size_t i, size_t j) const { return ints_[i * cols_ + j]; }
  void set_intval(size_t i, size_t j, i128 v) { ints_[i * cols_ + j] = v; }
  std::span<const uint64_t> coeffs(size_t i, size_t j) const;
  std::span<uint64_t> coeffs_mut(size_t i, size_t j);

  const uint64_t* word_data() const { return words_.data(); }
  uint64_t* word_data() { return words_.data(); }
  const i128* int_data() const { return ints_.data(); }
  i128* int_data() { return ints_.data(); }

  bool operator==(const Matrix& other) const;
  bool operator!=(const Matrix& other) const { return !(*this == other); }

 private:
  RingSpec ring_;
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<uint64_t> words_;
  std::vector<i128> ints_;
};

/// Exact classical product, cache-blocked. Errors: DimMismatch, RingMismatch,
/// MagnitudeOverflow (Int ring, via an up-front bound on n * max|A| * max|B|).
Matrix matmul(const Matrix& a, const Matrix& b);

/// Same product with an explicit tile size (testing hook; result is identical
/// for every tile size).
Matrix matmul_tiled(const Matrix& a, const Matrix& b, size_t tile);

Matrix matvec(const Matrix& a, const Matrix& v);  // v is k x 1
Matrix vecmat(const Matrix& v, const Matrix& a);  // v is 1 x k

Matrix transpose(const Matrix& a);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_neg(const Matrix& a);

bool is_zero(const Matrix& a);

/// Exact non-zero count.
SparsityReport count_nnz(const Matrix& m);

/// A non-zero line (row or column) with at most floor(sqrt(t)) non-zero
/// entries: rows are scanned before columns, lowest index first. Whenever the
/// matrix is non-zero with at most t non-zeroes such a line exists. Errors
/// with NoWitness when none does (in particular for the zero matrix).
SparsityReport sparse_line_witness(const Matrix& m, uint64_t t);

/// Max |entry| of an Int-ring matrix.
u128 max_abs_entry(const Matrix& m);

}  // namespace mmv

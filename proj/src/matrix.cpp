#include "mmv/matrix.hpp"

#include <cassert>

namespace mmv {

namespace {

constexpr size_t kDefaultTile = 64;

void require_same_ring(const Matrix& a, const Matrix& b) {
  if (a.ring() != b.ring()) fail(Errc::RingMismatch, "operands live in different rings");
}

// ---- prime-field GEMM ----
// Accumulation strategy: when tile * (p-1)^2 fits in 64 bits the per-tile sums
// stay in a machine word; otherwise partial sums go through a 128-bit
// accumulator folded before it can wrap.

void gemm_prime(const uint64_t* a, const uint64_t* b, uint64_t* c, size_t m, size_t kdim, size_t n,
                uint64_t p, size_t tile) {
  bool narrow = false;
  {
    u128 prod = u128(p - 1) * (p - 1);
    narrow = prod != 0 && prod <= (~u128(0) >> 64) && u128(tile) * prod <= ~uint64_t(0);
    if (p == 2) narrow = u128(tile) <= ~uint64_t(0);
  }
  for (size_t ii = 0; ii < m; ii += tile) {
    size_t iend = std::min(m, ii + tile);
    for (size_t kk = 0; kk < kdim; kk += tile) {
      size_t kend = std::min(kdim, kk + tile);
      if (narrow) {
        for (size_t i = ii; i < iend; ++i) {
          for (size_t j = 0; j < n; ++j) {
            uint64_t acc = 0;
            const uint64_t* arow = a + i * kdim;
            for (size_t k = kk; k < kend; ++k) acc += arow[k] * b[k * n + j];
            c[i * n + j] = add_mod(c[i * n + j], acc % p, p);
          }
        }
      } else {
        for (size_t i = ii; i < iend; ++i) {
          for (size_t j = 0; j < n; ++j) {
            u128 acc = 0;
            unsigned pending = 0;
            const uint64_t* arow = a + i * kdim;
            for (size_t k = kk; k < kend; ++k) {
              acc += u128(arow[k]) * b[k * n + j];
              if (++pending == 32) {  // 32 * (2^61)^2 < 2^128
                acc %= p;
                pending = 0;
              }
            }
            c[i * n + j] = add_mod(c[i * n + j], static_cast<uint64_t>(acc % p), p);
          }
        }
      }
    }
  }
}

// ---- Int GEMM (checked 128-bit) ----

void gemm_int(const i128* a, const i128* b, i128* c, size_t m, size_t kdim, size_t n, size_t tile) {
  for (size_t ii = 0; ii < m; ii += tile) {
    size_t iend = std::min(m, ii + tile);
    for (size_t kk = 0; kk < kdim; kk += tile) {
      size_t kend = std::min(kdim, kk + tile);
      for (size_t i = ii; i < iend; ++i) {
        const i128* arow = a + i * kdim;
        i128* crow = c + i * n;
        for (size_t k = kk; k < kend; ++k) {
          i128 av = arow[k];
          if (av == 0) continue;
          const i128* brow = b + k * n;
          for (size_t j = 0; j < n; ++j) {
            crow[j] = checked_add(crow[j], checked_mul(av, brow[j]));
          }
        }
      }
    }
  }
}

// ---- extension-field GEMM ----

void gemm_ext(const Matrix& a, const Matrix& b, Matrix& c) {
  const RingSpec& f = a.ring();
  size_t e = f.degree();
  std::vector<uint64_t> prod(e), acc(e);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < b.cols(); ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (size_t k = 0; k < a.cols(); ++k) {
        ext_mul(f, a.coeffs(i, k), b.coeffs(k, j), prod);
        ext_add(f, acc, prod, acc);
      }
      auto out = c.coeffs_mut(i, j);
      for (size_t d = 0; d < e; ++d) out[d] = acc[d];
    }
  }
}

void int_matmul_gate(const Matrix& a, const Matrix& b) {
  u128 ma = max_abs_entry(a);
  u128 mb = max_abs_entry(b);
  u128 prod;
  if (!mul_fits_u128(ma, mb, &prod) || !mul_fits_u128(prod, a.cols(), &prod) || prod >= kMagnitudeCap) {
    fail(Errc::MagnitudeOverflow, "product entries may exceed the 127-bit integer range");
  }
}

}  // namespace

Matrix::Matrix(RingSpec ring, size_t rows, size_t cols) : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  switch (ring_.kind()) {
    case RingKind::PrimeField:
      words_.assign(rows * cols, 0);
      break;
    case RingKind::ExtField:
      words_.assign(rows * cols * ring_.degree(), 0);
      break;
    case RingKind::Int:
      ints_.assign(rows * cols, 0);
      break;
  }
}

Matrix Matrix::identity(const RingSpec& ring, size_t n) {
  Matrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) {
    switch (ring.kind()) {
      case RingKind::PrimeField:
        m.set_word(i, i, 1 % ring.prime());
        break;
      case RingKind::ExtField:
        m.coeffs_mut(i, i)[0] = 1 % ring.prime();
        break;
      case RingKind::Int:
        m.set_intval(i, i, 1);
        break;
    }
  }
  return m;
}

std::span<const uint64_t> Matrix::coeffs(size_t i, size_t j) const {
  size_t e = ring_.degree();
  return {words_.data() + (i * cols_ + j) * e, e};
}

std::span<uint64_t> Matrix::coeffs_mut(size_t i, size_t j) {
  size_t e = ring_.degree();
  return {words_.data() + (i * cols_ + j) * e, e};
}

Element Matrix::get(size_t i, size_t j) const {
  switch (ring_.kind()) {
    case RingKind::PrimeField:
      return Element::of_residue(word(i, j));
    case RingKind::ExtField: {
      auto c = coeffs(i, j);
      return Element::of_coeffs(std::vector<uint64_t>(c.begin(), c.end()));
    }
    case RingKind::Int:
      return Element::of_int(intval(i, j));
  }
  return {};
}

void Matrix::set(size_t i, size_t j, const Element& e) {
  if (e.kind != ring_.kind()) fail(Errc::RingMismatch, "element kind does not match matrix ring");
  switch (ring_.kind()) {
    case RingKind::PrimeField:
      assert(e.residue < ring_.prime());
      set_word(i, j, e.residue);
      break;
    case RingKind::ExtField: {
      assert(e.coeffs.size() == ring_.degree());
      auto out = coeffs_mut(i, j);
      for (size_t d = 0; d < out.size(); ++d) out[d] = e.coeffs[d];
      break;
    }
    case RingKind::Int:
      set_intval(i, j, e.value);
      break;
  }
}

bool Matrix::entry_is_zero(size_t i, size_t j) const {
  switch (ring_.kind()) {
    case RingKind::PrimeField:
      return word(i, j) == 0;
    case RingKind::Int:
      return intval(i, j) == 0;
    case RingKind::ExtField: {
      for (uint64_t c : coeffs(i, j))
        if (c != 0) return false;
      return true;
    }
  }
  return true;
}

bool Matrix::operator==(const Matrix& other) const {
  return ring_ == other.ring_ && rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_ &&
         ints_ == other.ints_;
}

Matrix matmul_tiled(const Matrix& a, const Matrix& b, size_t tile) {
  require_same_ring(a, b);
  if (a.cols() != b.rows()) fail(Errc::DimMismatch, "inner dimensions differ");
  if (tile == 0) tile = kDefaultTile;
  Matrix c(a.ring(), a.rows(), b.cols());
  switch (a.ring().kind()) {
    case RingKind::PrimeField:
      gemm_prime(a.word_data(), b.word_data(), c.word_data(), a.rows(), a.cols(), b.cols(),
                 a.ring().prime(), tile);
      break;
    case RingKind::Int:
      int_matmul_gate(a, b);
      gemm_int(a.int_data(), b.int_data(), c.int_data(), a.rows(), a.cols(), b.cols(), tile);
      break;
    case RingKind::ExtField:
      gemm_ext(a, b, c);
      break;
  }
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) { return matmul_tiled(a, b, kDefaultTile); }

Matrix matvec(const Matrix& a, const Matrix& v) {
  if (v.cols() != 1) fail(Errc::DimMismatch, "matvec needs a column vector");
  return matmul(a, v);
}

Matrix vecmat(const Matrix& v, const Matrix& a) {
  if (v.rows() != 1) fail(Errc::DimMismatch, "vecmat needs a row vector");
  return matmul(v, a);
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.ring(), a.cols(), a.rows());
  switch (a.ring().kind()) {
    case RingKind::PrimeField:
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) t.set_word(j, i, a.word(i, j));
      break;
    case RingKind::Int:
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) t.set_intval(j, i, a.intval(i, j));
      break;
    case RingKind::ExtField:
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
          auto src = a.coeffs(i, j);
          auto dst = t.coeffs_mut(j, i);
          for (size_t d = 0; d < src.size(); ++d) dst[d] = src[d];
        }
      break;
  }
  return t;
}

namespace {

template <typename F>
Matrix elementwise(const Matrix& a, const Matrix& b, F&& combine_prime, auto&& combine_int,
                   auto&& combine_ext) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::DimMismatch, "shapes differ");
  Matrix c(a.ring(), a.rows(), a.cols());
  switch (a.ring().kind()) {
    case RingKind::PrimeField: {
      uint64_t p = a.ring().prime();
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c.set_word(i, j, combine_prime(a.word(i, j), b.word(i, j), p));
      break;
    }
    case RingKind::Int:
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c.set_intval(i, j, combine_int(a.intval(i, j), b.intval(i, j)));
      break;
    case RingKind::ExtField:
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) combine_ext(a.ring(), a.coeffs(i, j), b.coeffs(i, j), c.coeffs_mut(i, j));
      break;
  }
  return c;
}

}  // namespace

Matrix mat_add(const Matrix& a, const Matrix& b) {
  return elementwise(
      a, b, [](uint64_t x, uint64_t y, uint64_t p) { return add_mod(x, y, p); },
      [](i128 x, i128 y) { return checked_add(x, y); },
      [](const RingSpec& f, auto x, auto y, auto out) { ext_add(f, x, y, out); });
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  return elementwise(
      a, b, [](uint64_t x, uint64_t y, uint64_t p) { return sub_mod(x, y, p); },
      [](i128 x, i128 y) { return checked_sub(x, y); },
      [](const RingSpec& f, auto x, auto y, auto out) { ext_sub(f, x, y, out); });
}

Matrix mat_neg(const Matrix& a) {
  Matrix zero(a.ring(), a.rows(), a.cols());
  return mat_sub(zero, a);
}

bool is_zero(const Matrix& a) {
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (!a.entry_is_zero(i, j)) return false;
  return true;
}

SparsityReport count_nnz(const Matrix& m) {
  SparsityReport r;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m.entry_is_zero(i, j)) ++r.nnz;
  return r;
}

SparsityReport sparse_line_witness(const Matrix& m, uint64_t t) {
  std::vector<uint64_t> row_nnz(m.rows(), 0), col_nnz(m.cols(), 0);
  uint64_t total = 0;
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m.entry_is_zero(i, j)) {
        ++row_nnz[i];
        ++col_nnz[j];
        ++total;
      }
    }
  }
  if (total == 0) fail(Errc::NoWitness, "zero matrix has no non-zero line");
  uint64_t bound = static_cast<uint64_t>(isqrt(t));

  SparsityReport r;
  r.nnz = total;
  for (size_t i = 0; i < m.rows(); ++i) {
    if (row_nnz[i] > 0 && row_nnz[i] <= bound) {
      r.witness_line = LineWitness{LineWitness::Axis::Row, i, row_nnz[i]};
      return r;
    }
  }
  for (size_t j = 0; j < m.cols(); ++j) {
    if (col_nnz[j] > 0 && col_nnz[j] <= bound) {
      r.witness_line = LineWitness{LineWitness::Axis::Col, j, col_nnz[j]};
      return r;
    }
  }
  fail(Errc::NoWitness, "no sqrt(t)-sparse non-zero line; matrix has " + std::to_string(total) +
                            " non-zeroes, above the stated bound " + std::to_string(t));
}

u128 max_abs_entry(const Matrix& m) {
  assert(m.ring().kind() == RingKind::Int);
  u128 best = 0;
  const i128* d = m.int_data();
  size_t count = m.rows() * m.cols();
  for (size_t i = 0; i < count; ++i) {
    i128 v = d[i];
    u128 a = v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    if (a > best) best = a;
  }
  return best;
}

}  // namespace mmv

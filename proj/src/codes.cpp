#include "mmv/codes.hpp"

#include <algorithm>

namespace mmv {

namespace {

void set_index(Matrix& m, const FieldOps& f, size_t i, size_t j, uint64_t index) {
  if (f.spec().kind() == RingKind::PrimeField) {
    m.set_word(i, j, index);
  } else {
    f.index_to_coeffs(index, m.coeffs_mut(i, j));
  }
}

uint64_t get_index(const Matrix& m, const FieldOps& f, size_t i, size_t j) {
  if (f.spec().kind() == RingKind::PrimeField) return m.word(i, j);
  return f.coeffs_to_index(m.coeffs(i, j));
}

// next k-subset of {0..n-1} in lexicographic order; false when exhausted
bool next_subset(std::vector<size_t>& idx, size_t n) {
  size_t k = idx.size();
  size_t i = k;
  while (i-- > 0) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// rank of an m x m index-matrix by Gaussian elimination
bool nonsingular(std::vector<std::vector<uint64_t>> a, const FieldOps& f) {
  size_t m = a.size();
  for (size_t col = 0; col < m; ++col) {
    size_t pivot = m;
    for (size_t r = col; r < m; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == m) return false;
    std::swap(a[col], a[pivot]);
    uint64_t inv = f.inv(a[col][col]);
    for (size_t r = col + 1; r < m; ++r) {
      if (a[r][col] == 0) continue;
      uint64_t factor = f.mul(a[r][col], inv);
      for (size_t cc = col; cc < m; ++cc) {
        a[r][cc] = f.sub(a[r][cc], f.mul(factor, a[col][cc]));
      }
    }
  }
  return true;
}

}  // namespace

ParityCheck vandermonde_parity_check(const RingSpec& field, size_t kprime, size_t n) {
  FieldOps f(field);
  if (n > f.size()) {
    fail(Errc::FieldTooSmall, "need " + std::to_string(n) + " distinct points in a field of size " +
                                  std::to_string(f.size()));
  }
  if (kprime < 1 || kprime > n) fail(Errc::ConfigError, "parity rows must satisfy 1 <= k' <= n");

  ParityCheck pc;
  pc.kprime = kprime;
  pc.points.resize(n);
  for (size_t j = 0; j < n; ++j) pc.points[j] = j;

  pc.H = Matrix(field, kprime, n);
  // row r holds x_j^r, built by repeated pointwise multiplication
  std::vector<uint64_t> row(n, 1 % f.size());
  if (f.size() == 1) row.assign(n, 0);
  for (size_t r = 0; r < kprime; ++r) {
    for (size_t j = 0; j < n; ++j) set_index(pc.H, f, r, j, row[j]);
    if (r + 1 < kprime) {
      for (size_t j = 0; j < n; ++j) row[j] = f.mul(row[j], pc.points[j]);
    }
  }
  return pc;
}

CauchySpec cauchy_points(const RingSpec& field, size_t n, size_t k) {
  FieldOps f(field);
  if (n + k > f.size()) {
    fail(Errc::FieldTooSmall, std::to_string(n) + " + " + std::to_string(k) +
                                  " distinct points do not fit in a field of size " + std::to_string(f.size()));
  }
  CauchySpec s;
  s.xs.resize(n);
  s.ys.resize(k);
  for (size_t j = 0; j < n; ++j) s.xs[j] = j;
  for (size_t j = 0; j < k; ++j) s.ys[j] = n + j;
  return s;
}

std::vector<uint64_t> cauchy_column(const RingSpec& field, size_t n, size_t k, size_t i) {
  if (i < 1 || i > k) fail(Errc::ConfigError, "column index out of range");
  CauchySpec pts = cauchy_points(field, n, k);
  FieldOps f(field);
  uint64_t y = pts.ys[i - 1];
  std::vector<uint64_t> col(n);
  for (size_t j = 0; j < n; ++j) {
    col[j] = f.inv(f.sub(pts.xs[j], y));
  }
  return col;
}

Matrix cauchy_matrix(const RingSpec& field, size_t n, size_t k) {
  FieldOps f(field);
  Matrix S(field, n, k);
  for (size_t i = 1; i <= k; ++i) {
    std::vector<uint64_t> col = cauchy_column(field, n, k, i);
    for (size_t j = 0; j < n; ++j) set_index(S, f, j, i - 1, col[j]);
  }
  return S;
}

uint64_t cauchy_det_closed_form(const RingSpec& field, const std::vector<uint64_t>& xs,
                                const std::vector<uint64_t>& ys) {
  if (xs.size() != ys.size()) fail(Errc::ConfigError, "point lists must have equal length");
  FieldOps f(field);
  size_t m = xs.size();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (xs[i] == ys[j]) fail(Errc::DegeneratePoints, "x and y points coincide");
      if (j > i) {
        if (xs[i] == xs[j]) fail(Errc::DegeneratePoints, "repeated x point");
        if (ys[i] == ys[j]) fail(Errc::DegeneratePoints, "repeated y point");
      }
    }
  }
  uint64_t num = 1 % f.size();
  for (size_t i = 1; i < m; ++i) {
    for (size_t j = 0; j < i; ++j) {
      num = f.mul(num, f.sub(xs[i], xs[j]));
      num = f.mul(num, f.sub(ys[i], ys[j]));
    }
  }
  uint64_t den = 1 % f.size();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      den = f.mul(den, f.sub(xs[i], ys[j]));
    }
  }
  return f.mul(num, f.inv(den));
}

bool check_mds_parity(const Matrix& H) {
  size_t kprime = H.rows();
  size_t n = H.cols();
  if (n > 14 || kprime > 7) fail(Errc::TooLargeForOracle, "MDS oracle is limited to n <= 14, k' <= 7");
  FieldOps f(H.ring());

  std::vector<size_t> idx(kprime);
  for (size_t i = 0; i < kprime; ++i) idx[i] = i;
  do {
    std::vector<std::vector<uint64_t>> sub(kprime, std::vector<uint64_t>(kprime));
    for (size_t r = 0; r < kprime; ++r) {
      for (size_t c = 0; c < kprime; ++c) sub[r][c] = get_index(H, f, r, idx[c]);
    }
    if (!nonsingular(std::move(sub), f)) return false;
  } while (next_subset(idx, n));
  return true;
}

bool check_mds_parity(const ParityCheck& pc) { return check_mds_parity(pc.H); }

bool check_k_regular(const Matrix& S, size_t k) {
  if (S.rows() > 8 || S.cols() > 8) fail(Errc::TooLargeForOracle, "regularity oracle is limited to 8 x 8");
  if (k < 1 || k > std::min(S.rows(), S.cols())) fail(Errc::ConfigError, "submatrix size out of range");
  FieldOps f(S.ring());

  std::vector<size_t> rows(k), cols(k);
  for (size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      std::vector<std::vector<uint64_t>> sub(k, std::vector<uint64_t>(k));
      for (size_t r = 0; r < k; ++r) {
        for (size_t c = 0; c < k; ++c) sub[r][c] = get_index(S, f, rows[r], cols[c]);
      }
      if (!nonsingular(std::move(sub), f)) return false;
    } while (next_subset(cols, S.cols()));
  } while (next_subset(rows, S.rows()));
  return true;
}

}  // namespace mmv

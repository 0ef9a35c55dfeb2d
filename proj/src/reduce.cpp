#include "mmv/reduce.hpp"

#include <algorithm>

namespace mmv {

namespace {

void bump(size_t* moves, size_t count) {
  if (moves) *moves += count;
}

void copy_block(Matrix& dst, size_t r0, size_t c0, const Matrix& src, bool negate, size_t* moves) {
  for (size_t i = 0; i < src.rows(); ++i) {
    for (size_t j = 0; j < src.cols(); ++j) {
      switch (src.ring().kind()) {
        case RingKind::PrimeField: {
          uint64_t v = src.word(i, j);
          if (negate && v != 0) v = src.ring().prime() - v;
          dst.set_word(r0 + i, c0 + j, v);
          break;
        }
        case RingKind::Int: {
          i128 v = src.intval(i, j);
          dst.set_intval(r0 + i, c0 + j, negate ? checked_sub(0, v) : v);
          break;
        }
        case RingKind::ExtField: {
          auto out = dst.coeffs_mut(r0 + i, c0 + j);
          if (negate) {
            ext_neg(src.ring(), src.coeffs(i, j), out);
          } else {
            auto in = src.coeffs(i, j);
            for (size_t d = 0; d < in.size(); ++d) out[d] = in[d];
          }
          break;
        }
      }
    }
  }
  bump(moves, src.rows() * src.cols());
}

void place_identity(Matrix& dst, size_t r0, size_t c0, size_t n, bool negate, size_t* moves) {
  const RingSpec& ring = dst.ring();
  for (size_t i = 0; i < n; ++i) {
    switch (ring.kind()) {
      case RingKind::PrimeField: {
        uint64_t one = 1 % ring.prime();
        dst.set_word(r0 + i, c0 + i, negate ? (one == 0 ? 0 : ring.prime() - one) : one);
        break;
      }
      case RingKind::Int:
        dst.set_intval(r0 + i, c0 + i, negate ? -1 : 1);
        break;
      case RingKind::ExtField: {
        auto out = dst.coeffs_mut(r0 + i, c0 + i);
        uint64_t one = 1 % ring.prime();
        out[0] = negate ? (one == 0 ? 0 : ring.prime() - one) : one;
        break;
      }
    }
  }
  bump(moves, n);
}

size_t square_size(const Instance& inst) {
  size_t n = inst.A.rows();
  if (n == 0 || inst.A.cols() != n || inst.B.rows() != n || inst.B.cols() != n || inst.C.rows() != n ||
      inst.C.cols() != n) {
    fail(Errc::DimMismatch, "reduction input must be square");
  }
  return n;
}

}  // namespace

Instance mmv_to_allzeroes(const Instance& inst, size_t* moves) {
  size_t n = square_size(inst);
  Instance out;
  out.ring = inst.ring;
  out.A = Matrix(inst.ring, 2 * n, 2 * n);
  out.B = Matrix(inst.ring, 2 * n, 2 * n);
  out.C = Matrix(inst.ring, 2 * n, 2 * n);
  out.c_omitted = true;
  out.promise_t = inst.promise_t;

  copy_block(out.A, 0, 0, inst.A, false, moves);
  place_identity(out.A, 0, n, n, true, moves);
  copy_block(out.B, 0, 0, inst.B, false, moves);
  copy_block(out.B, n, 0, inst.C, false, moves);
  return out;
}

Instance allzeroes_to_inverse(const Instance& inst, size_t* moves) {
  size_t n = square_size(inst);
  if (!is_zero(inst.C)) fail(Errc::NotAllZeroesForm, "input C must be the zero matrix");
  Instance out;
  out.ring = inst.ring;
  out.A = Matrix(inst.ring, 3 * n, 3 * n);
  out.B = Matrix(inst.ring, 3 * n, 3 * n);
  out.C = Matrix::identity(inst.ring, 3 * n);
  out.promise_t = inst.promise_t;

  place_identity(out.A, 0, 0, n, false, moves);
  copy_block(out.A, 0, n, inst.A, false, moves);
  place_identity(out.A, n, n, n, false, moves);
  copy_block(out.A, n, 2 * n, inst.B, false, moves);
  place_identity(out.A, 2 * n, 2 * n, n, false, moves);

  place_identity(out.B, 0, 0, n, false, moves);
  copy_block(out.B, 0, n, inst.A, true, moves);
  place_identity(out.B, n, n, n, false, moves);
  copy_block(out.B, n, 2 * n, inst.B, true, moves);
  place_identity(out.B, 2 * n, 2 * n, n, false, moves);
  return out;
}

Instance mmv_to_symmetric(const Instance& inst, size_t* moves) {
  size_t n = square_size(inst);
  Matrix at = transpose(inst.A);
  Matrix bt = transpose(inst.B);

  Instance out;
  out.ring = inst.ring;
  out.A = Matrix(inst.ring, 3 * n, 3 * n);
  out.B = Matrix(inst.ring, 3 * n, 3 * n);
  out.C = Matrix(inst.ring, 3 * n, 3 * n);
  if (inst.promise_t) out.promise_t = std::min<uint64_t>(4 * *inst.promise_t, uint64_t(3 * n) * (3 * n));

  // A' = [[I, 0, A], [0, I, -A], [A^T, -A^T, I]]
  place_identity(out.A, 0, 0, n, false, moves);
  copy_block(out.A, 0, 2 * n, inst.A, false, moves);
  place_identity(out.A, n, n, n, false, moves);
  copy_block(out.A, n, 2 * n, inst.A, true, moves);
  copy_block(out.A, 2 * n, 0, at, false, moves);
  copy_block(out.A, 2 * n, n, at, true, moves);
  place_identity(out.A, 2 * n, 2 * n, n, false, moves);

  // B' = [[I, 0, B^T], [0, I, B^T], [B, B, I]]
  place_identity(out.B, 0, 0, n, false, moves);
  copy_block(out.B, 0, 2 * n, bt, false, moves);
  place_identity(out.B, n, n, n, false, moves);
  copy_block(out.B, n, 2 * n, bt, false, moves);
  copy_block(out.B, 2 * n, 0, inst.B, false, moves);
  copy_block(out.B, 2 * n, n, inst.B, false, moves);
  place_identity(out.B, 2 * n, 2 * n, n, false, moves);

  // C' = [[I + C, C, B^T + A], [-C, I - C, B^T - A], [A^T + B, -A^T + B, I]]
  Matrix i_n = Matrix::identity(inst.ring, n);
  copy_block(out.C, 0, 0, mat_add(i_n, inst.C), false, moves);
  copy_block(out.C, 0, n, inst.C, false, moves);
  copy_block(out.C, 0, 2 * n, mat_add(bt, inst.A), false, moves);
  copy_block(out.C, n, 0, inst.C, true, moves);
  copy_block(out.C, n, n, mat_sub(i_n, inst.C), false, moves);
  copy_block(out.C, n, 2 * n, mat_sub(bt, inst.A), false, moves);
  copy_block(out.C, 2 * n, 0, mat_add(at, inst.B), false, moves);
  copy_block(out.C, 2 * n, n, mat_sub(inst.B, at), false, moves);
  place_identity(out.C, 2 * n, 2 * n, n, false, moves);
  return out;
}

Instance mcapo_to_mmv(const Matrix& vectors_as_columns, size_t* moves) {
  const Matrix& v = vectors_as_columns;
  size_t n = v.rows();
  if (n == 0 || v.cols() != n) fail(Errc::DimMismatch, "need n vectors of length n");

  Instance out;
  out.ring = v.ring();
  out.A = transpose(v);
  out.B = v;
  out.C = Matrix(v.ring(), n, n);
  bump(moves, 2 * n * n);

  // diagonal Gram entries <a_i, a_i>
  for (size_t i = 0; i < n; ++i) {
    switch (v.ring().kind()) {
      case RingKind::Int: {
        i128 acc = 0;
        for (size_t j = 0; j < n; ++j) acc = checked_add(acc, checked_mul(v.intval(j, i), v.intval(j, i)));
        out.C.set_intval(i, i, acc);
        break;
      }
      case RingKind::PrimeField: {
        uint64_t p = v.ring().prime();
        uint64_t acc = 0;
        for (size_t j = 0; j < n; ++j) acc = add_mod(acc, mul_mod(v.word(j, i), v.word(j, i), p), p);
        out.C.set_word(i, i, acc);
        break;
      }
      case RingKind::ExtField: {
        const RingSpec& f = v.ring();
        std::vector<uint64_t> acc(f.degree(), 0), prod(f.degree());
        for (size_t j = 0; j < n; ++j) {
          ext_mul(f, v.coeffs(j, i), v.coeffs(j, i), prod);
          ext_add(f, acc, prod, acc);
        }
        auto outc = out.C.coeffs_mut(i, i);
        for (size_t d = 0; d < acc.size(); ++d) outc[d] = acc[d];
        break;
      }
    }
  }
  bump(moves, n);
  return out;
}

KInstance kmmv_to_kaz(const KInstance& kinst, size_t* moves) {
  size_t k = kinst.mats.size();
  if (k < 2) fail(Errc::ConfigError, "k-instances need at least two factors");
  if (!kinst.C) fail(Errc::ConfigError, "input must carry a target matrix C");
  size_t n = kinst.mats[0].rows();
  for (const Matrix& m : kinst.mats) {
    if (m.rows() != n || m.cols() != n) fail(Errc::DimMismatch, "factors must be square and equal-sized");
    if (m.ring() != kinst.ring) fail(Errc::RingMismatch, "factors must share the instance ring");
  }

  KInstance out;
  out.ring = kinst.ring;
  out.mats.reserve(k);

  // first factor [[A_1, I], [0, 0]]
  Matrix first(kinst.ring, 2 * n, 2 * n);
  copy_block(first, 0, 0, kinst.mats[0], false, moves);
  place_identity(first, 0, n, n, false, moves);
  out.mats.push_back(std::move(first));

  // middle factors [[A_i, 0], [0, I]] keep the telescoped product in the top row
  for (size_t i = 1; i + 1 < k; ++i) {
    Matrix mid(kinst.ring, 2 * n, 2 * n);
    copy_block(mid, 0, 0, kinst.mats[i], false, moves);
    place_identity(mid, n, n, n, false, moves);
    out.mats.push_back(std::move(mid));
  }

  // last factor [[A_k, 0], [-C, 0]]
  Matrix last(kinst.ring, 2 * n, 2 * n);
  copy_block(last, 0, 0, kinst.mats[k - 1], false, moves);
  copy_block(last, n, 0, *kinst.C, true, moves);
  out.mats.push_back(std::move(last));
  return out;
}

Matrix kproduct(const KInstance& kinst) {
  if (kinst.mats.empty()) fail(Errc::ConfigError, "empty product chain");
  Matrix acc = kinst.mats[0];
  for (size_t i = 1; i < kinst.mats.size(); ++i) acc = matmul(acc, kinst.mats[i]);
  return acc;
}

BudgetResult budget_audit(const BudgetSpec& spec) {
  // A finite sum of n^(a_i + b_i) terms dominates n^2 for all large n only if
  // some exponent reaches 2 (test counts are constants).
  constexpr int64_t kTwo = 2000000;
  int64_t cmax = 0;
  for (const BudgetTest& t : spec.tests) {
    if (t.alpha_micro < 0 || t.alpha_micro > 1000000 || t.beta_micro < 0 || t.beta_micro > 1000000) {
      fail(Errc::ConfigError, "exponents must lie in [0, 1]");
    }
    cmax = std::max(cmax, t.alpha_micro + t.beta_micro);
  }
  BudgetResult r;
  r.sufficient = cmax >= kTwo;
  r.deficit_micro = r.sufficient ? 0 : kTwo - cmax;
  return r;
}

int64_t parse_exponent_micro(const std::string& s) {
  size_t dot = s.find('.');
  std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (ip.empty() || ip.size() > 1 || fp.size() > 6) fail(Errc::ConfigError, "bad exponent '" + s + "'");
  for (char c : ip + fp)
    if (c < '0' || c > '9') fail(Errc::ConfigError, "bad exponent '" + s + "'");
  int64_t v = (ip[0] - '0') * 1000000;
  int64_t scale = 100000;
  for (char c : fp) {
    v += (c - '0') * scale;
    scale /= 10;
  }
  if (v < 0 || v > 1000000) fail(Errc::ConfigError, "exponent out of [0, 1]: '" + s + "'");
  return v;
}

std::string format_micro(int64_t micro) {
  std::string out = std::to_string(micro / 1000000);
  int64_t frac = micro % 1000000;
  if (frac == 0) return out;
  std::string digits = std::to_string(frac);
  digits.insert(digits.begin(), 6 - digits.size(), '0');
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  return out + "." + digits;
}

}  // namespace mmv

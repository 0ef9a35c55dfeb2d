// Acceptance suite: one line per criterion, non-zero exit on any failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mmv/codes.hpp"
#include "mmv/harness.hpp"
#include "mmv/reduce.hpp"
#include "mmv/verify.hpp"

using namespace mmv;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  bool (*run)(std::string& detail);
};

Instance planted(const char* ring_token, size_t n, uint64_t s, uint64_t seed) {
  PlantedConfig cfg;
  cfg.ring = RingSpec::parse_token(ring_token);
  cfg.n = n;
  cfg.s = s;
  cfg.seed = seed;
  return gen_planted(cfg);
}

std::string g_mmv_bin;

// ---------------------------------------------------------------- 1

bool run_det_sparse_exactness(std::string& detail) {
  const uint64_t trials = 10000;
  const size_t sizes[4] = {8, 16, 32, 64};
  const char* rings[2] = {"int:1024", "zmod:101"};
  std::atomic<uint64_t> wrong{0};
  parallel_for(trials, resolve_threads(), [&](uint64_t i) {
    const char* ring = rings[i % 2];
    size_t n = sizes[(i / 2) % 4];
    uint64_t h = mix64(i);
    uint64_t s = h % (n + 1);
    uint64_t t = s + (mix64(h) % (n - s + 1));
    Instance inst = planted(ring, n, s, h ^ 0x5eed0001ULL);
    Verdict v = verify_det_sparse(inst, t);
    bool ok = v.answer == (s == 0 ? Answer::Equal : Answer::NotEqual);
    if (ok && v.answer == Answer::NotEqual) ok = witness_checks_out(inst, v, t);
    if (ok) ok = v.stats.random_bits == 0;
    if (!ok) wrong.fetch_add(1);
  });
  std::ostringstream os;
  os << trials << " planted instances, n in {8,16,32,64}, rings int:1024 and zmod:101, errors: " << wrong.load();
  detail = os.str();
  return wrong.load() == 0;
}

// ---------------------------------------------------------------- 2

bool run_rand_sparse_soundness(std::string& detail) {
  const int trials = 10000;
  std::ostringstream os;
  bool ok = true;
  for (size_t n : {16, 64, 256}) {
    uint64_t t = n;
    Instance inst = planted("int:1024", n, /*s=*/t, /*seed=*/0xace0ull + n);
    for (uint64_t den : {2, 4, 8}) {
      Rational eps{1, den};
      unsigned expected_bits =
          static_cast<unsigned>(std::countr_zero(uint64_t(n)) / 2 + std::countr_zero(den));
      std::atomic<uint64_t> false_accepts{0}, bit_errors{0};
      parallel_for(trials, resolve_threads(), [&](uint64_t seed) {
        BitSource src(seed);
        Verdict v = verify_rand_sparse(inst, t, eps, src);
        if (v.answer == Answer::Equal) false_accepts.fetch_add(1);
        if (v.stats.random_bits != expected_bits) bit_errors.fetch_add(1);
      });
      double e = 1.0 / double(den);
      double bound = e + 3.0 * std::sqrt(e * (1.0 - e) / trials);
      double rate = double(false_accepts.load()) / trials;
      if (rate > bound || bit_errors.load() != 0) ok = false;
      os << "n=" << n << " eps=1/" << den << " rate=" << rate << "<=" << bound << " bits=" << expected_bits
         << (bit_errors.load() ? "(BAD)" : "") << "; ";
    }
  }
  detail = os.str();
  return ok;
}

// ---------------------------------------------------------------- 3

bool run_freivalds_one_sided(std::string& detail) {
  std::atomic<uint64_t> false_rejections{0};
  parallel_for(1000, resolve_threads(), [&](uint64_t i) {
    Instance yes = planted(i % 2 ? "int:1024" : "zmod:101", 16, 0, mix64(i) ^ 0xf17eULL);
    BitSource src(i);
    if (verify_freivalds(yes, 1, src).answer != Answer::Equal) false_rejections.fetch_add(1);
  });

  Instance no = planted("int:1024", 16, 1, 0xbadc0deULL);
  std::atomic<uint64_t> detections{0};
  parallel_for(10000, resolve_threads(), [&](uint64_t seed) {
    BitSource src(seed);
    if (verify_freivalds(no, 1, src).answer == Answer::NotEqual) detections.fetch_add(1);
  });
  double freq = double(detections.load()) / 10000.0;
  std::ostringstream os;
  os << "false rejections: " << false_rejections.load() << "/1000, detection frequency: " << freq;
  detail = os.str();
  return false_rejections.load() == 0 && freq >= 0.45 && freq <= 1.0;
}

// ---------------------------------------------------------------- 4

bool run_korec_wiedermann(std::string& detail) {
  std::atomic<uint64_t> wrong{0};
  parallel_for(500, resolve_threads(), [&](uint64_t i) {
    uint64_t h = mix64(i ^ 0xk);
    (void)h;
  });
  // sequential-friendly deterministic sweep
  std::atomic<uint64_t> errors{0};
  parallel_for(500, resolve_threads(), [&](uint64_t i) {
    uint64_t h = mix64(i * 31 + 7);
    size_t n = 1 + h % 64;
    uint64_t s = (h >> 8) % 4;
    if (i % 2 == 0) s = 0;
    Instance inst = planted("int:100", n, std::min<uint64_t>(s, n * n), h);
    Verdict v = verify_korec_wiedermann(inst);
    bool ok = v.answer == (inst.promise_t == 0 ? Answer::Equal : Answer::NotEqual);
    if (ok && v.answer == Answer::NotEqual) ok = witness_checks_out(inst, v, 0);
    if (!ok) errors.fetch_add(1);
  });
  (void)wrong;
  std::ostringstream os;
  os << "500 instances with n <= 64, M <= 100, errors: " << errors.load();
  detail = os.str();
  return errors.load() == 0;
}

// ---------------------------------------------------------------- 5

bool run_coding_oracles(std::string& detail) {
  uint64_t checked = 0;
  for (uint64_t p : {13, 17}) {
    RingSpec f = RingSpec::prime_field(p);
    for (size_t n = 1; n <= 12; ++n) {
      for (size_t kp = 1; kp <= std::min<size_t>(6, n); ++kp) {
        if (!check_mds_parity(vandermonde_parity_check(f, kp, n))) {
          detail = "parity check failed the oracle";
          return false;
        }
        ++checked;
      }
    }
    for (size_t n = 1; n <= 6; ++n) {
      for (size_t k = 1; k <= 6; ++k) {
        Matrix s = cauchy_matrix(f, n, k);
        for (size_t m = 1; m <= std::min(n, k); ++m) {
          if (!check_k_regular(s, m)) {
            detail = "cauchy matrix failed the regularity oracle";
            return false;
          }
          ++checked;
        }
      }
    }
  }
  std::ostringstream os;
  os << checked << " oracle sweeps over zmod:13 and zmod:17, all clean";
  detail = os.str();
  return true;
}

// ---------------------------------------------------------------- 6

Instance zero_product_instance(const RingSpec& ring, size_t n, uint64_t seed) {
  BitSource src(seed);
  Instance inst;
  inst.ring = ring;
  inst.A = Matrix(ring, n, n);
  inst.B = Matrix(ring, n, n);
  inst.C = Matrix(ring, n, n);
  inst.c_omitted = true;
  if (ring.kind() == RingKind::Int) {
    i128 m = ring.magnitude();
    std::vector<i128> u(n), v(n), w(n, 0), z(n);
    for (size_t i = 0; i < n; ++i) {
      u[i] = static_cast<i128>(src.uniform_below_u128(2 * static_cast<u128>(m) + 1)) - m;
      v[i] = static_cast<i128>(src.uniform_below_u128(2 * static_cast<u128>(m) + 1)) - m;
      if (i < 2 && v[i] == 0) v[i] = 1;
      z[i] = static_cast<i128>(src.uniform_below_u128(2 * static_cast<u128>(m) + 1)) - m;
    }
    w[0] = v[1];
    w[1] = -v[0];
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        inst.A.set_intval(i, j, checked_mul(u[i], v[j]));
        inst.B.set_intval(i, j, checked_mul(w[i], z[j]));
      }
    }
    return inst;
  }
  FieldOps f(ring);
  auto set_idx = [&](Matrix& mat, size_t i, size_t j, uint64_t idx) {
    if (ring.kind() == RingKind::PrimeField) {
      mat.set_word(i, j, idx);
    } else {
      f.index_to_coeffs(idx, mat.coeffs_mut(i, j));
    }
  };
  std::vector<uint64_t> u(n), v(n), w(n, 0), z(n);
  for (size_t i = 0; i < n; ++i) {
    u[i] = src.uniform_below(f.size());
    v[i] = i < 2 ? 1 + src.uniform_below(f.size() - 1) : src.uniform_below(f.size());
    z[i] = src.uniform_below(f.size());
  }
  w[0] = v[1];
  w[1] = f.neg(v[0]);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      set_idx(inst.A, i, j, f.mul(u[i], v[j]));
      set_idx(inst.B, i, j, f.mul(w[i], z[j]));
    }
  }
  return inst;
}

bool run_reduction_web(std::string& detail) {
  const char* rings[3] = {"int:40", "zmod:13", "gf:2:3"};
  uint64_t failures = 0;

  for (uint64_t i = 0; i < 1000; ++i) {
    const RingSpec ring = RingSpec::parse_token(rings[i % 3]);
    uint64_t h = mix64(i ^ 0x6a11ULL);
    size_t n = 2 + h % 4;
    uint64_t s = (h >> 4) % 3;
    Instance inst = planted(rings[i % 3], n, s, h);
    Answer truth = verify_exact(inst).answer;

    // sparsity-preserving move to the AB = 0 form
    Instance az = mmv_to_allzeroes(inst);
    Matrix prod = matmul(az.A, az.B);
    if (count_nnz(prod).nnz != s) ++failures;
    if ((truth == Answer::Equal) != is_zero(prod)) ++failures;

    // symmetric factors with the same answer
    Instance sym = mmv_to_symmetric(inst);
    if (sym.A != transpose(sym.A) || sym.B != transpose(sym.B)) ++failures;
    if (verify_exact(sym).answer != truth) ++failures;

    // inverse verification against the zero-product ground truth
    Instance azin = (i % 2 == 0) ? zero_product_instance(ring, n, h ^ 1)
                                 : [&]() {
                                     Instance x = planted(rings[i % 3], n, 1 + h % 3, h ^ 2);
                                     x.C = Matrix(ring, n, n);
                                     x.c_omitted = true;
                                     return x;
                                   }();
    bool ab_zero = is_zero(matmul(azin.A, azin.B));
    Instance inv = allzeroes_to_inverse(azin);
    if ((verify_exact(inv).answer == Answer::Equal) != ab_zero) ++failures;
    if ((matmul(inv.A, inv.B) == Matrix::identity(ring, 3 * n)) != ab_zero) ++failures;

    // pairwise orthogonality against a direct scan
    Matrix vecs = planted(rings[i % 3], n, 0, h ^ 3).A;
    Instance mc = mcapo_to_mmv(vecs);
    bool ortho = true;
    for (size_t a = 0; a < n && ortho; ++a) {
      for (size_t b = 0; b < n && ortho; ++b) {
        if (a == b) continue;
        Element dot;
        if (ring.kind() == RingKind::Int) {
          i128 acc = 0;
          for (size_t k = 0; k < n; ++k) acc += vecs.intval(k, a) * vecs.intval(k, b);
          ortho = acc == 0;
        } else {
          FieldOps f(ring);
          uint64_t acc = 0;
          for (size_t k = 0; k < n; ++k) {
            uint64_t x = ring.kind() == RingKind::PrimeField ? vecs.word(k, a) : f.coeffs_to_index(vecs.coeffs(k, a));
            uint64_t y = ring.kind() == RingKind::PrimeField ? vecs.word(k, b) : f.coeffs_to_index(vecs.coeffs(k, b));
            acc = f.add(acc, f.mul(x, y));
          }
          ortho = acc == 0;
        }
        (void)dot;
      }
    }
    if ((verify_exact(mc).answer == Answer::Equal) != ortho) ++failures;

    // k-chain form
    size_t k = 2 + h % 3;
    KInstance kin;
    kin.ring = ring;
    BitSource src(h ^ 4);
    for (size_t j = 0; j < k; ++j) kin.mats.push_back(planted(rings[i % 3], n, 0, src.bits(64)).A);
    Matrix kp = kproduct(kin);
    bool want_yes = (h >> 7) % 2 == 0;
    if (want_yes) {
      kin.C = kp;
    } else {
      Matrix c = kp;
      if (ring.kind() == RingKind::Int) {
        c.set_intval(0, 0, checked_add(c.intval(0, 0), 1));
      } else if (ring.kind() == RingKind::PrimeField) {
        c.set_word(0, 0, add_mod(c.word(0, 0), 1, ring.prime()));
      } else {
        auto cc = c.coeffs_mut(0, 0);
        cc[0] = cc[0] == 0 ? 1 : 0;
      }
      kin.C = c;
    }
    if (is_zero(kproduct(kmmv_to_kaz(kin))) != want_yes) ++failures;
  }

  std::ostringstream os;
  os << "1000 instances through each of 5 reductions, failures: " << failures;
  detail = os.str();
  return failures == 0;
}

// ---------------------------------------------------------------- 7

bool run_relative_speed(std::string& detail) {
  const size_t n = 512;
  Instance inst = planted("int:1024", n, 0, 0x51deULL);

  Verdict exact = verify_exact(inst);
  Verdict det = verify_det_sparse(inst, n);
  BitSource src(7);
  Verdict rand = verify_rand_sparse(inst, n, Rational{1, 2}, src);

  bool verdicts_ok =
      exact.answer == Answer::Equal && det.answer == Answer::Equal && rand.answer == Answer::Equal;
  double det_ratio = double(det.stats.wall_nanos) / double(exact.stats.wall_nanos);
  double rand_ratio = double(rand.stats.wall_nanos) / double(exact.stats.wall_nanos);
  std::ostringstream os;
  os << "n=512 int:1024 t=512: det/exact=" << det_ratio << " (<=0.25), rand/exact=" << rand_ratio
     << " (<=0.05), exact=" << exact.stats.wall_nanos / 1000000 << "ms";
  detail = os.str();
  return verdicts_ok && det_ratio <= 0.25 && rand_ratio <= 0.05;
}

// ---------------------------------------------------------------- 8

std::string strip_wall_column(const std::string& csv) {
  std::string out;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t end = csv.find('\n', pos);
    if (end == std::string::npos) end = csv.size();
    std::string line = csv.substr(pos, end - pos);
    size_t comma = line.rfind(',');
    out += line.substr(0, comma);
    out.push_back('\n');
    pos = end + 1;
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool run_bench_determinism(std::string& detail) {
  if (g_mmv_bin.empty()) {
    detail = "no --mmv-bin given";
    return false;
  }
  fs::path dir = fs::temp_directory_path() / ("mmv_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path cfg = dir / "bench.json";
  {
    std::ofstream out(cfg);
    out << R"({"ring":"int:256","seed":99,"trials":40,"algs":["det-sparse","rand-sparse","freivalds"],)"
        << R"("ns":[16,32],"ss":[2],"epss":["1/4"]})";
  }
  auto run = [&](const char* threads, const fs::path& out) {
    std::string cmd = "MMV_THREADS=" + std::string(threads) + " \"" + g_mmv_bin + "\" bench --config \"" +
                      cfg.string() + "\" -o \"" + out.string() + "\"";
    return std::system(cmd.c_str()) == 0;
  };
  fs::path o1a = dir / "run1a.csv", o1b = dir / "run1b.csv", o4 = dir / "run4.csv";
  if (!run("1", o1a) || !run("1", o1b) || !run("4", o4)) {
    detail = "bench subprocess failed";
    return false;
  }
  std::string a = slurp(o1a), b = slurp(o1b), c = slurp(o4);
  bool identical_runs = a == b;  // full bytes, wall column included, same thread count
  bool identical_threads = strip_wall_column(a) == strip_wall_column(c);
  std::ostringstream os;
  os << "two single-thread runs byte-identical: " << (identical_runs ? "yes" : "NO")
     << "; 1-vs-4-thread CSVs identical minus wall column: " << (identical_threads ? "yes" : "NO");
  detail = os.str();
  return identical_runs && identical_threads;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--mmv-bin") g_mmv_bin = argv[i + 1];
  }

  const Criterion criteria[] = {
      {1, "deterministic sparse verifier exact on planted instances", 120, run_det_sparse_exactness},
      {2, "randomized sparse verifier failure rate and bit budget", 180, run_rand_sparse_soundness},
      {3, "freivalds one-sided error and detection frequency", 60, run_freivalds_one_sided},
      {4, "korec-wiedermann deterministic in both directions", 120, run_korec_wiedermann},
      {5, "coding oracles (parity checks and cauchy regularity)", 60, run_coding_oracles},
      {6, "reduction web preserves answers and sparsity", 60, run_reduction_web},
      {7, "sparse verifiers beat the exact baseline wall clock", 0, run_relative_speed},
      {8, "bench CSV deterministic across runs and thread counts", 0, run_bench_determinism},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_budget = c.budget_seconds == 0 || seconds <= c.budget_seconds;
    if (!in_budget) detail += " [over time budget]";
    bool pass = ok && in_budget;
    all_ok = all_ok && pass;
    std::printf("[%d] %-58s %s (%.1fs) %s\n", c.id, c.label, pass ? "PASS" : "FAIL", seconds,
                detail.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}

#include "mmv/harness.hpp"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace mmv {

namespace {

// ---- seeded draws ----

uint64_t draw_field_index(BitSource& src, const RingSpec& ring) {
  return src.uniform_below(ring.field_size());
}

i128 draw_int(BitSource& src, i128 m) {
  // uniform in [-M, M]
  u128 span = 2 * static_cast<u128>(m) + 1;
  u128 d = src.uniform_below_u128(span);
  return static_cast<i128>(d) - m;
}

i128 draw_nonzero_int(BitSource& src, i128 m) {
  // uniform in [-M, M] \ {0}
  u128 d = src.uniform_below_u128(2 * static_cast<u128>(m));
  if (d < static_cast<u128>(m)) return static_cast<i128>(d) - m;
  return static_cast<i128>(d - static_cast<u128>(m)) + 1;
}

void set_from_index(Matrix& mat, size_t i, size_t j, uint64_t index) {
  if (mat.ring().kind() == RingKind::PrimeField) {
    mat.set_word(i, j, index);
  } else {
    FieldOps f(mat.ring());
    f.index_to_coeffs(index, mat.coeffs_mut(i, j));
  }
}

void fill_random(Matrix& mat, BitSource& src) {
  for (size_t i = 0; i < mat.rows(); ++i) {
    for (size_t j = 0; j < mat.cols(); ++j) {
      if (mat.ring().kind() == RingKind::Int) {
        mat.set_intval(i, j, draw_int(src, mat.ring().magnitude()));
      } else {
        set_from_index(mat, i, j, draw_field_index(src, mat.ring()));
      }
    }
  }
}

void perturb(Matrix& c, size_t i, size_t j, BitSource& src) {
  switch (c.ring().kind()) {
    case RingKind::Int:
      c.set_intval(i, j, checked_add(c.intval(i, j), draw_nonzero_int(src, c.ring().magnitude())));
      break;
    case RingKind::PrimeField: {
      uint64_t p = c.ring().prime();
      uint64_t delta = 1 + src.uniform_below(p - 1);
      c.set_word(i, j, add_mod(c.word(i, j), delta, p));
      break;
    }
    case RingKind::ExtField: {
      FieldOps f(c.ring());
      uint64_t delta = 1 + src.uniform_below(f.size() - 1);
      uint64_t cur = f.coeffs_to_index(c.coeffs(i, j));
      f.index_to_coeffs(f.add(cur, delta), c.coeffs_mut(i, j));
      break;
    }
  }
}

}  // namespace

Instance gen_planted(const PlantedConfig& cfg) {
  if (cfg.n == 0) fail(Errc::ConfigError, "planted size must be positive");
  if (cfg.s > uint64_t(cfg.n) * cfg.n) fail(Errc::ConfigError, "cannot plant more deltas than entries");

  BitSource src(cfg.seed);
  Instance inst;
  inst.ring = cfg.ring;
  inst.A = Matrix(cfg.ring, cfg.n, cfg.n);
  inst.B = Matrix(cfg.ring, cfg.n, cfg.n);
  fill_random(inst.A, src);
  fill_random(inst.B, src);
  inst.C = matmul(inst.A, inst.B);

  // distinct positions by a seeded Fisher-Yates prefix
  uint64_t total = uint64_t(cfg.n) * cfg.n;
  std::vector<uint64_t> idx(total);
  for (uint64_t i = 0; i < total; ++i) idx[i] = i;
  for (uint64_t i = 0; i < cfg.s; ++i) {
    uint64_t j = i + src.uniform_below(total - i);
    std::swap(idx[i], idx[j]);
  }
  for (uint64_t i = 0; i < cfg.s; ++i) {
    perturb(inst.C, idx[i] / cfg.n, idx[i] % cfg.n, src);
  }
  inst.promise_t = cfg.s;
  return inst;
}

// ---------------------------------------------------------------- file format

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& bytes) : bytes_(bytes) {}

  bool next(std::string& out) {
    if (pos_ >= bytes_.size()) return false;
    size_t end = bytes_.find('\n', pos_);
    if (end == std::string::npos) fail_parse("missing final newline", line_ + 1, 1);
    out = bytes_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return true;
  }

  void expect(std::string& out, const char* what) {
    if (!next(out)) fail_parse(std::string("unexpected end of file, wanted ") + what, line_ + 1, 1);
  }

  size_t line() const { return line_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

 private:
  const std::string& bytes_;
  size_t pos_ = 0;
  size_t line_ = 0;
};

std::vector<std::pair<std::string, size_t>> split_fields(const std::string& line) {
  std::vector<std::pair<std::string, size_t>> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    out.emplace_back(line.substr(start, i - start), start + 1);
  }
  return out;
}

uint64_t parse_header_u64(const std::string& line, const char* key, size_t lineno) {
  auto fields = split_fields(line);
  if (fields.size() != 2 || fields[0].first != key) fail_parse(std::string("expected '") + key + " <value>'", lineno, 1);
  const std::string& v = fields[1].first;
  if (v.empty() || (v.size() > 1 && v[0] == '0')) fail_parse("bad count", lineno, fields[1].second);
  uint64_t out = 0;
  for (char c : v) {
    if (c < '0' || c > '9') fail_parse("bad count", lineno, fields[1].second);
    if (out > (~uint64_t(0) - (c - '0')) / 10) fail_parse("count out of range", lineno, fields[1].second);
    out = out * 10 + uint64_t(c - '0');
  }
  return out;
}

Element parse_value(const std::string& tok, const RingSpec& ring, size_t lineno, size_t col) {
  switch (ring.kind()) {
    case RingKind::PrimeField: {
      if (tok.empty() || (tok.size() > 1 && tok[0] == '0')) fail_parse("non-canonical residue '" + tok + "'", lineno, col);
      uint64_t v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') fail_parse("bad residue '" + tok + "'", lineno, col);
        if (v > (~uint64_t(0) - (c - '0')) / 10) fail_parse("residue out of range", lineno, col);
        v = v * 10 + uint64_t(c - '0');
      }
      if (v >= ring.prime()) fail_parse("non-canonical residue " + tok + " for " + ring.token(), lineno, col);
      return Element::of_residue(v);
    }
    case RingKind::Int: {
      try {
        return Element::of_int(parse_i128(tok));
      } catch (const Error&) {
        fail_parse("bad integer '" + tok + "'", lineno, col);
      }
    }
    case RingKind::ExtField: {
      std::vector<uint64_t> coeffs;
      size_t start = 0;
      for (size_t i = 0; i <= tok.size(); ++i) {
        if (i == tok.size() || tok[i] == ':') {
          std::string part = tok.substr(start, i - start);
          if (part.empty() || (part.size() > 1 && part[0] == '0'))
            fail_parse("non-canonical coefficient in '" + tok + "'", lineno, col);
          uint64_t v = 0;
          for (char c : part) {
            if (c < '0' || c > '9') fail_parse("bad coefficient in '" + tok + "'", lineno, col);
            v = v * 10 + uint64_t(c - '0');
          }
          if (v >= ring.prime()) fail_parse("non-canonical coefficient in '" + tok + "'", lineno, col);
          coeffs.push_back(v);
          start = i + 1;
        }
      }
      if (coeffs.size() != ring.degree())
        fail_parse("expected " + std::to_string(ring.degree()) + " coefficients in '" + tok + "'", lineno, col);
      return Element::of_coeffs(std::move(coeffs));
    }
  }
  fail_parse("bad value", lineno, col);
}

Matrix parse_matrix_block(LineReader& r, const RingSpec& ring, size_t n, const std::string& header) {
  std::string line;
  r.expect(line, header.c_str());
  if (line != header) fail_parse("expected block header '" + header + "'", r.line(), 1);
  Matrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) {
    r.expect(line, "matrix row");
    auto fields = split_fields(line);
    if (fields.size() != n) fail_parse("expected " + std::to_string(n) + " values", r.line(), 1);
    for (size_t j = 0; j < n; ++j) {
      m.set(i, j, parse_value(fields[j].first, ring, r.line(), fields[j].second));
    }
  }
  return m;
}

std::string format_value(const Matrix& m, size_t i, size_t j) {
  switch (m.ring().kind()) {
    case RingKind::PrimeField:
      return std::to_string(m.word(i, j));
    case RingKind::Int:
      return to_string(m.intval(i, j));
    case RingKind::ExtField: {
      std::string out;
      auto c = m.coeffs(i, j);
      for (size_t d = 0; d < c.size(); ++d) {
        if (d) out.push_back(':');
        out += std::to_string(c[d]);
      }
      return out;
    }
  }
  return {};
}

void write_matrix_block(std::string& out, const Matrix& m, const std::string& header) {
  out += header;
  out.push_back('\n');
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) out.push_back(' ');
      out += format_value(m, i, j);
    }
    out.push_back('\n');
  }
}

struct Preamble {
  RingSpec ring;
  std::optional<uint64_t> k;
  size_t n = 0;
};

Preamble parse_preamble(LineReader& r) {
  std::string line;
  r.expect(line, "magic");
  if (line != "MMV1") fail_parse("bad magic, expected 'MMV1'", r.line(), 1);
  r.expect(line, "ring");
  auto fields = split_fields(line);
  if (fields.size() != 2 || fields[0].first != "ring") fail_parse("expected 'ring <token>'", r.line(), 1);
  Preamble p;
  try {
    p.ring = RingSpec::parse_token(fields[1].first);
  } catch (const Error& e) {
    fail_parse(e.what(), r.line(), fields[1].second);
  }
  r.expect(line, "n");
  if (line.rfind("k ", 0) == 0) {
    p.k = parse_header_u64(line, "k", r.line());
    if (*p.k < 2) fail_parse("k must be at least 2", r.line(), 3);
    r.expect(line, "n");
  }
  uint64_t n = parse_header_u64(line, "n", r.line());
  if (n == 0) fail_parse("n must be positive", r.line(), 3);
  p.n = static_cast<size_t>(n);
  return p;
}

std::optional<uint64_t> parse_promise_or_end(LineReader& r, size_t n) {
  std::string line;
  if (!r.next(line)) return std::nullopt;
  if (line.rfind("promise ", 0) != 0) fail_parse("unexpected trailing line '" + line + "'", r.line(), 1);
  uint64_t t = parse_header_u64(line, "promise", r.line());
  if (t > uint64_t(n) * n) fail_parse("promise exceeds n^2", r.line(), 9);
  if (r.next(line)) fail_parse("unexpected content after promise", r.line(), 1);
  return t;
}

}  // namespace

Instance parse_instance(const std::string& bytes) {
  LineReader r(bytes);
  Preamble p = parse_preamble(r);
  if (p.k) fail_parse("expected a plain instance, found a k-instance", 3, 1);

  Instance inst;
  inst.ring = p.ring;
  inst.A = parse_matrix_block(r, p.ring, p.n, "A");
  inst.B = parse_matrix_block(r, p.ring, p.n, "B");

  // C block is optional (AB = 0 form); a promise line may follow either way
  std::string line;
  if (!r.next(line)) {
    inst.C = Matrix(p.ring, p.n, p.n);
    inst.c_omitted = true;
    return inst;
  }
  if (line == "C") {
    inst.C = Matrix(p.ring, p.n, p.n);
    for (size_t i = 0; i < p.n; ++i) {
      r.expect(line, "matrix row");
      auto fields = split_fields(line);
      if (fields.size() != p.n) fail_parse("expected " + std::to_string(p.n) + " values", r.line(), 1);
      for (size_t j = 0; j < p.n; ++j) {
        inst.C.set(i, j, parse_value(fields[j].first, p.ring, r.line(), fields[j].second));
      }
    }
    inst.promise_t = parse_promise_or_end(r, p.n);
    return inst;
  }
  if (line.rfind("promise ", 0) == 0) {
    inst.C = Matrix(p.ring, p.n, p.n);
    inst.c_omitted = true;
    uint64_t t = parse_header_u64(line, "promise", r.line());
    if (t > uint64_t(p.n) * p.n) fail_parse("promise exceeds n^2", r.line(), 9);
    if (r.next(line)) fail_parse("unexpected content after promise", r.line(), 1);
    inst.promise_t = t;
    return inst;
  }
  fail_parse("expected 'C' or 'promise' or end of file", r.line(), 1);
}

std::string write_instance(const Instance& inst) {
  std::string out = "MMV1\nring " + inst.ring.token() + "\nn " + std::to_string(inst.A.rows()) + "\n";
  write_matrix_block(out, inst.A, "A");
  write_matrix_block(out, inst.B, "B");
  if (!inst.c_omitted) write_matrix_block(out, inst.C, "C");
  if (inst.promise_t) out += "promise " + std::to_string(*inst.promise_t) + "\n";
  return out;
}

KInstance parse_kinstance(const std::string& bytes) {
  LineReader r(bytes);
  Preamble p = parse_preamble(r);
  if (!p.k) fail_parse("expected a k-instance ('k <count>' line)", 3, 1);

  KInstance k;
  k.ring = p.ring;
  for (uint64_t i = 1; i <= *p.k; ++i) {
    k.mats.push_back(parse_matrix_block(r, p.ring, p.n, "A" + std::to_string(i)));
  }
  std::string line;
  if (!r.next(line)) return k;
  if (line != "C") fail_parse("expected 'C' or end of file", r.line(), 1);
  Matrix c(p.ring, p.n, p.n);
  for (size_t i = 0; i < p.n; ++i) {
    r.expect(line, "matrix row");
    auto fields = split_fields(line);
    if (fields.size() != p.n) fail_parse("expected " + std::to_string(p.n) + " values", r.line(), 1);
    for (size_t j = 0; j < p.n; ++j) c.set(i, j, parse_value(fields[j].first, p.ring, r.line(), fields[j].second));
  }
  k.C = std::move(c);
  if (r.next(line)) fail_parse("unexpected trailing line '" + line + "'", r.line(), 1);
  return k;
}

std::string write_kinstance(const KInstance& kinst) {
  std::string out = "MMV1\nring " + kinst.ring.token() + "\nk " + std::to_string(kinst.mats.size()) + "\nn " +
                    std::to_string(kinst.mats.empty() ? 0 : kinst.mats[0].rows()) + "\n";
  for (size_t i = 0; i < kinst.mats.size(); ++i) {
    write_matrix_block(out, kinst.mats[i], "A" + std::to_string(i + 1));
  }
  if (kinst.C) write_matrix_block(out, *kinst.C, "C");
  return out;
}

Matrix parse_single_matrix(const std::string& bytes) {
  LineReader r(bytes);
  Preamble p = parse_preamble(r);
  if (p.k) fail_parse("expected a single-matrix file", 3, 1);
  Matrix m = parse_matrix_block(r, p.ring, p.n, "A");
  std::string line;
  if (r.next(line)) fail_parse("unexpected trailing line '" + line + "'", r.line(), 1);
  return m;
}

std::string write_single_matrix(const Matrix& m) {
  std::string out = "MMV1\nring " + m.ring().token() + "\nn " + std::to_string(m.rows()) + "\n";
  write_matrix_block(out, m, "A");
  return out;
}

bool looks_like_kinstance(const std::string& bytes) {
  // third line starts the optional `k ` header
  size_t pos = 0;
  for (int i = 0; i < 2; ++i) {
    pos = bytes.find('\n', pos);
    if (pos == std::string::npos) return false;
    ++pos;
  }
  return bytes.compare(pos, 2, "k ") == 0;
}

// ---------------------------------------------------------------- bench harness

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MMV_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0 && v <= 256) return static_cast<unsigned>(v);
    if (end && *end == '\0' && v == 0) { /* auto */
    } else if (end && *end != '\0') {
      fail(Errc::ConfigError, "bad MMV_THREADS value");
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

uint64_t trial_seed(uint64_t master, uint64_t trial_index) { return master ^ mix64(trial_index); }

void parallel_for(uint64_t count, unsigned threads, const std::function<void(uint64_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<uint64_t>(threads, count));
  std::atomic<uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        uint64_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

std::string bench_csv_header() {
  return "alg,ring,n,t,eps,trials,false_accepts,random_bits_mean,elem_ops_mean,wall_nanos_mean";
}

namespace {

std::string format_mean(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string bench_row_csv(const BenchRow& row) {
  std::ostringstream os;
  os << row.alg << ',' << row.ring_token << ',' << row.n << ',' << row.t << ',' << row.eps << ',' << row.trials
     << ',' << row.false_accepts << ',' << format_mean(row.random_bits_mean) << ','
     << format_mean(row.elem_ops_mean) << ',' << format_mean(row.wall_nanos_mean);
  return os.str();
}

BenchRow estimate_failure_rate(const std::string& alg, const PlantedConfig& cfg,
                               const VerifierOptions& opt, uint64_t trials, unsigned threads) {
  if (trials < 1) fail(Errc::ConfigError, "need at least one trial");
  if (cfg.s < 1) fail(Errc::ConfigError, "failure-rate estimation needs planted instances (s >= 1)");
  if (!verifier_known(alg) || alg == "mps") fail(Errc::ConfigError, "unsupported algorithm '" + alg + "'");

  std::atomic<uint64_t> false_accepts{0}, bits_sum{0}, ops_sum{0}, wall_sum{0};
  parallel_for(trials, threads, [&](uint64_t trial) {
    uint64_t base = trial_seed(cfg.seed, trial);
    PlantedConfig c = cfg;
    c.seed = base;
    Instance inst = gen_planted(c);
    VerifierOptions o = opt;
    o.seed = mix64(base);
    if (!o.t) o.t = cfg.s;
    Verdict v = run_verifier(alg, inst, o);
    if (v.answer == Answer::Equal) false_accepts.fetch_add(1);
    bits_sum.fetch_add(v.stats.random_bits);
    ops_sum.fetch_add(v.stats.elem_ops);
    wall_sum.fetch_add(v.stats.wall_nanos);
  });

  BenchRow row;
  row.alg = alg;
  row.ring_token = cfg.ring.token();
  row.n = cfg.n;
  row.t = opt.t ? *opt.t : cfg.s;
  row.eps = verifier_uses_eps(alg) ? opt.eps.str() : "-";
  row.trials = trials;
  row.false_accepts = false_accepts.load();
  row.random_bits_mean = double(bits_sum.load()) / double(trials);
  row.elem_ops_mean = double(ops_sum.load()) / double(trials);
  row.wall_nanos_mean = double(wall_sum.load()) / double(trials);
  return row;
}

std::string bench_run(const std::string& config_json) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, std::string("bad bench config: ") + e.what());
  }

  RingSpec ring;
  uint64_t seed = 0, trials = 0;
  std::vector<std::string> algs, epss;
  std::vector<uint64_t> ns, ss;
  uint32_t rounds = 1;
  try {
    ring = RingSpec::parse_token(cfg.at("ring").get<std::string>());
    seed = cfg.at("seed").get<uint64_t>();
    trials = cfg.at("trials").get<uint64_t>();
    algs = cfg.at("algs").get<std::vector<std::string>>();
    ns = cfg.at("ns").get<std::vector<uint64_t>>();
    ss = cfg.at("ss").get<std::vector<uint64_t>>();
    if (cfg.contains("epss")) epss = cfg.at("epss").get<std::vector<std::string>>();
    if (cfg.contains("rounds")) rounds = cfg.at("rounds").get<uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, std::string("bad bench config: ") + e.what());
  } catch (const Error& e) {
    fail(Errc::ConfigError, std::string("bad bench config: ") + e.what());
  }
  if (epss.empty()) epss = {"1/2"};
  for (const std::string& alg : algs) {
    if (!verifier_known(alg) || alg == "mps") fail(Errc::ConfigError, "unsupported algorithm '" + alg + "'");
  }
  for (uint64_t s : ss) {
    if (s < 1) fail(Errc::ConfigError, "planted counts must be >= 1");
  }

  unsigned threads = resolve_threads();
  std::string out = bench_csv_header() + "\n";
  for (const std::string& alg : algs) {
    for (uint64_t n : ns) {
      for (uint64_t s : ss) {
        std::vector<std::string> eps_axis = verifier_uses_eps(alg) ? epss : std::vector<std::string>{"-"};
        for (const std::string& eps : eps_axis) {
          PlantedConfig pc;
          pc.ring = ring;
          pc.n = static_cast<size_t>(n);
          pc.s = std::min<uint64_t>(s, n * n);
          pc.seed = seed;
          VerifierOptions opt;
          opt.rounds = rounds;
          opt.t = pc.s;
          if (eps != "-") opt.eps = Rational::parse(eps);
          BenchRow row = estimate_failure_rate(alg, pc, opt, trials, threads);
          row.eps = eps;
          out += bench_row_csv(row) + "\n";
        }
      }
    }
  }
  return out;
}

}  // namespace mmv

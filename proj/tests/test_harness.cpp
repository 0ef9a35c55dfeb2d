#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mmv/harness.hpp"

using namespace mmv;

namespace {

std::string read_data_file(const std::string& name) {
  std::ifstream in(std::string(MMV_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

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

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("planted instances have the requested sparsity exactly") {
  for (const char* token : {"int:50", "zmod:13", "zmod:2", "gf:2:3", "int:1"}) {
    for (uint64_t rep = 0; rep < 60; ++rep) {
      size_t n = 2 + rep % 6;
      uint64_t s = rep % (n * n / 2 + 1);
      PlantedConfig cfg;
      cfg.ring = RingSpec::parse_token(token);
      cfg.n = n;
      cfg.s = s;
      cfg.seed = mix64(rep) + 4;
      Instance inst = gen_planted(cfg);
      CAPTURE(token);
      CAPTURE(n);
      CAPTURE(s);
      REQUIRE(inst.promise_t == s);
      REQUIRE(count_nnz(mat_sub(matmul(inst.A, inst.B), inst.C)).nnz == s);
      REQUIRE(verify_exact(inst).answer == (s == 0 ? Answer::Equal : Answer::NotEqual));
    }
  }
}

TEST_CASE("planted generation is byte-stable in its seed") {
  PlantedConfig cfg;
  cfg.ring = RingSpec::parse_token("int:100");
  cfg.n = 8;
  cfg.s = 3;
  cfg.seed = 20240229;
  std::string once = write_instance(gen_planted(cfg));
  std::string twice = write_instance(gen_planted(cfg));
  CHECK(once == twice);
  cfg.seed += 1;
  CHECK(write_instance(gen_planted(cfg)) != once);
}

TEST_CASE("minimal instance round-trips through text") {
  Instance inst;
  inst.ring = RingSpec::parse_token("int:5");
  inst.A = Matrix(inst.ring, 1, 1);
  inst.B = Matrix(inst.ring, 1, 1);
  inst.C = Matrix(inst.ring, 1, 1);
  inst.A.set_intval(0, 0, -3);
  inst.B.set_intval(0, 0, 2);
  inst.C.set_intval(0, 0, -6);
  std::string bytes = write_instance(inst);
  Instance back = parse_instance(bytes);
  CHECK(back.ring == inst.ring);
  CHECK(back.A == inst.A);
  CHECK(back.B == inst.B);
  CHECK(back.C == inst.C);
  CHECK(!back.promise_t.has_value());
  CHECK(write_instance(back) == bytes);
}

TEST_CASE("random instances round-trip for every ring kind") {
  for (const char* token : {"int:77", "zmod:13", "gf:3:2"}) {
    for (uint64_t rep = 0; rep < 100; ++rep) {
      PlantedConfig cfg;
      cfg.ring = RingSpec::parse_token(token);
      cfg.n = 1 + rep % 5;
      cfg.s = rep % 2;
      cfg.seed = mix64(rep ^ 0xf00d);
      Instance inst = gen_planted(cfg);
      if (rep % 3 == 0) inst.promise_t.reset();
      if (rep % 5 == 0) {
        inst.C = Matrix(cfg.ring, cfg.n, cfg.n);
        inst.c_omitted = true;
      }
      std::string bytes = write_instance(inst);
      Instance back = parse_instance(bytes);
      REQUIRE(back.ring == inst.ring);
      REQUIRE(back.A == inst.A);
      REQUIRE(back.B == inst.B);
      REQUIRE(back.C == inst.C);
      REQUIRE(back.promise_t == inst.promise_t);
      REQUIRE(back.c_omitted == inst.c_omitted);
      REQUIRE(write_instance(back) == bytes);
    }
  }
}

TEST_CASE("golden instance bytes survive parse-then-write") {
  std::string bytes = read_data_file("instance_zmod7.mmv");
  Instance inst = parse_instance(bytes);
  CHECK(write_instance(inst) == bytes);
  CHECK(inst.ring.token() == "zmod:7");
  CHECK(inst.promise_t == 0);
  CHECK(verify_exact(inst).answer == Answer::Equal);

  std::string ext = read_data_file("instance_gf4.mmv");
  Instance extinst = parse_instance(ext);
  CHECK(write_instance(extinst) == ext);
  CHECK(verify_exact(extinst).answer == Answer::Equal);
}

TEST_CASE("golden k-instance file parses into a chain") {
  std::string bytes = read_data_file("kinstance_k3.mmv");
  CHECK(looks_like_kinstance(bytes));
  KInstance k = parse_kinstance(bytes);
  CHECK(k.ring.token() == "zmod:7");
  CHECK(k.mats.size() == 3);
  REQUIRE(k.C.has_value());
  CHECK(kproduct(k) == *k.C);
  CHECK(write_kinstance(k) == bytes);
  CHECK_THROWS_AS(static_cast<void>(parse_instance(bytes)), Error);
}

TEST_CASE("parser pinpoints non-canonical values") {
  std::string bad =
      "MMV1\n"
      "ring zmod:7\n"
      "n 2\n"
      "A\n"
      "0 1\n"
      "2 9\n"
      "B\n"
      "1 0\n"
      "0 1\n";
  try {
    static_cast<void>(parse_instance(bad));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(e.line == 6);
    CHECK(e.column == 3);
    CHECK(std::string(e.what()).find("non-canonical") != std::string::npos);
  }
}

TEST_CASE("parser rejects malformed files") {
  CHECK_THROWS_AS(static_cast<void>(parse_instance("")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV2\n")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV1\nring zmod:6\nn 1\nA\n0\nB\n0\n")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV1\nring zmod:7\nn 1\nA\n1 2\nB\n0\n")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV1\nring zmod:7\nn 1\nA\n1\nB\n0\npromise 9\n")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV1\nring zmod:7\nn 1\nA\n1\nB\n0\njunk\n")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV1\nring zmod:7\nn 1\nA\n1\nB\n0")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_instance("MMV1\nring gf:2:2\nn 1\nA\n1\nB\n0:1\n")), Error);
  CHECK_THROWS_AS(static_cast<void>(parse_kinstance("MMV1\nring zmod:7\nk 1\nn 1\nA1\n1\n")), Error);
}

TEST_CASE("failure-rate estimation counts no false accepts for exact verifiers") {
  PlantedConfig cfg;
  cfg.ring = RingSpec::parse_token("int:40");
  cfg.n = 8;
  cfg.s = 2;
  cfg.seed = 99;
  VerifierOptions opt;
  opt.t = 2;
  BenchRow exact_row = estimate_failure_rate("exact", cfg, opt, 300, 1);
  CHECK(exact_row.false_accepts == 0);
  CHECK(exact_row.random_bits_mean == 0);
  BenchRow det_row = estimate_failure_rate("det-sparse", cfg, opt, 300, 1);
  CHECK(det_row.false_accepts == 0);
  CHECK(det_row.random_bits_mean == 0);
}

TEST_CASE("failure-rate estimation respects the binomial band for rand-sparse") {
  PlantedConfig cfg;
  cfg.ring = RingSpec::parse_token("int:128");
  cfg.n = 16;
  cfg.s = 16;
  cfg.seed = 1234;
  VerifierOptions opt;
  opt.t = 16;
  opt.eps = Rational{1, 2};
  BenchRow row = estimate_failure_rate("rand-sparse", cfg, opt, 1000, 1);
  CHECK(double(row.false_accepts) <= 1000 * (0.5 + 3 * 0.0159));
  CHECK(row.random_bits_mean == 3.0);  // k' = 8 for every trial
}

TEST_CASE("failure-rate estimation is thread-count independent") {
  PlantedConfig cfg;
  cfg.ring = RingSpec::parse_token("zmod:101");
  cfg.n = 12;
  cfg.s = 3;
  cfg.seed = 77;
  VerifierOptions opt;
  opt.t = 3;
  opt.eps = Rational{1, 4};
  for (const char* alg : {"rand-sparse", "freivalds", "det-sparse"}) {
    BenchRow seq = estimate_failure_rate(alg, cfg, opt, 200, 1);
    BenchRow par = estimate_failure_rate(alg, cfg, opt, 200, 4);
    CHECK(seq.false_accepts == par.false_accepts);
    CHECK(seq.random_bits_mean == par.random_bits_mean);
    CHECK(seq.elem_ops_mean == par.elem_ops_mean);
  }
}

TEST_CASE("bench grids expand deterministically") {
  std::string config = R"({
    "ring": "int:30",
    "seed": 5,
    "trials": 20,
    "algs": ["det-sparse", "rand-sparse"],
    "ns": [8, 16],
    "ss": [2],
    "epss": ["1/4"]
  })";
  std::string csv = bench_run(config);
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == bench_csv_header());
  CHECK(rows[1].rfind("det-sparse,int:30,8,2,-,20,0,0,", 0) == 0);
  CHECK(rows[2].rfind("det-sparse,int:30,16,2,-,20,0,0,", 0) == 0);
  CHECK(rows[3].rfind("rand-sparse,int:30,8,2,1/4,20,", 0) == 0);

  // two runs agree byte for byte once the wall column is stripped
  CHECK(strip_wall_column(bench_run(config)) == strip_wall_column(csv));

  std::string empty = bench_run(R"({"ring":"int:30","seed":1,"trials":5,"algs":[],"ns":[4],"ss":[1]})");
  CHECK(empty == bench_csv_header() + "\n");

  CHECK_THROWS_AS(static_cast<void>(bench_run("{")), Error);
  CHECK_THROWS_AS(static_cast<void>(bench_run(R"({"ring":"int:30"})")), Error);
  CHECK_THROWS_AS(static_cast<void>(bench_run(
                      R"({"ring":"int:30","seed":1,"trials":5,"algs":["mps"],"ns":[4],"ss":[1]})")),
                  Error);
  CHECK_THROWS_AS(static_cast<void>(bench_run(
                      R"({"ring":"int:30","seed":1,"trials":5,"algs":["exact"],"ns":[4],"ss":[0]})")),
                  Error);
}

TEST_CASE("bench output is identical across MMV_THREADS settings") {
  std::string config = R"({
    "ring": "zmod:101",
    "seed": 11,
    "trials": 30,
    "algs": ["rand-sparse", "freivalds"],
    "ns": [8],
    "ss": [2],
    "epss": ["1/2"]
  })";
  setenv("MMV_THREADS", "1", 1);
  std::string one = bench_run(config);
  setenv("MMV_THREADS", "4", 1);
  std::string four = bench_run(config);
  unsetenv("MMV_THREADS");
  CHECK(strip_wall_column(one) == strip_wall_column(four));
}

TEST_CASE("trial seeds are spread by the mixing permutation") {
  CHECK(trial_seed(5, 0) != trial_seed(5, 1));
  CHECK(trial_seed(5, 1) == (5 ^ mix64(1)));
  CHECK(mix64(0) != 0);
}

TEST_SUITE_END();

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "mmv/reduce.hpp"
#include "mmv/verify.hpp"

namespace mmv {

/// Synthetic instance with |AB - C|_0 == s exactly: A and B are drawn from the
/// seeded bit stream, C starts as the exact product and s distinct positions
/// are perturbed by non-zero deltas. The instance records promise_t = s.
struct PlantedConfig {
  RingSpec ring;
  size_t n = 0;
  uint64_t s = 0;
  uint64_t seed = 0;
};

Instance gen_planted(const PlantedConfig& cfg);

// ---- instance files ----
//
//   MMV1
//   ring <zmod:p | gf:p:e | int:M>
//   [k <count>]          (product-chain files only)
//   n <size>
//   A                    (A1..Ak for product chains)
//   <n rows of n space-separated canonical values>
//   B
//   ...
//   [C]                  (omitted for AB = 0 / chain-product-zero form)
//   [promise <t>]
//
// Extension-field entries are colon-joined coefficient lists (c0:c1:...).
// Parsing is strict: every value must be canonical for the declared ring.

Instance parse_instance(const std::string& bytes);
std::string write_instance(const Instance& inst);

KInstance parse_kinstance(const std::string& bytes);
std::string write_kinstance(const KInstance& kinst);

/// A bare matrix file (header + ring + n + single block A); used as the
/// vector-list input of the pairwise-orthogonality reduction.
Matrix parse_single_matrix(const std::string& bytes);
std::string write_single_matrix(const Matrix& m);

/// True when the bytes carry a `k <count>` line (product-chain file).
bool looks_like_kinstance(const std::string& bytes);

// ---- benchmark / failure-rate harness ----

struct BenchRow {
  std::string alg;
  std::string ring_token;
  size_t n = 0;
  uint64_t t = 0;
  std::string eps = "-";
  uint64_t trials = 0;
  uint64_t false_accepts = 0;
  double random_bits_mean = 0;
  double elem_ops_mean = 0;
  double wall_nanos_mean = 0;
};

std::string bench_csv_header();
std::string bench_row_csv(const BenchRow& row);

/// Runs `trials` independent seeded trials of `alg` on fresh planted instances
/// (per-trial seed = cfg.seed ^ mix64(trial)); counts Equal verdicts against
/// the NotEqual ground truth. Requires cfg.s >= 1. Deterministic in everything
/// but the wall-time column regardless of `threads`.
BenchRow estimate_failure_rate(const std::string& alg, const PlantedConfig& cfg,
                               const VerifierOptions& opt, uint64_t trials, unsigned threads);

/// Full grid run from a JSON config; returns the CSV text.
std::string bench_run(const std::string& config_json);

/// Thread count: `requested` if non-zero, else MMV_THREADS, else hardware.
unsigned resolve_threads(unsigned requested = 0);

uint64_t trial_seed(uint64_t master, uint64_t trial_index);

/// Static partition of [0, count) across up to `threads` workers.
void parallel_for(uint64_t count, unsigned threads, const std::function<void(uint64_t)>& body);

}  // namespace mmv

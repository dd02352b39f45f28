#pragma once

#include <string>
#include <vector>

#include "mgp/config.hpp"

namespace mgp {

// One model fitted to one toy realization. RMSE is against the noiseless
// test function; `weights` is empty for the GP baselines.
struct BenchRun {
  Regime regime = Regime::kSparse;
  int realization = 0;
  std::string model;
  double rmse = 0.0;
  std::vector<double> weights;
  bool converged = true;
  bool failed = false;
  std::string error;
};

struct BenchRow {
  Regime regime = Regime::kSparse;
  std::string model;
  int runs = 0;
  int failures = 0;
  int not_converged = 0;
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  // Per kernel: 25%, 50% and 75% quantiles of the normalized weight.
  std::vector<double> w_q25, w_q50, w_q75;
};

struct BenchResult {
  std::vector<BenchRun> runs;
  std::vector<BenchRow> rows;
  int n_kernels = 0;
};

// Model labels: preset names, then "gp-equal" and "gp-single-<k>" (1-based)
// when baselines are on.
std::vector<std::string> bench_models(const BenchConfig& config);

// Realization i of every regime uses the toy seed derive_seed(config.seed, i),
// so regimes share their random draws. Realizations run on a worker pool;
// results are independent of the thread count.
BenchResult run_benchmark(const BenchConfig& config);

// Linear-interpolated sample quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q);

std::string bench_summary_csv(const BenchResult& result);
std::string bench_runs_csv(const BenchResult& result);
std::string bench_table(const BenchResult& result);

}  // namespace mgp

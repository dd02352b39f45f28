#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgp/gig.hpp"
#include "mgp/kernels.hpp"
#include "mgp/model.hpp"
#include "mgp/toy_data.hpp"

namespace mgp {

// Kernel declaration with its feature view given by column names; empty
// means every feature column.
struct KernelConfig {
  KernelFamily family = KernelFamily::kSquaredExponential;
  double lengthscale = 1.0;
  double amplitude = 1.0;
  std::vector<std::string> columns;

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

struct RunConfig {
  Task task = Task::kRegression;
  std::vector<KernelConfig> kernels;
  FamilyPreset preset = FamilyPreset::kFree;
  GigParams prior = default_prior(FamilyPreset::kFree);
  double tau = 0.0;  // <= 0: 1/var(y) for regression, 1 for classification
  FitConfig fit;
  std::string target = "y";
  std::vector<std::string> features;  // empty: all columns except target
  std::uint64_t seed = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct BenchConfig {
  std::vector<Regime> regimes{Regime::kSparse, Regime::kSemi, Regime::kDense};
  std::vector<FamilyPreset> presets{FamilyPreset::kStudentT, FamilyPreset::kLaplace,
                                    FamilyPreset::kGammaVariance};
  int realizations = 20;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
  bool baselines = true;
  ToyConfig toy;    // active and seed are set per regime and realization
  FitConfig fit;

  friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

// All parsers reject unknown keys and throw ConfigError with the JSON path
// of the offending entry.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);

ToyConfig toy_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ToyConfig& config);

BenchConfig bench_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchConfig& config);

FitConfig fit_config_from_json(const nlohmann::json& j, const std::string& path,
                               FitConfig base = {});
nlohmann::json to_json(const FitConfig& config);

// Parses a file; syntax errors become ConfigError.
nlohmann::json read_json_file(const std::string& path);

// Column indices of each kernel's view within `feature_names`.
std::vector<KernelSpec> resolve_kernels(const std::vector<KernelConfig>& kernels,
                                        const std::vector<std::string>& feature_names);

Hyperparams hyperparams(const RunConfig& config);

}  // namespace mgp

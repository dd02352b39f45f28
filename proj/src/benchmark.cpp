#include "mgp/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include "mgp/baseline.hpp"
#include "mgp/dataset.hpp"
#include "mgp/errors.hpp"
#include "mgp/predict.hpp"
#include "mgp/regression.hpp"
#include "mgp/rng.hpp"

namespace mgp {
namespace {

double rmse(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

std::vector<BenchRun> run_realization(const BenchConfig& config, Regime regime, int i) {
  ToyConfig toy = config.toy;
  toy.active = regime_active(regime, toy.n_kernels);
  toy.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
  const ToyDataset d = generate_toy(toy);
  const std::vector<KernelSpec> specs = toy_kernel_specs(toy);

  std::vector<BenchRun> out;
  for (FamilyPreset preset : config.presets) {
    BenchRun r;
    r.regime = regime;
    r.realization = i;
    r.model = preset_name(preset);
    try {
      const Hyperparams hyper{default_prior(preset), 0.0, preset};
      const FittedModel m = fit(d.x_train, d.y_train, specs, hyper, config.fit);
      r.rmse = rmse(predictive(m, d.x_test).mean, d.f_test);
      const Eigen::VectorXd w = m.normalized_weights();
      r.weights.assign(w.data(), w.data() + w.size());
      r.converged = m.report.converged;
    } catch (const std::exception& e) {
      r.failed = true;
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  if (config.baselines) {
    auto baseline = [&](const std::string& name, const std::vector<KernelSpec>& ks) {
      BenchRun r;
      r.regime = regime;
      r.realization = i;
      r.model = name;
      try {
        const BaselineGp gp = BaselineGp::fit(ks, d.x_train, d.y_train);
        r.rmse = rmse(gp.predict_mean(d.x_test), d.f_test);
      } catch (const std::exception& e) {
        r.failed = true;
        r.error = e.what();
      }
      out.push_back(std::move(r));
    };
    baseline("gp-equal", specs);
    for (std::size_t p = 0; p < specs.size(); ++p) {
      baseline("gp-single-" + std::to_string(p + 1), {specs[p]});
    }
  }
  return out;
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::vector<std::string> bench_models(const BenchConfig& config) {
  std::vector<std::string> models;
  for (FamilyPreset p : config.presets) models.emplace_back(preset_name(p));
  if (config.baselines) {
    models.emplace_back("gp-equal");
    for (int p = 0; p < config.toy.n_kernels; ++p) {
      models.push_back("gp-single-" + std::to_string(p + 1));
    }
  }
  return models;
}

double quantile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) return NAN;
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

BenchResult run_benchmark(const BenchConfig& config) {
  validate_toy(config.toy);
  const int n_jobs = static_cast<int>(config.regimes.size()) * config.realizations;
  std::vector<std::vector<BenchRun>> slots(static_cast<std::size_t>(n_jobs));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int job = next++; job < n_jobs; job = next++) {
      const Regime regime = config.regimes[static_cast<std::size_t>(job / config.realizations)];
      slots[static_cast<std::size_t>(job)] =
          run_realization(config, regime, job % config.realizations);
    }
  };
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(n_jobs, 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchResult result;
  result.n_kernels = config.toy.n_kernels;
  for (auto& s : slots) {
    for (auto& r : s) result.runs.push_back(std::move(r));
  }

  const auto models = bench_models(config);
  for (Regime regime : config.regimes) {
    for (const auto& model : models) {
      BenchRow row;
      row.regime = regime;
      row.model = model;
      std::vector<double> errs;
      std::vector<std::vector<double>> w(static_cast<std::size_t>(result.n_kernels));
      for (const auto& r : result.runs) {
        if (r.regime != regime || r.model != model) continue;
        ++row.runs;
        if (r.failed) {
          ++row.failures;
          continue;
        }
        if (!r.converged) ++row.not_converged;
        errs.push_back(r.rmse);
        for (std::size_t p = 0; p < r.weights.size() && p < w.size(); ++p) {
          w[p].push_back(r.weights[p]);
        }
      }
      if (!errs.empty()) {
        double sum = 0.0;
        for (double e : errs) sum += e;
        row.rmse_mean = sum / static_cast<double>(errs.size());
        double ss = 0.0;
        for (double e : errs) ss += (e - row.rmse_mean) * (e - row.rmse_mean);
        row.rmse_std = errs.size() > 1 ? std::sqrt(ss / static_cast<double>(errs.size() - 1)) : 0.0;
      } else {
        row.rmse_mean = row.rmse_std = NAN;
      }
      if (!w[0].empty()) {
        for (auto& v : w) {
          std::sort(v.begin(), v.end());
          row.w_q25.push_back(quantile_sorted(v, 0.25));
          row.w_q50.push_back(quantile_sorted(v, 0.50));
          row.w_q75.push_back(quantile_sorted(v, 0.75));
        }
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string bench_summary_csv(const BenchResult& res) {
  std::string out = "regime,model,runs,failures,not_converged,rmse_mean,rmse_std";
  for (int p = 1; p <= res.n_kernels; ++p) {
    const std::string k = std::to_string(p);
    out += ",w" + k + "_q25,w" + k + "_q50,w" + k + "_q75";
  }
  out += '\n';
  for (const auto& r : res.rows) {
    out += std::string(regime_name(r.regime)) + ',' + r.model + ',' + std::to_string(r.runs) +
           ',' + std::to_string(r.failures) + ',' + std::to_string(r.not_converged) + ',' +
           format_double(r.rmse_mean) + ',' + format_double(r.rmse_std);
    for (int p = 0; p < res.n_kernels; ++p) {
      if (r.w_q50.empty()) {
        out += ",,,";
      } else {
        out += ',' + format_double(r.w_q25[p]) + ',' + format_double(r.w_q50[p]) + ',' +
               format_double(r.w_q75[p]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string bench_runs_csv(const BenchResult& res) {
  std::string out = "regime,realization,model,failed,converged,rmse";
  for (int p = 1; p <= res.n_kernels; ++p) out += ",w" + std::to_string(p);
  out += '\n';
  for (const auto& r : res.runs) {
    out += std::string(regime_name(r.regime)) + ',' + std::to_string(r.realization) + ',' +
           r.model + ',' + (r.failed ? "1" : "0") + ',' + (r.converged ? "1" : "0") + ',' +
           (r.failed ? std::string() : format_double(r.rmse));
    for (int p = 0; p < res.n_kernels; ++p) {
      out += ',';
      if (static_cast<std::size_t>(p) < r.weights.size()) out += format_double(r.weights[p]);
    }
    out += '\n';
  }
  return out;
}

std::string bench_table(const BenchResult& res) {
  std::vector<Regime> regimes;
  std::vector<std::string> models;
  for (const auto& r : res.rows) {
    if (std::find(regimes.begin(), regimes.end(), r.regime) == regimes.end()) {
      regimes.push_back(r.regime);
    }
    if (std::find(models.begin(), models.end(), r.model) == models.end()) {
      models.push_back(r.model);
    }
  }
  std::map<std::pair<std::string, int>, const BenchRow*> cell;
  for (const auto& r : res.rows) cell[{r.model, static_cast<int>(r.regime)}] = &r;

  std::string out = "RMSE (mean +- std over realizations)\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-16s", "model");
  out += line;
  for (Regime g : regimes) {
    std::snprintf(line, sizeof line, " %22s", std::string(regime_name(g)).c_str());
    out += line;
  }
  out += '\n';
  for (const auto& m : models) {
    std::snprintf(line, sizeof line, "%-16s", m.c_str());
    out += line;
    for (Regime g : regimes) {
      const BenchRow* r = cell.at({m, static_cast<int>(g)});
      std::string v = fmt(r->rmse_mean, "%.4f") + " +- " + fmt(r->rmse_std, "%.4f");
      if (r->failures > 0) v += " (" + std::to_string(r->failures) + " failed)";
      std::snprintf(line, sizeof line, " %22s", v.c_str());
      out += line;
    }
    out += '\n';
  }
  out += "\nMedian normalized weight per kernel\n";
  for (const auto& r : res.rows) {
    if (r.w_q50.empty()) continue;
    std::snprintf(line, sizeof line, "%-7s %-16s", std::string(regime_name(r.regime)).c_str(),
                  r.model.c_str());
    out += line;
    for (double w : r.w_q50) out += " " + fmt(w, "%.3f");
    out += '\n';
  }
  return out;
}

}  // namespace mgp

// mgp: generate toy data, fit, predict, evaluate and benchmark MGP models.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mgp/benchmark.hpp"
#include "mgp/classification.hpp"
#include "mgp/config.hpp"
#include "mgp/dataset.hpp"
#include "mgp/errors.hpp"
#include "mgp/model_io.hpp"
#include "mgp/predict.hpp"
#include "mgp/regression.hpp"
#include "mgp/special_functions.hpp"
#include "mgp/toy_data.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kData = 3, kNumerical = 4, kNotConverged = 5 };

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
  auto* opt = cmd->add_option("--config,-c", c.config, "JSON configuration file");
  if (config_required) opt->required();
  cmd->add_option("--seed", c.seed, "Seed overriding the configuration");
  cmd->add_option("--out,-o", c.out, "Output path (or prefix for generate)")->required();
  cmd->add_flag("--verbose,-v", c.verbose, "Print progress and reports");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mgp::DataError("cannot write " + path);
  out << text;
}

int cmd_generate(const Common& c, const std::string& regime) {
  mgp::ToyConfig toy;
  if (!c.config.empty()) toy = mgp::toy_config_from_json(mgp::read_json_file(c.config));
  if (!regime.empty()) toy.active = mgp::regime_active(mgp::parse_regime(regime), toy.n_kernels);
  if (c.seed) toy.seed = *c.seed;
  const mgp::ToyDataset d = mgp::generate_toy(toy);

  const auto names = mgp::toy_feature_names(toy);
  const Eigen::Index dim = d.x_train.cols();
  mgp::Table train{names, Eigen::MatrixXd(d.x_train.rows(), dim + 1)};
  train.header.push_back("y");
  train.values << d.x_train, d.y_train;
  mgp::Table test{names, Eigen::MatrixXd(d.x_test.rows(), dim + 2)};
  test.header.insert(test.header.end(), {"y", "f"});
  test.values << d.x_test, d.y_test, d.f_test;
  mgp::write_csv(c.out + "_train.csv", train);
  mgp::write_csv(c.out + "_test.csv", test);

  nlohmann::json truth = {{"config", mgp::to_json(toy)},
                          {"lengthscales", mgp::toy_lengthscales(toy)}};
  nlohmann::json comps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < d.components.rows(); ++i) {
    comps.push_back(std::vector<double>(d.components.row(i).data(),
                                        d.components.row(i).data() + d.components.cols()));
  }
  // Rows follow the train file, then the test file.
  truth["components"] = comps;
  write_text(c.out + "_truth.json", truth.dump(1) + "\n");
  if (c.verbose) {
    std::cerr << "wrote " << c.out << "_train.csv, " << c.out << "_test.csv, " << c.out
              << "_truth.json\n";
  }
  return kOk;
}

void print_report(const nlohmann::json& r) {
  std::printf("task %s, preset %s\n", r["task"].get<std::string>().c_str(),
              r["preset"].get<std::string>().c_str());
  std::printf("iterations %d, converged %s, ELBO %.10g\n", r["iterations"].get<int>(),
              r["converged"].get<bool>() ? "yes" : "no", r["elbo"].get<double>());
  const auto& h = r["hyper"];
  std::printf("omega %.6g  chi %.6g  phi %.6g  tau %.6g\n", h["omega"].get<double>(),
              h["chi"].get<double>(), h["phi"].get<double>(), h["tau"].get<double>());
  for (const auto& [k, v] : r["pinned"].items()) {
    std::printf("%s pinned at %g by the preset\n", k.c_str(), v.get<double>());
  }
  std::printf("normalized weights:");
  for (const auto& w : r["weights"]) std::printf(" %.4f", w.get<double>());
  std::printf("\n");
  for (const auto& w : r["warnings"]) std::printf("warning: %s\n", w.get<std::string>().c_str());
}

int cmd_fit(const Common& c, const std::string& data, std::string report_path) {
  mgp::RunConfig rc = mgp::run_config_from_json(mgp::read_json_file(c.config));
  if (c.seed) rc.seed = *c.seed;
  const mgp::Dataset ds = mgp::to_dataset(mgp::read_csv(data), rc.target, rc.features);
  const auto specs = mgp::resolve_kernels(rc.kernels, ds.feature_names);
  const mgp::FittedModel m =
      rc.task == mgp::Task::kRegression
          ? mgp::fit(ds.x, ds.y, specs, mgp::hyperparams(rc), rc.fit)
          : mgp::fit_classifier(ds.x, ds.y, specs, mgp::hyperparams(rc), rc.fit);
  mgp::save_model(c.out, m, {ds.feature_names, rc.target});
  const nlohmann::json report = mgp::fit_report_json(m);
  if (report_path.empty()) report_path = c.out + ".report.json";
  write_text(report_path, report.dump(1) + "\n");
  if (c.verbose) print_report(report);
  return m.report.converged ? kOk : kNotConverged;
}

int cmd_predict(const Common& c, const std::string& model_path, const std::string& data) {
  const mgp::LoadedModel lm = mgp::load_model(model_path);
  const Eigen::MatrixXd q = mgp::select_columns(mgp::read_csv(data), lm.meta.feature_names);
  const mgp::PredictiveDistribution pd = mgp::predictive(lm.model, q);
  mgp::Table out;
  if (lm.model.task == mgp::Task::kRegression) {
    out.header = {"mean", "latent_var", "total_var"};
    out.values.resize(q.rows(), 3);
    out.values << pd.mean, pd.latent_var, pd.total_var();
  } else {
    out.header = {"prob_pos", "label"};
    out.values.resize(q.rows(), 2);
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      out.values(i, 0) = mgp::std_normal_cdf(pd.mean[i] / std::sqrt(pd.total_var()[i]));
      out.values(i, 1) = pd.mean[i] < 0.0 ? -1.0 : 1.0;
    }
  }
  mgp::write_csv(c.out, out);
  if (pd.clamped > 0) {
    std::cerr << "warning: latent variance clamped at 0 for " << pd.clamped << " queries\n";
  }
  return kOk;
}

int cmd_evaluate(const Common& c, const std::string& model_path, const std::string& data,
                 std::string target) {
  const mgp::LoadedModel lm = mgp::load_model(model_path);
  const mgp::Table t = mgp::read_csv(data);
  if (target.empty()) target = lm.meta.target;
  const Eigen::MatrixXd q = mgp::select_columns(t, lm.meta.feature_names);
  const Eigen::VectorXd y = t.values.col(t.column(target));
  const mgp::PredictiveDistribution pd = mgp::predictive(lm.model, q);
  const auto n = static_cast<double>(y.size());
  nlohmann::json metrics = {{"task", mgp::task_name(lm.model.task)}, {"n", y.size()},
                            {"target", target}};
  if (lm.model.task == mgp::Task::kRegression) {
    const Eigen::VectorXd v = pd.total_var();
    double lpd = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double r = y[i] - pd.mean[i];
      lpd += -0.5 * (std::log(2.0 * M_PI * v[i]) + r * r / v[i]);
    }
    metrics["rmse"] = std::sqrt((y - pd.mean).squaredNorm() / n);
    metrics["mean_log_pred_density"] = lpd / n;
  } else {
    mgp::check_labels(y);
    double correct = 0.0;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double a = pd.mean[i] / std::sqrt(pd.total_var()[i]);
      correct += ((pd.mean[i] < 0.0 ? -1.0 : 1.0) == y[i]) ? 1.0 : 0.0;
      ll += mgp::log_std_normal_cdf(y[i] * a);
    }
    metrics["accuracy"] = correct / n;
    metrics["mean_log_likelihood"] = ll / n;
  }
  write_text(c.out, metrics.dump(1) + "\n");
  if (c.verbose) std::cout << metrics.dump(1) << "\n";
  return kOk;
}

int cmd_benchmark(const Common& c, std::optional<int> threads, const std::string& runs_out) {
  mgp::BenchConfig bc = mgp::bench_config_from_json(mgp::read_json_file(c.config));
  if (c.seed) bc.seed = *c.seed;
  if (threads) bc.threads = *threads;
  const mgp::BenchResult res = mgp::run_benchmark(bc);
  write_text(c.out, mgp::bench_summary_csv(res));
  if (!runs_out.empty()) write_text(runs_out, mgp::bench_runs_csv(res));
  std::cout << mgp::bench_table(res);
  if (c.verbose) {
    for (const auto& r : res.runs) {
      if (r.failed) {
        std::cerr << mgp::regime_name(r.regime) << " #" << r.realization << " " << r.model
                  << ": " << r.error << "\n";
      }
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple Gaussian process regression and classification"};
  app.require_subcommand(1);

  Common gen_c, fit_c, pred_c, eval_c, bench_c;
  std::string regime, fit_data, report_path, pred_model, pred_data, eval_model, eval_data,
      eval_target, runs_out;
  std::optional<int> threads;

  auto* gen = app.add_subcommand("generate", "Generate a toy regression dataset");
  add_common(gen, gen_c, false);
  gen->add_option("--regime", regime, "sparse | semi | dense")
      ->check(CLI::IsMember({"sparse", "semi", "dense"}));

  auto* fit = app.add_subcommand("fit", "Fit a model to a CSV file");
  add_common(fit, fit_c, true);
  fit->add_option("--data,-d", fit_data, "Training CSV")->required();
  fit->add_option("--report", report_path, "Fit report path (default <out>.report.json)");

  auto* pred = app.add_subcommand("predict", "Predict at the rows of a CSV file");
  add_common(pred, pred_c, false);
  pred->add_option("--model,-m", pred_model, "Model file")->required();
  pred->add_option("--data,-d", pred_data, "Query CSV")->required();

  auto* eval = app.add_subcommand("evaluate", "Score a model on a labelled CSV file");
  add_common(eval, eval_c, false);
  eval->add_option("--model,-m", eval_model, "Model file")->required();
  eval->add_option("--data,-d", eval_data, "Test CSV")->required();
  eval->add_option("--target", eval_target, "Column to score against (default: model target)");

  auto* bench = app.add_subcommand("benchmark", "Toy benchmark over regimes and presets");
  add_common(bench, bench_c, true);
  bench->add_option("--threads", threads, "Worker threads (0: all cores)");
  bench->add_option("--runs-out", runs_out, "Per-realization CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*gen) return cmd_generate(gen_c, regime);
    if (*fit) return cmd_fit(fit_c, fit_data, report_path);
    if (*pred) return cmd_predict(pred_c, pred_model, pred_data);
    if (*eval) return cmd_evaluate(eval_c, eval_model, eval_data, eval_target);
    if (*bench) return cmd_benchmark(bench_c, threads, runs_out);
  } catch (const mgp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const mgp::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const mgp::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const mgp::DomainError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}

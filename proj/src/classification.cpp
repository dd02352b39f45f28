#include "mgp/classification.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mgp/detail/hyper_update.hpp"
#include "mgp/errors.hpp"
#include "mgp/predict.hpp"
#include "mgp/regression.hpp"
#include "mgp/special_functions.hpp"
#include "mgp/trunc_gauss.hpp"

namespace mgp {
namespace {

// -E_q[ln q(y)] summed over sites.
double q_y_entropy(const LatentYPosterior& q) {
  double h = 0.0;
  const double half_log = 0.5 * std::log(2.0 * std::numbers::pi * q.lambda);
  for (Eigen::Index n = 0; n < q.nu.size(); ++n) {
    const double dev = q.post_mean[n] - q.nu[n];
    h += half_log + q.log_mass[n] + (q.post_var[n] + dev * dev) / (2.0 * q.lambda);
  }
  return h;
}

}  // namespace

std::string check_labels(const Eigen::VectorXd& labels) {
  if (labels.size() == 0) throw DataError("no labels");
  int pos = 0;
  for (Eigen::Index n = 0; n < labels.size(); ++n) {
    if (labels[n] == 1.0) {
      ++pos;
    } else if (labels[n] != -1.0) {
      std::ostringstream msg;
      msg << "label at row " << n << " is " << labels[n] << "; expected -1 or +1";
      throw DataError(msg.str());
    }
  }
  if (pos == 0 || pos == labels.size()) return "labels contain a single class";
  return {};
}

LatentYPosterior q_y_from_nu(const Eigen::VectorXd& nu, const Eigen::VectorXd& labels,
                             double tau) {
  if (nu.size() != labels.size()) throw DataError("nu and labels differ in length");
  LatentYPosterior q;
  q.nu = nu;
  q.lambda = 1.0 / tau;
  const Eigen::Index n = nu.size();
  q.post_mean.resize(n);
  q.post_var.resize(n);
  q.log_mass.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const TruncatedGaussian tg{nu[i], q.lambda,
                               labels[i] > 0.0 ? TruncationSide::kPositive
                                               : TruncationSide::kNegative};
    const TruncatedMoments m = trunc_moments(tg);
    q.post_mean[i] = m.mean;
    q.post_var[i] = m.var;
    q.log_mass[i] = trunc_log_mass(tg);
  }
  return q;
}

LatentYPosterior update_q_y(const VariationalState& state, const Eigen::VectorXd& labels,
                            double tau) {
  return q_y_from_nu(latent_sum_mean(state.qf), labels, tau);
}

double classification_elbo(const VariationalState& state, const GramSet& grams,
                           const LatentYPosterior& q_y, const Hyperparams& hyper) {
  const double shared = elbo_terms(state, grams, q_y.post_mean, q_y.post_var, hyper).total();
  const double h = q_y_entropy(q_y);
  if (!std::isfinite(h)) throw NumericalError("ELBO term 'q_y_entropy' is not finite");
  return shared + h;
}

FittedModel fit_classifier_grams(GramSet grams, const Eigen::VectorXd& labels,
                                 const Hyperparams& hyper_init, const FitConfig& config) {
  if (labels.size() != grams.n()) {
    std::ostringstream msg;
    msg << "got " << labels.size() << " labels for " << grams.n() << " inputs";
    throw DataError(msg.str());
  }
  const std::string label_warning = check_labels(labels);
  check_preset(hyper_init.preset, hyper_init.prior);

  FittedModel model;
  model.task = Task::kBinaryClassification;
  model.config = config;
  model.observed = labels;
  model.hyper = hyper_init;
  if (!(model.hyper.tau > 0.0)) model.hyper.tau = 1.0;
  model.grams = std::move(grams);
  const GramSet& g = model.grams;
  VariationalState& state = model.state;
  Hyperparams& hyper = model.hyper;
  FitReport& report = model.report;
  LatentYPosterior& q_y = model.q_y;
  if (!label_warning.empty()) report.warnings.push_back(label_warning);

  auto record = [&](UpdateKind kind) {
    state.elbo = classification_elbo(state, g, q_y, hyper);
    report.updates.push_back({kind, state.elbo});
  };

  state = init_state(g.size());
  q_y = q_y_from_nu(Eigen::VectorXd::Zero(labels.size()), labels, hyper.tau);
  update_q_f(state, g, q_y.post_mean, hyper.tau);
  update_q_gamma(state, g, hyper.prior);
  record(UpdateKind::kQgamma);

  double previous = state.elbo;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    q_y = update_q_y(state, labels, hyper.tau);
    record(UpdateKind::kQy);
    update_q_f(state, g, q_y.post_mean, hyper.tau);
    record(UpdateKind::kQf);
    if (config.learn_gamma) {
      update_q_gamma(state, g, hyper.prior);
      record(UpdateKind::kQgamma);
    }
    if (config.learn_tau) {
      const TauUpdate t = update_tau(state, q_y.post_mean, q_y.post_var, config.tau_max);
      hyper.tau = t.tau;
      report.tau_clamped = report.tau_clamped || t.clamped;
      record(UpdateKind::kTau);
    }
    if (config.hyper_stride > 0 && (iter + 1) % config.hyper_stride == 0) {
      detail::update_hypers(hyper, state, report, record);
    }
    report.elbo_trace.push_back(state.elbo);
    report.iterations = iter + 1;
    if (std::abs(state.elbo - previous) <= config.tol * std::abs(state.elbo)) {
      report.converged = true;
      break;
    }
    previous = state.elbo;
  }
  q_y = update_q_y(state, labels, hyper.tau);
  record(UpdateKind::kQy);
  update_q_f(state, g, q_y.post_mean, hyper.tau);
  record(UpdateKind::kQf);
  if (!report.converged) {
    report.warnings.push_back("did not converge within " + std::to_string(config.max_iters) +
                              " iterations");
  }
  return model;
}

FittedModel fit_classifier(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& labels,
                           const std::vector<KernelSpec>& specs, const Hyperparams& hyper_init,
                           const FitConfig& config) {
  if (inputs.rows() != labels.size()) {
    std::ostringstream msg;
    msg << "got " << inputs.rows() << " input rows and " << labels.size() << " labels";
    throw DataError(msg.str());
  }
  return fit_classifier_grams(build_gram_set(specs, inputs, config.jitter), labels, hyper_init,
                              config);
}

Eigen::VectorXd predict_class_prob(const FittedModel& model, const Eigen::MatrixXd& queries) {
  const PredictiveDistribution pd = predictive(model, queries);
  Eigen::VectorXd prob(pd.mean.size());
  for (Eigen::Index i = 0; i < prob.size(); ++i) {
    prob[i] = std_normal_cdf(pd.mean[i] / std::sqrt(pd.latent_var[i] + pd.noise_var));
  }
  return prob;
}

Eigen::VectorXd predict_labels(const FittedModel& model, const Eigen::MatrixXd& queries) {
  const PredictiveDistribution pd = predictive(model, queries);
  return pd.mean.unaryExpr([](double m) { return m < 0.0 ? -1.0 : 1.0; });
}

}  // namespace mgp

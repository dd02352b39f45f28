#include "mgp/regression.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "mgp/detail/hyper_update.hpp"
#include "mgp/errors.hpp"
#include "mgp/special_functions.hpp"

namespace mgp {
namespace {

GigMoments stored_moments(const VariationalState& s, std::size_t p) {
  GigMoments m;
  m.mean = s.gamma_mean[p];
  if (std::isfinite(s.gamma_mean_inv[p])) m.mean_inv = s.gamma_mean_inv[p];
  m.mean_log = s.gamma_mean_log[p];
  return m;
}

void check_finite(double value, const char* term) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "ELBO term '" << term << "' is not finite (" << value << ")";
    throw NumericalError(msg.str());
  }
}

double variance(const Eigen::VectorXd& y) {
  const double mean = y.mean();
  return (y.array() - mean).square().sum() / static_cast<double>(y.size());
}

}  // namespace

std::string_view update_kind_name(UpdateKind kind) {
  switch (kind) {
    case UpdateKind::kQy:
      return "q_y";
    case UpdateKind::kQf:
      return "q_f";
    case UpdateKind::kQgamma:
      return "q_gamma";
    case UpdateKind::kTau:
      return "tau";
    case UpdateKind::kOmega:
      return "omega";
    case UpdateKind::kChi:
      return "chi";
    case UpdateKind::kPhi:
      return "phi";
  }
  return "?";
}

std::string_view task_name(Task task) {
  return task == Task::kRegression ? "regression" : "binary-classification";
}

Task parse_task(std::string_view name) {
  if (name == "regression") return Task::kRegression;
  if (name == "binary-classification" || name == "classification") {
    return Task::kBinaryClassification;
  }
  throw ConfigError("unknown task '" + std::string(name) +
                    "' (expected regression or classification)");
}

Eigen::VectorXd FittedModel::normalized_weights() const {
  const Eigen::VectorXd inv = state.gamma_mean.cwiseInverse();
  return inv / inv.sum();
}

VariationalState init_state(std::size_t num_kernels, double gamma_init, GammaMode mode) {
  VariationalState s;
  s.gamma_mode = mode;
  const auto p = static_cast<Eigen::Index>(num_kernels);
  s.gamma_mean = Eigen::VectorXd::Constant(p, gamma_init);
  s.gamma_mean_inv = Eigen::VectorXd::Constant(p, 1.0 / gamma_init);
  s.gamma_mean_log = Eigen::VectorXd::Constant(p, std::log(gamma_init));
  return s;
}

VariationalState fixed_gamma_state(const Eigen::VectorXd& gamma) {
  VariationalState s;
  s.gamma_mode = GammaMode::kFixed;
  s.gamma_mean = gamma;
  s.gamma_mean_inv = gamma.cwiseInverse();
  s.gamma_mean_log = gamma.array().log().matrix();
  return s;
}

void update_q_f(VariationalState& state, const GramSet& grams, const Eigen::VectorXd& targets,
                double tau) {
  const Eigen::Index n = grams.n();
  const std::size_t num = grams.size();
  if (targets.size() != n) throw DataError("target length does not match the Gram size");
  if (state.num_kernels() != num) throw DataError("state and Gram set disagree on kernel count");
  if (!(tau > 0.0)) throw DomainError("tau must be positive");

  QfState& qf = state.qf;
  qf.targets = targets;
  qf.gamma_mean = state.gamma_mean;
  qf.tau = tau;

  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) / tau;
  for (std::size_t p = 0; p < num; ++p) b += grams.mat(p) / qf.gamma_mean[p];
  qf.b_factor.compute(b);
  if (qf.b_factor.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "B failed to factorize for <gamma> = [" << qf.gamma_mean.transpose()
        << "], tau = " << tau;
    throw NumericalError(msg.str());
  }
  qf.log_det_b = 2.0 * qf.b_factor.matrixLLT().diagonal().array().log().sum();
  qf.b_inv = qf.b_factor.solve(Eigen::MatrixXd::Identity(n, n));
  qf.b_inv = 0.5 * (qf.b_inv + qf.b_inv.transpose()).eval();
  qf.alpha = qf.b_factor.solve(targets);

  qf.mu_blocks.resize(num);
  qf.trace_binv_k.resize(static_cast<Eigen::Index>(num));
  qf.alpha_k_alpha.resize(static_cast<Eigen::Index>(num));
  for (std::size_t p = 0; p < num; ++p) {
    const auto i = static_cast<Eigen::Index>(p);
    const Eigen::VectorXd k_alpha = grams.mat(p) * qf.alpha;
    qf.mu_blocks[p] = k_alpha / qf.gamma_mean[i];
    qf.alpha_k_alpha[i] = qf.alpha.dot(k_alpha);
    qf.trace_binv_k[i] = qf.b_inv.cwiseProduct(grams.mat(p)).sum();
  }
}

Eigen::VectorXd latent_sum_mean(const QfState& qf) {
  // sum_p mu_p = (B - I/tau) B^-1 y = y - alpha/tau
  return qf.targets - qf.alpha / qf.tau;
}

Eigen::VectorXd latent_sum_var(const QfState& qf) {
  // M Sigma M' = I/tau - B^-1/tau^2
  const double s = 1.0 / qf.tau;
  return (s - s * s * qf.b_inv.diagonal().array()).matrix();
}

Eigen::MatrixXd posterior_cov_block(const QfState& qf, const GramSet& grams, std::size_t p,
                                    std::size_t q) {
  const double gp = qf.gamma_mean[static_cast<Eigen::Index>(p)];
  const double gq = qf.gamma_mean[static_cast<Eigen::Index>(q)];
  Eigen::MatrixXd block = -(grams.mat(p) * qf.b_inv * grams.mat(q)) / (gp * gq);
  if (p == q) block += grams.mat(p) / gp;
  return block;
}

double expected_quad_form(std::size_t p, const VariationalState& state, const GramSet& grams) {
  const QfState& qf = state.qf;
  const auto i = static_cast<Eigen::Index>(p);
  const double g = qf.gamma_mean[i];
  const auto n = static_cast<double>(grams.n());
  // mu_p' K_p^-1 mu_p = alpha' K_p alpha / g^2 ; tr(K_p^-1 Sigma_pp) = N/g - tr(B^-1 K_p)/g^2
  const double mean_part = qf.alpha_k_alpha[i] / (g * g);
  const double trace_part = n / g - qf.trace_binv_k[i] / (g * g);
  const double value = mean_part + trace_part;
  const double scale = std::abs(mean_part) + n / g;
  if (value < -1e-8 * scale || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "expected quadratic form for kernel " << p << " is " << value
        << "; the Gram factorization or jitter is inadequate";
    throw NumericalError(msg.str());
  }
  return std::max(value, 0.0);
}

void update_q_gamma(VariationalState& state, const GramSet& grams, const GigParams& prior) {
  if (state.gamma_mode == GammaMode::kFixed) {
    throw DomainError("update_q_gamma called on a fixed-gamma state");
  }
  const std::size_t num = grams.size();
  const auto n = static_cast<double>(grams.n());
  state.gamma_post.resize(num);
  for (std::size_t p = 0; p < num; ++p) {
    const auto i = static_cast<Eigen::Index>(p);
    GigParams post{prior.omega + 0.5 * n, prior.chi, prior.phi + expected_quad_form(p, state, grams)};
    if (auto violation = validate(post)) {
      std::ostringstream msg;
      msg << "q(gamma) for kernel " << p << " is invalid: " << *violation;
      throw NumericalError(msg.str());
    }
    const GigMoments m = moments(post);
    if (!m.mean) throw NumericalError("q(gamma) mean diverges for kernel " + std::to_string(p));
    state.gamma_post[p] = post;
    state.gamma_mean[i] = *m.mean;
    state.gamma_mean_inv[i] = m.mean_inv ? *m.mean_inv : std::numeric_limits<double>::infinity();
    state.gamma_mean_log[i] = m.mean_log;
  }
}

TauUpdate update_tau(const VariationalState& state, const Eigen::VectorXd& target_mean,
                     const Eigen::VectorXd& target_var, double tau_max) {
  const Eigen::VectorXd resid = target_mean - latent_sum_mean(state.qf);
  const double expected_sq =
      target_var.sum() + resid.squaredNorm() + latent_sum_var(state.qf).sum();
  const double tau = static_cast<double>(target_mean.size()) / expected_sq;
  if (!(expected_sq > 0.0) || !std::isfinite(tau) || tau > tau_max) return {tau_max, true};
  return {tau, false};
}

TauUpdate update_tau(const VariationalState& state, const Eigen::VectorXd& y, double tau_max) {
  return update_tau(state, y, Eigen::VectorXd::Zero(y.size()), tau_max);
}

double expected_log_likelihood(const QfState& qf, double tau, const Eigen::VectorXd& target_mean,
                               const Eigen::VectorXd& target_var) {
  const auto n = static_cast<double>(target_mean.size());
  const Eigen::VectorXd resid = target_mean - latent_sum_mean(qf);
  const double expected_sq = target_var.sum() + resid.squaredNorm() + latent_sum_var(qf).sum();
  return 0.5 * n * std::log(tau / (2.0 * std::numbers::pi)) - 0.5 * tau * expected_sq;
}

ElboTerms elbo_terms(const VariationalState& state, const GramSet& grams,
                     const Eigen::VectorXd& target_mean, const Eigen::VectorXd& target_var,
                     const Hyperparams& hyper) {
  const QfState& qf = state.qf;
  const std::size_t num = grams.size();
  const auto n = static_cast<double>(grams.n());
  ElboTerms t;
  t.likelihood = expected_log_likelihood(qf, hyper.tau, target_mean, target_var);

  double latent = 0.5 * n * static_cast<double>(num) - 0.5 * n * std::log(qf.tau) -
                  0.5 * qf.log_det_b;
  for (std::size_t p = 0; p < num; ++p) {
    const auto i = static_cast<Eigen::Index>(p);
    latent += 0.5 * n * state.gamma_mean_log[i] -
              0.5 * state.gamma_mean[i] * expected_quad_form(p, state, grams) -
              0.5 * n * std::log(qf.gamma_mean[i]);
  }
  t.latent = latent;

  if (state.gamma_mode == GammaMode::kVariational) {
    for (std::size_t p = 0; p < num; ++p) {
      const GigMoments m = stored_moments(state, p);
      t.gamma_prior += expected_log_density(hyper.prior, m);
      t.gamma_entropy += entropy(state.gamma_post[p], m);
    }
  }
  check_finite(t.likelihood, "likelihood");
  check_finite(t.latent, "latent");
  check_finite(t.gamma_prior, "gamma_prior");
  check_finite(t.gamma_entropy, "gamma_entropy");
  return t;
}

double elbo(const VariationalState& state, const GramSet& grams, const Eigen::VectorXd& y,
            const Hyperparams& hyper) {
  return elbo_terms(state, grams, y, Eigen::VectorXd::Zero(y.size()), hyper).total();
}

GammaSuffStats suff_stats(const VariationalState& state) {
  GammaSuffStats s;
  s.sum_mean = state.gamma_mean.sum();
  s.sum_mean_inv = state.gamma_mean_inv.sum();
  s.sum_mean_log = state.gamma_mean_log.sum();
  s.count = static_cast<int>(state.gamma_mean.size());
  return s;
}

namespace detail {

// One round of ML-II updates on the learnable prior parameters; each accepted
// solve is followed by `after(kind)`.
void update_hypers(Hyperparams& hyper, const VariationalState& state, FitReport& report,
                   const std::function<void(UpdateKind)>& after) {
  const LearnableMask mask = learnable(hyper.preset);
  const std::pair<HyperParam, bool> order[] = {
      {HyperParam::kOmega, mask.omega}, {HyperParam::kChi, mask.chi}, {HyperParam::kPhi, mask.phi}};
  for (const auto& [which, on] : order) {
    if (!on) continue;
    const SolveResult r = solve_hyper(which, hyper.prior, suff_stats(state), hyper.preset);
    if (r.boundary) {
      report.warnings.push_back(std::string(hyper_param_name(which)) +
                                ": no sign change in the search range; left unchanged");
      continue;
    }
    if (r.multiple_roots) {
      report.warnings.push_back(std::string(hyper_param_name(which)) +
                                ": several sign changes on the bracket");
    }
    GigParams next = hyper.prior;
    UpdateKind kind = UpdateKind::kOmega;
    switch (which) {
      case HyperParam::kOmega:
        next.omega = r.value;
        kind = UpdateKind::kOmega;
        break;
      case HyperParam::kChi:
        next.chi = r.value;
        kind = UpdateKind::kChi;
        break;
      case HyperParam::kPhi:
        next.phi = r.value;
        kind = UpdateKind::kPhi;
        break;
    }
    if (validate(next)) continue;
    hyper.prior = next;
    after(kind);
  }
}

}  // namespace detail

FittedModel fit_grams(GramSet grams, const Eigen::VectorXd& y, const Hyperparams& hyper_init,
                      const FitConfig& config) {
  if (y.size() != grams.n()) {
    std::ostringstream msg;
    msg << "got " << y.size() << " targets for " << grams.n() << " inputs";
    throw DataError(msg.str());
  }
  if (!y.allFinite()) throw DataError("targets contain non-finite values");
  check_preset(hyper_init.preset, hyper_init.prior);

  FittedModel model;
  model.task = Task::kRegression;
  model.config = config;
  model.observed = y;
  model.hyper = hyper_init;
  if (!(model.hyper.tau > 0.0)) {
    const double v = variance(y);
    model.hyper.tau = v > 0.0 ? 1.0 / v : 1.0;
  }
  model.grams = std::move(grams);
  const GramSet& g = model.grams;
  VariationalState& state = model.state;
  Hyperparams& hyper = model.hyper;
  FitReport& report = model.report;

  auto record = [&](UpdateKind kind) {
    state.elbo = elbo(state, g, y, hyper);
    report.updates.push_back({kind, state.elbo});
  };

  state = init_state(g.size());
  update_q_f(state, g, y, hyper.tau);
  update_q_gamma(state, g, hyper.prior);
  record(UpdateKind::kQgamma);

  double previous = state.elbo;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    update_q_f(state, g, y, hyper.tau);
    record(UpdateKind::kQf);
    if (config.learn_gamma) {
      update_q_gamma(state, g, hyper.prior);
      record(UpdateKind::kQgamma);
    }
    if (config.learn_tau) {
      const TauUpdate t = update_tau(state, y, config.tau_max);
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
  update_q_f(state, g, y, hyper.tau);
  record(UpdateKind::kQf);
  if (!report.converged) {
    report.warnings.push_back("did not converge within " + std::to_string(config.max_iters) +
                              " iterations");
  }
  if (report.tau_clamped) report.warnings.push_back("tau clamped at tau_max");
  return model;
}

FittedModel fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& y,
                const std::vector<KernelSpec>& specs, const Hyperparams& hyper_init,
                const FitConfig& config) {
  if (inputs.rows() != y.size()) {
    std::ostringstream msg;
    msg << "got " << inputs.rows() << " input rows and " << y.size() << " targets";
    throw DataError(msg.str());
  }
  return fit_grams(build_gram_set(specs, inputs, config.jitter), y, hyper_init, config);
}

double heavy_tailed_log_prior_term(double quad_form, Eigen::Index n, const GigParams& prior) {
  require_valid(prior);
  if (!(quad_form >= 0.0)) throw DomainError("quadratic form must be non-negative");
  const double order = prior.omega + 0.5 * static_cast<double>(n);
  const double s = prior.phi + quad_form;
  if (sub_family(prior) == GigFamily::kGamma || prior.chi == 0.0) {
    // chi -> 0: multivariate Student-t form (phi + Q)^-(omega + N/2)
    if (!(order > 0.0)) throw DomainError("Student-t limit needs omega + N/2 > 0");
    return -order * std::log(s);
  }
  if (!(s > 0.0)) throw DomainError("heavy-tailed prior is unbounded at f = 0 when phi = 0");
  return log_bessel_k(order, std::sqrt(prior.chi * s)) - order * 0.5 * std::log(s / prior.chi);
}

double heavy_tailed_log_prior(const std::vector<Eigen::VectorXd>& f_blocks,
                              const GramSet& grams, const GigParams& prior) {
  if (f_blocks.size() != grams.size()) throw DataError("one latent block per kernel is required");
  double total = 0.0;
  for (std::size_t p = 0; p < f_blocks.size(); ++p) {
    total += heavy_tailed_log_prior_term(grams.inv_quad_form(p, f_blocks[p]), grams.n(), prior);
  }
  return total;
}

}  // namespace mgp

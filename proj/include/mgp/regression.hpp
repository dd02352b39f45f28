#pragma once

#include <Eigen/Core>

#include "mgp/hyper_opt.hpp"
#include "mgp/kernels.hpp"
#include "mgp/model.hpp"

namespace mgp {

// State with <gamma_p> = gamma_init for every kernel and no q(f) yet.
VariationalState init_state(std::size_t num_kernels, double gamma_init = 1.0,
                            GammaMode mode = GammaMode::kVariational);

// Point-mass gamma: <gamma_p> = gamma[p], <ln gamma_p> = ln gamma[p].
VariationalState fixed_gamma_state(const Eigen::VectorXd& gamma);

// Refreshes q(f) for the current <gamma> and the given tau and targets.
void update_q_f(VariationalState& state, const GramSet& grams, const Eigen::VectorXd& targets,
                double tau);

// sum_p mu_p and the marginal variances diag(M Sigma M') of sum_p f_p.
Eigen::VectorXd latent_sum_mean(const QfState& qf);
Eigen::VectorXd latent_sum_var(const QfState& qf);

// Sigma_pq as a dense N x N block.
Eigen::MatrixXd posterior_cov_block(const QfState& qf, const GramSet& grams, std::size_t p,
                                    std::size_t q);

// <f_p' K_p^-1 f_p> under q(f). Throws NumericalError if the value comes out
// negative beyond round-off.
double expected_quad_form(std::size_t p, const VariationalState& state, const GramSet& grams);

// q(gamma_p) = N^-1(omega + N/2, chi, phi + <f_p' K_p^-1 f_p>) and its moments.
void update_q_gamma(VariationalState& state, const GramSet& grams, const GigParams& prior);

struct TauUpdate {
  double tau;
  bool clamped;
};

// tau = N / E||y - sum_p f_p||^2, with q(y) moments for the targets
// (target_var is zero for regression). Clamped to tau_max on a degenerate
// denominator.
TauUpdate update_tau(const VariationalState& state, const Eigen::VectorXd& target_mean,
                     const Eigen::VectorXd& target_var, double tau_max = 1e8);
TauUpdate update_tau(const VariationalState& state, const Eigen::VectorXd& y,
                     double tau_max = 1e8);

// Lower bound decomposed by origin. `likelihood` is E[ln N(y; sum f, 1/tau)];
// `latent` collects E[ln p(f|gamma)] + H[q(f)] (the ln|K_p| terms cancel);
// the gamma terms vanish under GammaMode::kFixed.
struct ElboTerms {
  double likelihood = 0.0;
  double latent = 0.0;
  double gamma_prior = 0.0;
  double gamma_entropy = 0.0;
  double total() const { return likelihood + latent + gamma_prior + gamma_entropy; }
};

double expected_log_likelihood(const QfState& qf, double tau, const Eigen::VectorXd& target_mean,
                               const Eigen::VectorXd& target_var);

ElboTerms elbo_terms(const VariationalState& state, const GramSet& grams,
                     const Eigen::VectorXd& target_mean, const Eigen::VectorXd& target_var,
                     const Hyperparams& hyper);

// Regression bound: targets are the observed y. Throws NumericalError naming
// the offending term if anything is non-finite.
double elbo(const VariationalState& state, const GramSet& grams, const Eigen::VectorXd& y,
            const Hyperparams& hyper);

GammaSuffStats suff_stats(const VariationalState& state);

// Coordinate ascent: q(f), q(gamma), tau, then ML-II hyperparameters.
FittedModel fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& y,
                const std::vector<KernelSpec>& specs, const Hyperparams& hyper_init,
                const FitConfig& config = {});

// Same loop on prebuilt Grams.
FittedModel fit_grams(GramSet grams, const Eigen::VectorXd& y, const Hyperparams& hyper_init,
                      const FitConfig& config = {});

// Unnormalised log of the marginal prior over the latent blocks after
// integrating out gamma (a generalised hyperbolic density).
double heavy_tailed_log_prior(const std::vector<Eigen::VectorXd>& f_blocks,
                              const GramSet& grams, const GigParams& prior);

// Contribution of one block from its quadratic form Q = f' K^-1 f.
double heavy_tailed_log_prior_term(double quad_form, Eigen::Index n, const GigParams& prior);

}  // namespace mgp

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "mgp/kernels.hpp"
#include "mgp/model.hpp"

namespace mgp {

// Classification keeps tau fixed unless asked otherwise.
inline FitConfig classifier_defaults() {
  FitConfig config;
  config.learn_tau = false;
  return config;
}

// Throws DataError unless every label is -1 or +1. Returns a warning string
// (empty if none) when only one class is present.
std::string check_labels(const Eigen::VectorXd& labels);

// Per-site truncated Gaussians centred at nu = sum_p <f_p(x_n)> with variance
// 1/tau, truncated to the side given by the label.
LatentYPosterior update_q_y(const VariationalState& state, const Eigen::VectorXd& labels,
                            double tau);

// Same, with nu supplied directly.
LatentYPosterior q_y_from_nu(const Eigen::VectorXd& nu, const Eigen::VectorXd& labels,
                             double tau);

// Bound for the probit model: E[ln p(y|f)] - E[ln q(y)] plus the latent and
// gamma terms shared with regression.
double classification_elbo(const VariationalState& state, const GramSet& grams,
                           const LatentYPosterior& q_y, const Hyperparams& hyper);

// Coordinate ascent q(y), q(f), q(gamma), [tau], hyperparameters. tau stays at
// hyper_init.tau (1 if not positive) unless config.learn_tau is set.
FittedModel fit_classifier(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& labels,
                           const std::vector<KernelSpec>& specs, const Hyperparams& hyper_init,
                           const FitConfig& config = classifier_defaults());

FittedModel fit_classifier_grams(GramSet grams, const Eigen::VectorXd& labels,
                                 const Hyperparams& hyper_init, const FitConfig& config);

// P(t = +1 | x) = Phi(m(x) / sqrt(v(x) + 1/tau)) for each query row.
Eigen::VectorXd predict_class_prob(const FittedModel& model, const Eigen::MatrixXd& queries);

// sign(m(x)), with 0 mapped to +1.
Eigen::VectorXd predict_labels(const FittedModel& model, const Eigen::MatrixXd& queries);

}  // namespace mgp

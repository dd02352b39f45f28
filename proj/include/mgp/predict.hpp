#pragma once

#include <Eigen/Core>

#include "mgp/kernels.hpp"
#include "mgp/model.hpp"

namespace mgp {

// Predictive process at query points under <gamma>:
//   y(x) ~ N(mean, latent_var + noise_var).
struct PredictiveDistribution {
  Eigen::VectorXd mean;
  Eigen::VectorXd latent_var;
  double noise_var = 0.0;
  int clamped = 0;  // queries whose latent variance was clamped at zero

  Eigen::VectorXd total_var() const { return (latent_var.array() + noise_var).matrix(); }
};

// m(x) = sum_p k_p(x)' B^-1 y / g_p
// v(x) = sum_p k_p(x, x) / g_p - (sum_p k_p(x)/g_p)' B^-1 (sum_q k_q(x)/g_q)
// using the factorization held by q(f). Query rows use the same column
// layout as the training inputs.
PredictiveDistribution predictive(const GramSet& grams, const QfState& qf, double tau,
                                  const Eigen::MatrixXd& queries);

PredictiveDistribution predictive(const FittedModel& model, const Eigen::MatrixXd& queries);

}  // namespace mgp

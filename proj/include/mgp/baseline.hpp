#pragma once

#include <Eigen/Core>
#include <vector>

#include "mgp/kernels.hpp"

namespace mgp {

// Single-kernel GP regression y ~ N(0, s K + s theta I) with the signal
// scale s and noise ratio theta set by exact type-II ML. K is the average
// of the given kernels' Grams (one kernel for a single-kernel baseline,
// all of them for the equal-weight baseline).
class BaselineGp {
 public:
  static BaselineGp fit(const std::vector<KernelSpec>& specs, const Eigen::MatrixXd& inputs,
                        const Eigen::VectorXd& y);

  Eigen::VectorXd predict_mean(const Eigen::MatrixXd& queries) const;

  double signal_scale() const { return scale_; }
  double noise_var() const { return scale_ * theta_; }
  double log_marginal() const { return log_marginal_; }

 private:
  std::vector<KernelSpec> specs_;
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd weights_;  // (K + theta I)^-1 y
  double scale_ = 1.0;
  double theta_ = 1.0;
  double log_marginal_ = 0.0;
};

}  // namespace mgp

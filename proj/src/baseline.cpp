#include "mgp/baseline.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "mgp/errors.hpp"

namespace mgp {
namespace {

// Profile log-likelihood in log theta with the optimal scale plugged in.
struct Profile {
  Eigen::VectorXd lambda;
  Eigen::VectorXd r2;  // squared projections of y on the eigenvectors

  double scale(double theta) const {
    return (r2.array() / (lambda.array() + theta)).sum() / static_cast<double>(r2.size());
  }
  double operator()(double log_theta) const {
    const double theta = std::exp(log_theta);
    const double n = static_cast<double>(r2.size());
    const double s = scale(theta);
    return -0.5 * (n * std::log(2.0 * std::numbers::pi * s) +
                   (lambda.array() + theta).log().sum() + n);
  }
};

}  // namespace

BaselineGp BaselineGp::fit(const std::vector<KernelSpec>& specs, const Eigen::MatrixXd& inputs,
                           const Eigen::VectorXd& y) {
  if (specs.empty()) throw ConfigError("baseline needs at least one kernel");
  if (inputs.rows() != y.size()) throw DataError("baseline: inputs and targets differ in length");
  const Eigen::Index n = y.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (const auto& s : specs) k += gram(s, inputs);
  k /= static_cast<double>(specs.size());

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
  if (eig.info() != Eigen::Success) throw NumericalError("baseline: eigendecomposition failed");
  Profile prof;
  prof.lambda = eig.eigenvalues().cwiseMax(0.0);
  prof.r2 = (eig.eigenvectors().transpose() * y).array().square();

  // Grid over theta relative to the mean eigenvalue, then golden section.
  const double ref = std::max(prof.lambda.mean(), 1e-300);
  const double lo = std::log(ref * 1e-10);
  const double hi = std::log(ref * 1e4);
  const int grid = 200;
  int best = 0;
  double best_val = -INFINITY;
  for (int i = 0; i <= grid; ++i) {
    const double v = prof(lo + (hi - lo) * i / grid);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double step = (hi - lo) / grid;
  double a = lo + step * std::max(best - 1, 0);
  double b = lo + step * std::min(best + 1, grid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = prof(c);
  double fd = prof(d);
  for (int it = 0; it < 100 && b - a > 1e-10; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = prof(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = prof(d);
    }
  }
  double log_theta = 0.5 * (a + b);
  if (prof(log_theta) < best_val) log_theta = lo + step * best;

  BaselineGp gp;
  gp.specs_ = specs;
  gp.inputs_ = inputs;
  gp.theta_ = std::exp(log_theta);
  gp.scale_ = prof.scale(gp.theta_);
  gp.log_marginal_ = prof(log_theta);
  const Eigen::VectorXd inv = (prof.lambda.array() + gp.theta_).inverse();
  gp.weights_ = eig.eigenvectors() * (inv.asDiagonal() * (eig.eigenvectors().transpose() * y));
  return gp;
}

Eigen::VectorXd BaselineGp::predict_mean(const Eigen::MatrixXd& queries) const {
  Eigen::VectorXd m(queries.rows());
  for (Eigen::Index i = 0; i < queries.rows(); ++i) {
    Eigen::VectorXd kx = Eigen::VectorXd::Zero(inputs_.rows());
    for (const auto& s : specs_) kx += cross_vec(s, inputs_, queries.row(i));
    m[i] = kx.dot(weights_) / static_cast<double>(specs_.size());
  }
  return m;
}

}  // namespace mgp

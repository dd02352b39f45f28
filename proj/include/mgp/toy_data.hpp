#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mgp/kernels.hpp"

namespace mgp {

enum class Regime { kSparse, kSemi, kDense };

Regime parse_regime(std::string_view name);
std::string_view regime_name(Regime regime);

// 0-based active kernel indices: {0}, {0, 1, 2} or all n_kernels.
std::vector<int> regime_active(Regime regime, int n_kernels);

// kPerKernel gives every kernel its own input column (x1 .. xP); kShared
// feeds one column x1 to all kernels.
enum class InputLayout { kPerKernel, kShared };

InputLayout parse_input_layout(std::string_view name);
std::string_view input_layout_name(InputLayout layout);

// Toy regression problem on inputs uniform in [0, 1]: a sum of GP draws from
// Laplacian kernels plus Gaussian noise. `active` is 0-based.
struct ToyConfig {
  int n_train = 100;
  int n_test = 100;
  int n_kernels = 10;
  std::vector<int> active{0};
  std::vector<double> lengthscales;  // empty means 2^-2, 2^-1, ..., 2^(n_kernels-3)
  double noise_std = 0.05;
  InputLayout layout = InputLayout::kPerKernel;
  bool unit_variance_kernels = true;  // see toy_kernel_amplitude
  std::uint64_t seed = 0;

  friend bool operator==(const ToyConfig&, const ToyConfig&) = default;
};

// Throws ConfigError on an empty or out-of-range active set, a lengthscale
// list of the wrong size, or non-positive sizes.
void validate_toy(const ToyConfig& config);

std::vector<double> toy_lengthscales(const ToyConfig& config);

// 1 / E[(1/n) sum_i (f_i - mean f)^2] for f ~ GP(0, exp(-|x - x'| / l)) and
// x uniform on [0, 1]: 1 / (1 - 2l + 2l^2 (1 - exp(-1/l))). Kernels scaled by
// it put every component on the same footing as the unit-variance toy
// components.
double toy_kernel_amplitude(double lengthscale);

int toy_input_dim(const ToyConfig& config);
std::vector<std::string> toy_feature_names(const ToyConfig& config);

// One Laplacian spec per hypothesis space, reading its column under the
// configured layout.
std::vector<KernelSpec> toy_kernel_specs(const ToyConfig& config);

struct ToyDataset {
  Eigen::MatrixXd x_train;  // n_train x toy_input_dim
  Eigen::VectorXd y_train;
  Eigen::VectorXd f_train;  // noiseless sum of active components
  Eigen::MatrixXd x_test;
  Eigen::VectorXd y_test;
  Eigen::VectorXd f_test;
  // (n_train + n_test) x n_kernels, train rows first. Inactive columns are 0.
  Eigen::MatrixXd components;
  std::vector<int> active;
};

// Draw order: inputs (row by row), then one standard-normal vector per kernel (every
// kernel is drawn, active or not, so regimes sharing a seed share draws),
// then the noise. Each active component is rescaled to unit empirical
// variance over train + test.
ToyDataset generate_toy(const ToyConfig& config);

}  // namespace mgp

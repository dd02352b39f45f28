#include "mgp/toy_data.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "mgp/errors.hpp"
#include "mgp/rng.hpp"

namespace mgp {

Regime parse_regime(std::string_view name) {
  if (name == "sparse") return Regime::kSparse;
  if (name == "semi") return Regime::kSemi;
  if (name == "dense") return Regime::kDense;
  throw ConfigError("unknown regime '" + std::string(name) + "' (sparse, semi, dense)");
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::kSparse:
      return "sparse";
    case Regime::kSemi:
      return "semi";
    case Regime::kDense:
      return "dense";
  }
  return "?";
}

InputLayout parse_input_layout(std::string_view name) {
  if (name == "per-kernel") return InputLayout::kPerKernel;
  if (name == "shared") return InputLayout::kShared;
  throw ConfigError("unknown input layout '" + std::string(name) + "' (per-kernel, shared)");
}

std::string_view input_layout_name(InputLayout layout) {
  return layout == InputLayout::kShared ? "shared" : "per-kernel";
}

std::vector<int> regime_active(Regime regime, int n_kernels) {
  int count = n_kernels;
  if (regime == Regime::kSparse) count = 1;
  if (regime == Regime::kSemi) count = 3;
  if (count > n_kernels) throw ConfigError("regime needs more kernels than configured");
  std::vector<int> active(count);
  for (int i = 0; i < count; ++i) active[i] = i;
  return active;
}

void validate_toy(const ToyConfig& c) {
  if (c.n_train <= 0 || c.n_test < 0) throw ConfigError("n_train must be positive, n_test >= 0");
  if (c.n_kernels <= 0) throw ConfigError("n_kernels must be positive");
  if (c.active.empty()) throw ConfigError("active set is empty");
  for (int a : c.active) {
    if (a < 0 || a >= c.n_kernels) {
      throw ConfigError("active kernel " + std::to_string(a + 1) + " is out of range 1.." +
                        std::to_string(c.n_kernels));
    }
  }
  std::vector<int> sorted = c.active;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("active set has duplicates");
  }
  if (!c.lengthscales.empty() && static_cast<int>(c.lengthscales.size()) != c.n_kernels) {
    throw ConfigError("expected " + std::to_string(c.n_kernels) + " lengthscales, got " +
                      std::to_string(c.lengthscales.size()));
  }
  for (double l : c.lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("lengthscales must be positive");
  }
  if (!(c.noise_std >= 0.0) || !std::isfinite(c.noise_std)) {
    throw ConfigError("noise_std must be non-negative");
  }
}

std::vector<double> toy_lengthscales(const ToyConfig& c) {
  if (!c.lengthscales.empty()) return c.lengthscales;
  std::vector<double> out(c.n_kernels);
  for (int p = 0; p < c.n_kernels; ++p) out[p] = std::ldexp(1.0, p - 2);
  return out;
}

double toy_kernel_amplitude(double l) {
  const double u = 1.0 / l;
  // g(u) = u^2/2 - u + 1 - exp(-u), expanded for small u.
  const double g =
      u < 1e-2 ? u * u * u *
                     (1.0 / 6 - u * (1.0 / 24 - u * (1.0 / 120 - u * (1.0 / 720 - u / 5040))))
               : 0.5 * u * u - u - std::expm1(-u);
  return u * u / (2.0 * g);
}

int toy_input_dim(const ToyConfig& c) {
  return c.layout == InputLayout::kShared ? 1 : c.n_kernels;
}

std::vector<std::string> toy_feature_names(const ToyConfig& c) {
  std::vector<std::string> names;
  for (int d = 0; d < toy_input_dim(c); ++d) names.push_back("x" + std::to_string(d + 1));
  return names;
}

std::vector<KernelSpec> toy_kernel_specs(const ToyConfig& c) {
  std::vector<KernelSpec> specs;
  const std::vector<double> ls = toy_lengthscales(c);
  for (int p = 0; p < c.n_kernels; ++p) {
    const int col = c.layout == InputLayout::kShared ? 0 : p;
    const double amp = c.unit_variance_kernels ? toy_kernel_amplitude(ls[p]) : 1.0;
    specs.push_back({KernelFamily::kLaplacian, ls[p], amp, {col}});
  }
  return specs;
}

ToyDataset generate_toy(const ToyConfig& c) {
  validate_toy(c);
  const int n = c.n_train + c.n_test;
  Rng rng(c.seed);

  const int dim = toy_input_dim(c);
  Eigen::MatrixXd x(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) x(i, k) = rng.uniform();
  }

  const std::vector<KernelSpec> specs = toy_kernel_specs(c);
  const GramSet grams = build_gram_set(specs, x);
  std::vector<bool> is_active(c.n_kernels, false);
  for (int a : c.active) is_active[a] = true;

  ToyDataset d;
  d.active = c.active;
  d.components = Eigen::MatrixXd::Zero(n, c.n_kernels);
  Eigen::VectorXd z(n);
  for (int p = 0; p < c.n_kernels; ++p) {
    for (int i = 0; i < n; ++i) z[i] = rng.normal();
    if (!is_active[p]) continue;
    const Eigen::LLT<Eigen::MatrixXd> llt(grams.mat(p));
    Eigen::VectorXd f = llt.matrixL() * z;
    const double mean = f.mean();
    const double var = (f.array() - mean).square().sum() / n;
    if (var > 0.0) f /= std::sqrt(var);
    d.components.col(p) = f;
  }
  const Eigen::VectorXd f = d.components.rowwise().sum();
  Eigen::VectorXd y = f;
  for (int i = 0; i < n; ++i) y[i] += c.noise_std * rng.normal();

  d.x_train = x.topRows(c.n_train);
  d.x_test = x.bottomRows(c.n_test);
  d.f_train = f.head(c.n_train);
  d.f_test = f.tail(c.n_test);
  d.y_train = y.head(c.n_train);
  d.y_test = y.tail(c.n_test);
  return d;
}

}  // namespace mgp

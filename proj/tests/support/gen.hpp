#pragma once

// Seeded generators for property tests.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mgp/kernels.hpp"
#include "mgp/rng.hpp"

namespace gen {

inline double uniform(mgp::Rng& r, double lo, double hi) { return lo + (hi - lo) * r.uniform(); }

inline int integer(mgp::Rng& r, int lo, int hi) {
  return lo + static_cast<int>(r.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Eigen::MatrixXd matrix(mgp::Rng& r, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = r.normal();
  }
  return m;
}

inline Eigen::VectorXd vector(mgp::Rng& r, Eigen::Index n) { return matrix(r, n, 1); }

// Random kernel spec reading all columns.
inline mgp::KernelSpec kernel(mgp::Rng& r) {
  mgp::KernelSpec s;
  const int f = integer(r, 0, 2);
  s.family = f == 0 ? mgp::KernelFamily::kLinear
             : f == 1 ? mgp::KernelFamily::kSquaredExponential
                      : mgp::KernelFamily::kLaplacian;
  s.lengthscale = uniform(r, 0.3, 3.0);
  s.amplitude = uniform(r, 0.5, 2.0);
  return s;
}

inline std::vector<mgp::KernelSpec> kernels(mgp::Rng& r, int p) {
  std::vector<mgp::KernelSpec> out;
  for (int i = 0; i < p; ++i) out.push_back(kernel(r));
  return out;
}

// Positive vector with entries in [lo, hi].
inline Eigen::VectorXd positive(mgp::Rng& r, Eigen::Index n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(r, lo, hi);
  return v;
}

}  // namespace gen

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

#include "mgp/gig.hpp"
#include "mgp/kernels.hpp"

namespace mgp {

// Prior over the kernel precisions plus the residual precision tau.
struct Hyperparams {
  GigParams prior;
  double tau = 1.0;
  FamilyPreset preset = FamilyPreset::kFree;
};

// q(f) = N(mu, Sigma) over the stacked latent functions, held implicitly via
//   B = sum_p K_p / g_p + I / tau,
// where g_p are the <gamma_p> and tau the precision it was built with.
// mu_p = K_p B^-1 y / g_p and
// Sigma_pq = delta_pq K_p / g_p - K_p B^-1 K_q / (g_p g_q).
struct QfState {
  Eigen::VectorXd targets;
  Eigen::VectorXd gamma_mean;
  double tau = 1.0;
  Eigen::LLT<Eigen::MatrixXd> b_factor;
  Eigen::MatrixXd b_inv;
  double log_det_b = 0.0;
  Eigen::VectorXd alpha;  // B^-1 targets
  std::vector<Eigen::VectorXd> mu_blocks;
  Eigen::VectorXd trace_binv_k;   // tr(B^-1 K_p)
  Eigen::VectorXd alpha_k_alpha;  // alpha' K_p alpha
};

// kFixed treats gamma as known point masses: no q(gamma) and no gamma terms
// in the bound.
enum class GammaMode { kVariational, kFixed };

struct VariationalState {
  QfState qf;
  GammaMode gamma_mode = GammaMode::kVariational;
  std::vector<GigParams> gamma_post;
  Eigen::VectorXd gamma_mean;
  Eigen::VectorXd gamma_mean_inv;
  Eigen::VectorXd gamma_mean_log;
  double elbo = 0.0;

  std::size_t num_kernels() const { return static_cast<std::size_t>(gamma_mean.size()); }
};

struct FitConfig {
  double tol = 1e-8;       // relative ELBO change between iterations
  int max_iters = 500;
  int hyper_stride = 1;    // ML-II every k-th iteration; 0 disables
  bool learn_tau = true;
  bool learn_gamma = true; // false freezes q(gamma) after its first update
  double tau_max = 1e8;
  JitterPolicy jitter;

  friend bool operator==(const FitConfig&, const FitConfig&) = default;
};

enum class UpdateKind { kQy, kQf, kQgamma, kTau, kOmega, kChi, kPhi };
std::string_view update_kind_name(UpdateKind kind);

struct UpdateRecord {
  UpdateKind kind;
  double elbo;
};

struct FitReport {
  std::vector<double> elbo_trace;     // bound after each full iteration
  std::vector<UpdateRecord> updates;  // bound after every single update
  int iterations = 0;
  bool converged = false;
  bool tau_clamped = false;
  std::vector<std::string> warnings;
};

enum class Task { kRegression, kBinaryClassification };
std::string_view task_name(Task task);
Task parse_task(std::string_view name);

// q(y) for probit classification: a product of truncated Gaussians centred
// at nu with variance lambda, truncated to the labelled side.
struct LatentYPosterior {
  Eigen::VectorXd nu;
  double lambda = 1.0;
  Eigen::VectorXd post_mean;
  Eigen::VectorXd post_var;
  Eigen::VectorXd log_mass;
};

struct FittedModel {
  Task task = Task::kRegression;
  GramSet grams;
  VariationalState state;
  Hyperparams hyper;
  FitConfig config;
  FitReport report;
  // Observed targets y (regression) or labels t in {-1, +1} (classification).
  Eigen::VectorXd observed;
  LatentYPosterior q_y;  // classification only

  // w_p = (1/<gamma_p>) / sum_q (1/<gamma_q>)
  Eigen::VectorXd normalized_weights() const;
};

}  // namespace mgp

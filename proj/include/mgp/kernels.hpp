#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

namespace mgp {

enum class KernelFamily { kLinear, kSquaredExponential, kLaplacian };

KernelFamily parse_kernel_family(std::string_view name);
std::string_view kernel_family_name(KernelFamily family);

// One base kernel. `columns` selects the feature view the kernel reads from
// the input matrix; empty means every column.
struct KernelSpec {
  KernelFamily family = KernelFamily::kSquaredExponential;
  double lengthscale = 1.0;
  double amplitude = 1.0;
  std::vector<int> columns;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

void validate_spec(const KernelSpec& spec, Eigen::Index n_columns);

// k(a, b) for two full input rows; the spec's feature view is applied here.
double kernel_value(const KernelSpec& spec, const Eigen::Ref<const Eigen::RowVectorXd>& a,
                    const Eigen::Ref<const Eigen::RowVectorXd>& b);

// K[i][j] = k(x_i, x_j) over the rows of `inputs`. Exactly symmetric.
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& inputs);

// Entry i = k(x_i, query).
Eigen::VectorXd cross_vec(const KernelSpec& spec, const Eigen::MatrixXd& training_inputs,
                          const Eigen::Ref<const Eigen::RowVectorXd>& query);

// Jitter is relative to the mean diagonal of each Gram. The first attempt
// adds start * mean_diag; each failed factorization multiplies by 10 until
// cap * mean_diag is exceeded.
struct JitterPolicy {
  double start = 1e-8;
  double cap = 1e-2;

  friend bool operator==(const JitterPolicy&, const JitterPolicy&) = default;
};

// P training Grams with diagonal jitter and a Cholesky factor each.
// Immutable after construction; `mats` already include the jitter and are
// the K_p used throughout inference.
class GramSet {
 public:
  GramSet() = default;

  std::size_t size() const { return mats_.size(); }
  Eigen::Index n() const { return inputs_.rows(); }

  const Eigen::MatrixXd& mat(std::size_t p) const { return mats_[p]; }
  const std::vector<Eigen::MatrixXd>& mats() const { return mats_; }
  double jitter(std::size_t p) const { return jitter_[p]; }
  const std::vector<double>& jitters() const { return jitter_; }
  const KernelSpec& spec(std::size_t p) const { return specs_[p]; }
  const std::vector<KernelSpec>& specs() const { return specs_; }
  const Eigen::MatrixXd& inputs() const { return inputs_; }

  // K_p^{-1} v through the factorization.
  Eigen::VectorXd solve(std::size_t p, const Eigen::VectorXd& v) const;
  // v' K_p^{-1} v.
  double inv_quad_form(std::size_t p, const Eigen::VectorXd& v) const;
  double log_det(std::size_t p) const;

 private:
  friend GramSet build_gram_set(const std::vector<KernelSpec>&, const Eigen::MatrixXd&,
                                const JitterPolicy&);
  friend GramSet gram_set_from_matrices(std::vector<Eigen::MatrixXd>, const JitterPolicy&);
  friend GramSet restore_gram_set(const std::vector<KernelSpec>&, const Eigen::MatrixXd&,
                                  const std::vector<double>&);

  std::vector<KernelSpec> specs_;
  Eigen::MatrixXd inputs_;
  std::vector<Eigen::MatrixXd> mats_;
  std::vector<double> jitter_;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors_;
};

// Assembles, symmetrises, jitters and factorizes every kernel. Throws
// NumericalError naming the kernel that stayed non-PD at the jitter cap.
GramSet build_gram_set(const std::vector<KernelSpec>& specs, const Eigen::MatrixXd& inputs,
                       const JitterPolicy& policy = {});

// Rebuilds a GramSet with known per-kernel jitter (used when loading models).
GramSet restore_gram_set(const std::vector<KernelSpec>& specs, const Eigen::MatrixXd& inputs,
                         const std::vector<double>& jitter);

// GramSet over precomputed kernel matrices; no specs or inputs, so it cannot
// be used for prediction. Handy for dense-algebra checks.
GramSet gram_set_from_matrices(std::vector<Eigen::MatrixXd> mats, const JitterPolicy& policy = {});

}  // namespace mgp

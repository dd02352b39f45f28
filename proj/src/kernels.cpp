#include "mgp/kernels.hpp"

#include <cmath>
#include <sstream>

#include "mgp/errors.hpp"

namespace mgp {
namespace {

// A factorization is accepted only if every pivot clears this fraction of
// the mean diagonal; exactly singular Grams otherwise slip through LLT with
// round-off sized pivots.
constexpr double kPivotFloor = 1e-14;

Eigen::RowVectorXd view(const KernelSpec& spec,
                        const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  if (spec.columns.empty()) return row;
  Eigen::RowVectorXd out(spec.columns.size());
  for (std::size_t k = 0; k < spec.columns.size(); ++k) out[k] = row[spec.columns[k]];
  return out;
}

Eigen::MatrixXd view(const KernelSpec& spec, const Eigen::MatrixXd& inputs) {
  if (spec.columns.empty()) return inputs;
  Eigen::MatrixXd out(inputs.rows(), spec.columns.size());
  for (std::size_t k = 0; k < spec.columns.size(); ++k) out.col(k) = inputs.col(spec.columns[k]);
  return out;
}

double eval_view(const KernelSpec& spec, const Eigen::RowVectorXd& a,
                 const Eigen::RowVectorXd& b) {
  switch (spec.family) {
    case KernelFamily::kLinear:
      return spec.amplitude * a.dot(b);
    case KernelFamily::kSquaredExponential:
      return spec.amplitude *
             std::exp(-(a - b).squaredNorm() / (2.0 * spec.lengthscale * spec.lengthscale));
    case KernelFamily::kLaplacian:
      return spec.amplitude * std::exp(-(a - b).norm() / spec.lengthscale);
  }
  return 0.0;
}

void require_finite(const Eigen::MatrixXd& inputs) {
  if (inputs.rows() == 0) throw DomainError("kernel inputs are empty");
  if (!inputs.allFinite()) throw DomainError("kernel inputs contain non-finite entries");
}

struct Factorized {
  Eigen::MatrixXd mat;
  double jitter;
  Eigen::LLT<Eigen::MatrixXd> llt;
};

bool acceptable(const Eigen::LLT<Eigen::MatrixXd>& llt, double mean_diag) {
  if (llt.info() != Eigen::Success) return false;
  const Eigen::VectorXd pivots = llt.matrixLLT().diagonal();
  return pivots.allFinite() && pivots.minCoeff() * pivots.minCoeff() > kPivotFloor * mean_diag;
}

Factorized factorize(const Eigen::MatrixXd& raw, const JitterPolicy& policy, std::size_t index) {
  const Eigen::MatrixXd sym = 0.5 * (raw + raw.transpose());
  const double mean_diag = sym.diagonal().mean();
  if (!(mean_diag > 0.0) || !std::isfinite(mean_diag)) {
    std::ostringstream msg;
    msg << "kernel " << index << " has non-positive mean diagonal " << mean_diag;
    throw NumericalError(msg.str());
  }
  const double cap = policy.cap * mean_diag;
  double jitter = policy.start * mean_diag;
  for (;;) {
    Eigen::MatrixXd mat = sym;
    mat.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(mat);
    if (acceptable(llt, mean_diag)) return {std::move(mat), jitter, std::move(llt)};
    jitter = jitter == 0.0 ? 1e-10 * mean_diag : 10.0 * jitter;
    if (jitter > cap * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "kernel " << index << " is not positive definite even with jitter " << cap
          << " (cap)";
      throw NumericalError(msg.str());
    }
  }
}

}  // namespace

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "linear") return KernelFamily::kLinear;
  if (name == "squared_exponential") return KernelFamily::kSquaredExponential;
  if (name == "laplacian") return KernelFamily::kLaplacian;
  throw ConfigError("unknown kernel family '" + std::string(name) +
                    "' (expected linear, squared_exponential or laplacian)");
}

std::string_view kernel_family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::kLinear:
      return "linear";
    case KernelFamily::kSquaredExponential:
      return "squared_exponential";
    case KernelFamily::kLaplacian:
      return "laplacian";
  }
  return "unknown";
}

void validate_spec(const KernelSpec& spec, Eigen::Index n_columns) {
  if (!(spec.lengthscale > 0.0) || !std::isfinite(spec.lengthscale)) {
    throw ConfigError("kernel lengthscale must be positive");
  }
  if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
    throw ConfigError("kernel amplitude must be positive");
  }
  for (int c : spec.columns) {
    if (c < 0 || c >= n_columns) {
      std::ostringstream msg;
      msg << "kernel feature view references column " << c << " but inputs have " << n_columns
          << " columns";
      throw DataError(msg.str());
    }
  }
}

double kernel_value(const KernelSpec& spec, const Eigen::Ref<const Eigen::RowVectorXd>& a,
                    const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  return eval_view(spec, view(spec, a), view(spec, b));
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::MatrixXd& inputs) {
  require_finite(inputs);
  validate_spec(spec, inputs.cols());
  const Eigen::MatrixXd x = view(spec, inputs);
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::RowVectorXd xi = x.row(i);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = eval_view(spec, xi, x.row(j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::VectorXd cross_vec(const KernelSpec& spec, const Eigen::MatrixXd& training_inputs,
                          const Eigen::Ref<const Eigen::RowVectorXd>& query) {
  require_finite(training_inputs);
  if (!query.allFinite()) throw DomainError("query point contains non-finite entries");
  if (query.size() != training_inputs.cols()) {
    std::ostringstream msg;
    msg << "query has " << query.size() << " columns, training inputs have "
        << training_inputs.cols();
    throw DataError(msg.str());
  }
  validate_spec(spec, training_inputs.cols());
  const Eigen::MatrixXd x = view(spec, training_inputs);
  const Eigen::RowVectorXd q = view(spec, query);
  Eigen::VectorXd out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = eval_view(spec, x.row(i), q);
  return out;
}

Eigen::VectorXd GramSet::solve(std::size_t p, const Eigen::VectorXd& v) const {
  return factors_[p].solve(v);
}

double GramSet::inv_quad_form(std::size_t p, const Eigen::VectorXd& v) const {
  const Eigen::VectorXd w = factors_[p].matrixL().solve(v);
  return w.squaredNorm();
}

double GramSet::log_det(std::size_t p) const {
  return 2.0 * factors_[p].matrixLLT().diagonal().array().log().sum();
}

GramSet build_gram_set(const std::vector<KernelSpec>& specs, const Eigen::MatrixXd& inputs,
                       const JitterPolicy& policy) {
  if (specs.empty()) throw ConfigError("at least one kernel is required");
  require_finite(inputs);
  GramSet set;
  set.specs_ = specs;
  set.inputs_ = inputs;
  for (std::size_t p = 0; p < specs.size(); ++p) {
    Factorized f = factorize(gram(specs[p], inputs), policy, p);
    set.mats_.push_back(std::move(f.mat));
    set.jitter_.push_back(f.jitter);
    set.factors_.push_back(std::move(f.llt));
  }
  return set;
}

GramSet restore_gram_set(const std::vector<KernelSpec>& specs, const Eigen::MatrixXd& inputs,
                         const std::vector<double>& jitter) {
  if (specs.size() != jitter.size()) throw DataError("one jitter value per kernel is required");
  GramSet set;
  set.specs_ = specs;
  set.inputs_ = inputs;
  for (std::size_t p = 0; p < specs.size(); ++p) {
    const Eigen::MatrixXd raw = gram(specs[p], inputs);
    Eigen::MatrixXd mat = 0.5 * (raw + raw.transpose());
    mat.diagonal().array() += jitter[p];
    Eigen::LLT<Eigen::MatrixXd> llt(mat);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("stored kernel " + std::to_string(p) + " no longer factorizes");
    }
    set.mats_.push_back(std::move(mat));
    set.jitter_.push_back(jitter[p]);
    set.factors_.push_back(std::move(llt));
  }
  return set;
}

GramSet gram_set_from_matrices(std::vector<Eigen::MatrixXd> mats, const JitterPolicy& policy) {
  if (mats.empty()) throw ConfigError("at least one kernel is required");
  GramSet set;
  const Eigen::Index n = mats.front().rows();
  set.inputs_ = Eigen::MatrixXd(n, 0);
  for (std::size_t p = 0; p < mats.size(); ++p) {
    if (mats[p].rows() != n || mats[p].cols() != n) {
      throw DataError("all kernel matrices must be N x N with a common N");
    }
    Factorized f = factorize(mats[p], policy, p);
    set.mats_.push_back(std::move(f.mat));
    set.jitter_.push_back(f.jitter);
    set.factors_.push_back(std::move(f.llt));
  }
  return set;
}

}  // namespace mgp

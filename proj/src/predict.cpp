#include "mgp/predict.hpp"

#include <sstream>

#include "mgp/errors.hpp"

namespace mgp {

PredictiveDistribution predictive(const GramSet& grams, const QfState& qf, double tau,
                                  const Eigen::MatrixXd& queries) {
  const Eigen::MatrixXd& train = grams.inputs();
  if (queries.cols() != train.cols()) {
    std::ostringstream msg;
    msg << "queries have " << queries.cols() << " columns but the model was trained on "
        << train.cols();
    throw DataError(msg.str());
  }
  for (std::size_t p = 0; p < grams.size(); ++p) validate_spec(grams.spec(p), queries.cols());

  const Eigen::Index m = queries.rows();
  PredictiveDistribution out;
  out.mean.resize(m);
  out.latent_var.resize(m);
  out.noise_var = 1.0 / tau;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::RowVectorXd x = queries.row(i);
    Eigen::VectorXd k = Eigen::VectorXd::Zero(grams.n());
    double prior_var = 0.0;
    for (std::size_t p = 0; p < grams.size(); ++p) {
      const double g = qf.gamma_mean[static_cast<Eigen::Index>(p)];
      k += cross_vec(grams.spec(p), train, x) / g;
      prior_var += kernel_value(grams.spec(p), x, x) / g;
    }
    out.mean[i] = k.dot(qf.alpha);
    double v = prior_var - k.dot(qf.b_factor.solve(k));
    if (v < 0.0) {
      if (v < -1e-10 * prior_var) ++out.clamped;
      v = 0.0;
    }
    out.latent_var[i] = v;
  }
  return out;
}

PredictiveDistribution predictive(const FittedModel& model, const Eigen::MatrixXd& queries) {
  return predictive(model.grams, model.state.qf, model.hyper.tau, queries);
}

}  // namespace mgp

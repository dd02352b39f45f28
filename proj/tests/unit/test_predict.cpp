#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "mgp/predict.hpp"
#include "mgp/regression.hpp"
#include "oracles.hpp"

using namespace mgp;

namespace {

// Weighted kernel sum sum_p k_p / g_p on train, train x query and query diag.
struct Combined {
  Eigen::MatrixXd k;
  Eigen::MatrixXd ks;
  Eigen::VectorXd kss;
};

Combined combine(const GramSet& grams, const Eigen::VectorXd& g, const Eigen::MatrixXd& q) {
  const Eigen::Index n = grams.n();
  Combined c{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, q.rows()),
             Eigen::VectorXd::Zero(q.rows())};
  for (std::size_t p = 0; p < grams.size(); ++p) {
    const double w = 1.0 / g[static_cast<Eigen::Index>(p)];
    c.k += w * grams.mat(p);
    for (Eigen::Index j = 0; j < q.rows(); ++j) {
      c.ks.col(j) += w * cross_vec(grams.spec(p), grams.inputs(), q.row(j));
      c.kss[j] += w * kernel_value(grams.spec(p), q.row(j), q.row(j));
    }
  }
  return c;
}

}  // namespace

TEST_CASE("single kernel matches the textbook GP") {
  Rng r(31);
  const Eigen::MatrixXd x = gen::matrix(r, 12, 2);
  const Eigen::VectorXd y = gen::vector(r, 12);
  const Eigen::MatrixXd q = gen::matrix(r, 7, 2);
  const GramSet g = build_gram_set({{KernelFamily::kSquaredExponential, 0.9, 1.4, {}}}, x);
  const double gamma = 0.7;
  const double tau = 5.0;
  VariationalState s = fixed_gamma_state(Eigen::VectorXd::Constant(1, gamma));
  update_q_f(s, g, y, tau);
  const PredictiveDistribution pd = predictive(g, s.qf, tau, q);
  const Combined c = combine(g, Eigen::VectorXd::Constant(1, gamma), q);
  const oracle::GpPred o = oracle::gp_predict(c.k, c.ks, c.kss, 1.0 / tau, y);
  CHECK((pd.mean - o.mean).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((pd.latent_var - o.var).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(pd.noise_var == 1.0 / tau);
  CHECK((pd.total_var() - pd.latent_var).cwiseAbs().maxCoeff() == doctest::Approx(0.2));
}

TEST_CASE("several kernels match the augmented Gram posterior") {
  Rng r(32);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen::integer(r, 3, 15);
    const int p = gen::integer(r, 1, 4);
    const Eigen::MatrixXd x = gen::matrix(r, n, 2);
    const Eigen::VectorXd y = gen::vector(r, n);
    const Eigen::MatrixXd q = gen::matrix(r, 5, 2);
    const GramSet g = build_gram_set(gen::kernels(r, p), x);
    const Eigen::VectorXd gamma = gen::positive(r, p, 0.3, 3.0);
    const double tau = gen::uniform(r, 0.5, 30.0);
    VariationalState s = fixed_gamma_state(gamma);
    update_q_f(s, g, y, tau);
    const PredictiveDistribution pd = predictive(g, s.qf, tau, q);
    const Combined c = combine(g, gamma, q);
    const oracle::GpPred o = oracle::gp_predict(c.k, c.ks, c.kss, 1.0 / tau, y);
    const double scale = 1.0 + c.kss.maxCoeff();
    CHECK((pd.mean - o.mean).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + o.mean.cwiseAbs().maxCoeff()));
    CHECK((pd.latent_var - o.var).cwiseAbs().maxCoeff() < 1e-9 * scale);
    for (Eigen::Index j = 0; j < q.rows(); ++j) {
      CHECK(pd.latent_var[j] >= 0.0);
      CHECK(pd.latent_var[j] <= c.kss[j] * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("training points reproduce the latent posterior") {
  Rng r(33);
  const Eigen::MatrixXd x = gen::matrix(r, 9, 1);
  const Eigen::VectorXd y = gen::vector(r, 9);
  const GramSet g = build_gram_set(
      {{KernelFamily::kLaplacian, 1.0, 1.0, {}}, {KernelFamily::kSquaredExponential, 0.5, 2.0, {}}},
      x, {0.0, 1e-2});
  VariationalState s = fixed_gamma_state(Eigen::Vector2d(1.5, 0.6));
  update_q_f(s, g, y, 2.0);
  const PredictiveDistribution pd = predictive(g, s.qf, 2.0, x);
  CHECK((pd.mean - latent_sum_mean(s.qf)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("duplicate kernels combine like one kernel") {
  Rng r(34);
  const Eigen::MatrixXd x = gen::matrix(r, 10, 2);
  const Eigen::VectorXd y = gen::vector(r, 10);
  const Eigen::MatrixXd q = gen::matrix(r, 6, 2);
  const KernelSpec k{KernelFamily::kSquaredExponential, 1.1, 1.0, {}};
  const GramSet two = build_gram_set({k, k}, x);
  const GramSet one = build_gram_set({k}, x);
  const double g1 = 2.0;
  const double g2 = 3.0;
  VariationalState s2 = fixed_gamma_state(Eigen::Vector2d(g1, g2));
  update_q_f(s2, two, y, 4.0);
  VariationalState s1 = fixed_gamma_state(Eigen::VectorXd::Constant(1, 1.0 / (1.0 / g1 + 1.0 / g2)));
  update_q_f(s1, one, y, 4.0);
  const PredictiveDistribution a = predictive(two, s2.qf, 4.0, q);
  const PredictiveDistribution b = predictive(one, s1.qf, 4.0, q);
  CHECK((a.mean - b.mean).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((a.latent_var - b.latent_var).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("far from data the variance returns to the prior") {
  Rng r(35);
  const Eigen::MatrixXd x = gen::matrix(r, 8, 1);
  const GramSet g = build_gram_set({{KernelFamily::kSquaredExponential, 0.5, 2.0, {}}}, x);
  VariationalState s = fixed_gamma_state(Eigen::VectorXd::Constant(1, 4.0));
  update_q_f(s, g, gen::vector(r, 8), 10.0);
  Eigen::MatrixXd far(1, 1);
  far << 1e3;
  const PredictiveDistribution pd = predictive(g, s.qf, 10.0, far);
  CHECK(pd.mean[0] == doctest::Approx(0.0));
  CHECK(pd.latent_var[0] == doctest::Approx(0.5).epsilon(1e-12));
}

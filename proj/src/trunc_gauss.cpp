#include "mgp/trunc_gauss.hpp"

#include <cmath>
#include <string>

#include "mgp/detail/mills.hpp"
#include "mgp/errors.hpp"
#include "mgp/special_functions.hpp"

namespace mgp {
namespace {

// Moments of N(a, 1) restricted to x >= 0.
TruncatedMoments positive_standard(double a) {
  if (a > -5.0) {
    const double lambda = normal_hazard(a);
    return {a + lambda, 1.0 - lambda * (a + lambda)};
  }
  // With x = -a, hazard = x + delta, delta = 1/(x + c) and
  // c = 2/(x + 3/(x + ...)); the variance 1 - hazard*delta reduces to
  // delta*(c - delta) without cancellation.
  const double x = -a;
  const double c = detail::mills_tail(x, 2);
  const double delta = 1.0 / (x + c);
  return {delta, delta * (c - delta)};
}

void check(const TruncatedGaussian& tg) {
  if (!(tg.sigma2 > 0.0) || !std::isfinite(tg.sigma2) || !std::isfinite(tg.mu)) {
    throw DomainError("truncated Gaussian needs finite mu and sigma2 > 0, got mu=" +
                      std::to_string(tg.mu) + ", sigma2=" +
                      std::to_string(tg.sigma2));
  }
}

}  // namespace

TruncatedMoments trunc_moments(const TruncatedGaussian& tg) {
  check(tg);
  const double sigma = std::sqrt(tg.sigma2);
  const double sign = tg.side == TruncationSide::kPositive ? 1.0 : -1.0;
  // The negative side is the reflection of the positive side at -mu.
  const TruncatedMoments s = positive_standard(sign * tg.mu / sigma);
  return {sign * sigma * s.mean, tg.sigma2 * s.var};
}

double trunc_log_mass(const TruncatedGaussian& tg) {
  check(tg);
  const double sign = tg.side == TruncationSide::kPositive ? 1.0 : -1.0;
  return log_std_normal_cdf(sign * tg.mu / std::sqrt(tg.sigma2));
}

}  // namespace mgp

#include "mgp/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mgp/errors.hpp"
#include "mgp/detail/mills.hpp"

namespace mgp {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Taylor coefficients of 1/Gamma(z) about z = 0 (Abramowitz & Stegun 6.1.34);
// entry k multiplies z^(k+1).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// Temme's auxiliary gamma quantities for |mu| <= 1/2:
//   gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu),  gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
// plus gampl = 1/G(1+mu), gammi = 1/G(1-mu). Built from the even and odd
// parts of the series so gam1 carries no cancellation near mu = 0.
struct TemmeGammas {
  double gam1;
  double gam2;
  double gampl;
  double gammi;
};

TemmeGammas temme_gammas(double mu) {
  const double mu2 = mu * mu;
  double even = 0.0;  // sum over odd k (a_1, a_3, ...) of a_k mu^(k-1)
  double odd = 0.0;   // sum over even k (a_2, a_4, ...) of a_k mu^(k-2)
  for (int k = static_cast<int>(kRecipGamma.size()) - 1; k >= 0; --k) {
    // kRecipGamma[k] is a_{k+1}
    if ((k + 1) % 2 == 1) {
      even = even * mu2 + kRecipGamma[k];
    } else {
      odd = odd * mu2 + kRecipGamma[k];
    }
  }
  TemmeGammas g;
  g.gam1 = -odd;
  g.gam2 = even;
  g.gampl = even + mu * odd;
  g.gammi = even - mu * odd;
  return g;
}

// ln K_mu(x) and K_{mu+1}(x)/K_mu(x) for |mu| <= 1/2.
struct LowOrderK {
  double log_k;
  double ratio;
};

LowOrderK low_order_k(double mu, double x) {
  const double mu2 = mu * mu;
  if (x < 2.0) {
    // Temme's series.
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= kMaxIter; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu2);
      c *= d / di;
      p /= di - mu;
      q /= di + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - di * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return {std::log(sum), sum1 * (2.0 / x) / sum};
  }

  // Steed's continued fraction CF2, scaled by exp(x).
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  const double log_k =
      0.5 * std::log(std::numbers::pi / (2.0 * x)) - x - std::log(s);
  return {log_k, (mu + x + 0.5 - h) / x};
}

void check_bessel_args(double order, double z) {
  if (!std::isfinite(order) || !std::isfinite(z) || !(z > 0.0)) {
    throw DomainError("log_bessel_k: need finite order and z > 0, got order=" +
                      std::to_string(order) + ", z=" + std::to_string(z));
  }
}

}  // namespace

double log_bessel_k(double order, double z) {
  check_bessel_args(order, z);
  const double nu = std::abs(order);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const LowOrderK base = low_order_k(mu, z);

  // Forward recurrence K_{v+1} = K_{v-1} + (2v/z) K_v carried as the ratio
  // r_v = K_{v+1}/K_v, accumulating logs. Stable for K in the forward direction.
  double log_k = base.log_k;
  double r = base.ratio;
  const double two_over_z = 2.0 / z;
  for (int i = 1; i <= nl; ++i) {
    log_k += std::log(r);
    r = (mu + i) * two_over_z + 1.0 / r;
  }
  return log_k;
}

double bessel_ratio(double order, double z) {
  return std::exp(log_bessel_k(order + 1.0, z) - log_bessel_k(order, z));
}

double dlogK_dorder(double order, double z) {
  check_bessel_args(order, z);
  const double h = 1e-4 * std::max(1.0, std::abs(order));
  // Differences are formed pairwise so that negating order negates the
  // result bit for bit.
  const double d1 = log_bessel_k(order + h, z) - log_bessel_k(order - h, z);
  const double d2 =
      log_bessel_k(order + 2.0 * h, z) - log_bessel_k(order - 2.0 * h, z);
  return (8.0 * d1 - d2) / (12.0 * h);
}

double std_normal_pdf(double a) {
  return std::exp(-0.5 * a * a) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double a) {
  return 0.5 * std::erfc(-a / std::numbers::sqrt2);
}

double log_std_normal_cdf(double a) {
  if (a > 0.0) {
    return std::log1p(-0.5 * std::erfc(a / std::numbers::sqrt2));
  }
  if (a > -5.0) {
    return std::log(std_normal_cdf(a));
  }
  // Phi(a) = phi(a) / hazard(a)
  const double x = -a;
  return -0.5 * a * a - 0.5 * std::log(2.0 * std::numbers::pi) -
         std::log(x + detail::mills_tail(x, 1));
}

double normal_hazard(double a) {
  if (a > -5.0) {
    return std_normal_pdf(a) / std_normal_cdf(a);
  }
  const double x = -a;
  return x + detail::mills_tail(x, 1);
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("digamma: need finite x > 0, got " + std::to_string(x));
  }
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Asymptotic series with Bernoulli coefficients.
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 / 12))))));
  return result + std::log(x) - 0.5 * inv - series;
}

namespace detail {

double mills_tail(double x, int k) {
  // Modified Lentz evaluation of k/(x + (k+1)/(x + (k+2)/(x + ...))).
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= kMaxIter; ++j) {
    const double a = k + j - 1;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

}  // namespace detail
}  // namespace mgp

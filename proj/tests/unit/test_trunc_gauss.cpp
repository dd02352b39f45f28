#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "mgp/trunc_gauss.hpp"
#include "oracles.hpp"

using namespace mgp;

namespace {
constexpr TruncationSide kPos = TruncationSide::kPositive;
constexpr TruncationSide kNeg = TruncationSide::kNegative;
}  // namespace

TEST_CASE("examples") {
  const TruncatedMoments p = trunc_moments({0.0, 1.0, kPos});
  CHECK(p.mean == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-15));
  CHECK(p.mean == doctest::Approx(0.79788).epsilon(1e-5));
  CHECK(trunc_moments({0.0, 1.0, kNeg}).mean == -p.mean);
  const TruncatedMoments far = trunc_moments({8.0, 1.0, kPos});
  CHECK(std::abs(far.mean - 8.0) < 1e-8);
  CHECK(std::abs(far.var - 1.0) < 1e-6);
}

TEST_CASE("against quadrature on the grid, both sides") {
  for (double mu : {-30.0, -5.0, -1.0, 0.0, 1.0, 5.0, 30.0}) {
    for (double s2 : {0.25, 1.0, 4.0}) {
      CAPTURE(mu);
      CAPTURE(s2);
      const auto q = oracle::trunc_positive(mu, s2);
      const TruncatedMoments m = trunc_moments({mu, s2, kPos});
      CHECK(std::abs(m.mean - q.mean) <= 1e-8 * std::abs(q.mean));
      CHECK(std::abs(m.var - q.var) <= 1e-8 * q.var);
      const TruncatedMoments n = trunc_moments({-mu, s2, kNeg});
      CHECK(n.mean == -m.mean);
      CHECK(n.var == m.var);
    }
  }
}

TEST_CASE("variance strictly shrinks and the mean moves toward the kept side") {
  Rng r(17);
  for (int i = 0; i < 2000; ++i) {
    const double s2 = std::exp(gen::uniform(r, -4.0, 4.0));
    const double mu = gen::uniform(r, -40.0, 40.0) * std::sqrt(s2);
    const TruncatedMoments m = trunc_moments({mu, s2, kPos});
    CHECK(m.var > 0.0);
    CHECK(m.mean > 0.0);
    // Deep in the kept side the truncation is below double resolution.
    if (mu / std::sqrt(s2) < 8.0) {
      CHECK(m.var < s2);
      CHECK(m.mean > mu);
    } else {
      CHECK(m.var <= s2);
      CHECK(m.mean >= mu);
    }
  }
}

TEST_CASE("far excluded tail") {
  for (double a : {-35.0, -100.0, -1e3}) {
    const TruncatedMoments m = trunc_moments({a, 1.0, kPos});
    // Mean ~ 1/|a|, variance ~ 1/a^2 as a -> -inf.
    CHECK(m.mean == doctest::Approx(-1.0 / a).epsilon(3.0 / (a * a)));
    CHECK(m.var == doctest::Approx(1.0 / (a * a)).epsilon(10.0 / (a * a)));
  }
  CHECK(std::isfinite(trunc_log_mass({-1e3, 1.0, kPos})));
  CHECK(trunc_log_mass({0.0, 4.0, kNeg}) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
}

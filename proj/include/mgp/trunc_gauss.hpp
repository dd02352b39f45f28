#pragma once

namespace mgp {

enum class TruncationSide { kPositive, kNegative };

// N(mu, sigma2) restricted to x >= 0 (positive) or x <= 0 (negative).
struct TruncatedGaussian {
  double mu = 0.0;
  double sigma2 = 1.0;
  TruncationSide side = TruncationSide::kPositive;
};

struct TruncatedMoments {
  double mean;
  double var;
};

// Mean and variance of a one-sided truncated Gaussian. Stays accurate when
// the untruncated mass lies deep on the excluded side (mu/sigma ~ -1e3).
TruncatedMoments trunc_moments(const TruncatedGaussian& tg);

// ln of the retained mass, ln Phi(+-mu/sigma).
double trunc_log_mass(const TruncatedGaussian& tg);

}  // namespace mgp

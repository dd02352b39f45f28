#include "mgp/hyper_opt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgp/errors.hpp"
#include "mgp/special_functions.hpp"

namespace mgp {
namespace {

void require_interior(const GigParams& p, const char* what) {
  if (!(p.chi > 0.0) || !(p.phi > 0.0)) {
    throw DomainError(std::string(what) +
                      ": the general-family equation is singular at chi = 0 or phi = 0");
  }
}

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

SolveResult unchanged(double value, double residual) {
  SolveResult r;
  r.value = value;
  r.residual = residual;
  r.boundary = true;
  return r;
}

// Shared driver: bracket, bisect, flag multiple roots.
SolveResult solve_scalar(const ScalarFn& f, double current, bool geometric, double lower,
                         double upper, const SolveOptions& options) {
  const double f0 = f(current);
  if (std::abs(f0) < options.tol) {
    SolveResult r;
    r.value = current;
    r.residual = f0;
    r.converged = true;
    return r;
  }
  const Bracket b = geometric ? expand_bracket_geometric(f, current, lower, upper)
                              : expand_bracket_additive(f, current, upper);
  if (!b.found) return unchanged(current, f0);
  SolveResult r = bisect(f, b.lo, b.hi, options.tol, options.max_bisections);
  r.multiple_roots = count_sign_changes(f, b.lo, b.hi) > 1;
  return r;
}

}  // namespace

double residual_omega(const GigParams& p, const GammaSuffStats& s) {
  require_interior(p, "residual_omega");
  const double z = std::sqrt(p.chi * p.phi);
  return s.count * 0.5 * std::log(p.phi / p.chi) - s.count * dlogK_dorder(p.omega, z) +
         s.sum_mean_log;
}

double residual_chi(const GigParams& p, const GammaSuffStats& s) {
  require_interior(p, "residual_chi");
  const double z = std::sqrt(p.chi * p.phi);
  return s.count * p.omega / p.chi -
         0.5 * s.count * std::sqrt(p.phi / p.chi) * bessel_ratio(p.omega, z) +
         0.5 * s.sum_mean_inv;
}

double residual_phi(const GigParams& p, const GammaSuffStats& s) {
  require_interior(p, "residual_phi");
  const double z = std::sqrt(p.chi * p.phi);
  return -0.5 * s.count * std::sqrt(p.chi / p.phi) * bessel_ratio(p.omega, z) +
         0.5 * s.sum_mean;
}

double residual_omega_gamma(const GigParams& p, const GammaSuffStats& s) {
  return s.count * (std::log(0.5 * p.phi) - digamma(p.omega)) + s.sum_mean_log;
}

double residual_omega_inverse_gamma(const GigParams& p, const GammaSuffStats& s) {
  return s.count * (digamma(-p.omega) - std::log(0.5 * p.chi)) + s.sum_mean_log;
}

std::string_view hyper_param_name(HyperParam which) {
  switch (which) {
    case HyperParam::kOmega:
      return "omega";
    case HyperParam::kChi:
      return "chi";
    case HyperParam::kPhi:
      return "phi";
  }
  return "?";
}

Bracket expand_bracket_geometric(const ScalarFn& f, double x, double lower, double upper) {
  x = std::clamp(x, lower, upper);
  const double fx = f(x);
  double lo = x;
  double hi = x;
  while (lo > lower || hi < upper) {
    const double next_lo = std::max(lo * 0.5, lower);
    const double next_hi = std::min(hi * 2.0, upper);
    if (next_lo < lo) {
      if (opposite(f(next_lo), fx)) return {next_lo, lo, true};
      lo = next_lo;
    }
    if (next_hi > hi) {
      if (opposite(f(next_hi), fx)) return {hi, next_hi, true};
      hi = next_hi;
    }
  }
  return {lo, hi, false};
}

Bracket expand_bracket_additive(const ScalarFn& f, double x, double bound) {
  x = std::clamp(x, -bound, bound);
  const double fx = f(x);
  double lo = x;
  double hi = x;
  double step = 1.0;
  while (lo > -bound || hi < bound) {
    const double next_lo = std::max(x - step, -bound);
    const double next_hi = std::min(x + step, bound);
    if (next_lo < lo) {
      if (opposite(f(next_lo), fx)) return {next_lo, lo, true};
      lo = next_lo;
    }
    if (next_hi > hi) {
      if (opposite(f(next_hi), fx)) return {hi, next_hi, true};
      hi = next_hi;
    }
    step *= 2.0;
  }
  return {lo, hi, false};
}

SolveResult bisect(const ScalarFn& f, double lo, double hi, double tol, int max_iter) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  SolveResult r;
  if (!opposite(f_lo, f_hi)) {
    const bool lo_root = std::abs(f_lo) <= std::abs(f_hi);
    r.value = lo_root ? lo : hi;
    r.residual = lo_root ? f_lo : f_hi;
    r.converged = std::abs(r.residual) < tol;
    r.boundary = !r.converged;
    return r;
  }
  double best = lo;
  double f_best = f_lo;
  if (std::abs(f_hi) < std::abs(f_lo)) {
    best = hi;
    f_best = f_hi;
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = f(mid);
    ++r.bisections;
    if (std::abs(f_mid) < std::abs(f_best)) {
      best = mid;
      f_best = f_mid;
    }
    if (std::abs(f_mid) < tol) break;
    if (opposite(f_mid, f_lo)) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  r.value = best;
  r.residual = f_best;
  r.converged = std::abs(f_best) < tol;
  return r;
}

int count_sign_changes(const ScalarFn& f, double lo, double hi, int samples) {
  const bool log_spaced = lo > 0.0;
  int changes = 0;
  double prev = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double x = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    const double fx = f(x);
    if (opposite(prev, fx)) ++changes;
    if (fx != 0.0) prev = fx;
  }
  return changes;
}

SolveResult solve_hyper(HyperParam which, const GigParams& current, const GammaSuffStats& stats,
                        FamilyPreset preset, const SolveOptions& options) {
  const LearnableMask mask = learnable(preset);
  const bool allowed = (which == HyperParam::kOmega && mask.omega) ||
                       (which == HyperParam::kChi && mask.chi) ||
                       (which == HyperParam::kPhi && mask.phi);
  if (!allowed) {
    throw ConfigError(std::string(hyper_param_name(which)) + " is pinned by the '" +
                      std::string(preset_name(preset)) + "' preset");
  }
  require_valid(current);
  const double lower = std::max(options.lower, options.floor);

  switch (sub_family(current)) {
    case GigFamily::kGamma: {
      if (which == HyperParam::kOmega) {
        auto f = [&](double w) { return residual_omega_gamma({w, 0.0, current.phi}, stats); };
        return solve_scalar(f, current.omega, true, options.lower, options.upper, options);
      }
      if (which == HyperParam::kPhi) {
        SolveResult r;
        r.value = std::max(2.0 * stats.count * current.omega / stats.sum_mean, options.floor);
        r.residual = -stats.count * current.omega / r.value + 0.5 * stats.sum_mean;
        r.converged = std::abs(r.residual) < options.tol * std::max(1.0, stats.sum_mean);
        return r;
      }
      throw DomainError("chi cannot be learned on the Gamma boundary (chi = 0)");
    }
    case GigFamily::kInverseGamma: {
      if (which == HyperParam::kOmega) {
        // Solve in u = -omega > 0.
        auto f = [&](double u) {
          return residual_omega_inverse_gamma({-u, current.chi, 0.0}, stats);
        };
        SolveResult r = solve_scalar(f, -current.omega, true, options.lower, options.upper,
                                     options);
        r.value = -r.value;
        return r;
      }
      if (which == HyperParam::kChi) {
        SolveResult r;
        r.value = std::max(-2.0 * stats.count * current.omega / stats.sum_mean_inv, options.floor);
        r.residual = stats.count * current.omega / r.value + 0.5 * stats.sum_mean_inv;
        r.converged = std::abs(r.residual) < options.tol * std::max(1.0, stats.sum_mean_inv);
        return r;
      }
      throw DomainError("phi cannot be learned on the inverse-Gamma boundary (phi = 0)");
    }
    case GigFamily::kGeneral:
      break;
  }

  switch (which) {
    case HyperParam::kOmega: {
      auto f = [&](double w) {
        return residual_omega({w, current.chi, current.phi}, stats);
      };
      return solve_scalar(f, current.omega, false, -options.omega_bound, options.omega_bound,
                          options);
    }
    case HyperParam::kChi: {
      auto f = [&](double c) { return residual_chi({current.omega, c, current.phi}, stats); };
      return solve_scalar(f, std::max(current.chi, lower), true, lower, options.upper, options);
    }
    case HyperParam::kPhi: {
      auto f = [&](double v) { return residual_phi({current.omega, current.chi, v}, stats); };
      return solve_scalar(f, std::max(current.phi, lower), true, lower, options.upper, options);
    }
  }
  return {};
}

}  // namespace mgp

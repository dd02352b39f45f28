#pragma once

#include <functional>
#include <string_view>

#include "mgp/gig.hpp"

namespace mgp {

// Sums over kernels of the q(gamma_p) moments.
struct GammaSuffStats {
  double sum_mean = 0.0;
  double sum_mean_inv = 0.0;
  double sum_mean_log = 0.0;
  int count = 0;
};

// Stationarity conditions of the bound in omega, chi and phi for the general
// GIG family (chi > 0, phi > 0):
//   omega: P ln sqrt(phi/chi) - P d ln K_omega(sqrt(chi phi))/d omega + sum <ln g>
//   chi:   P omega / chi - (P/2) sqrt(phi/chi) R_omega(sqrt(chi phi)) + sum <1/g> / 2
//   phi:   -(P/2) sqrt(chi/phi) R_omega(sqrt(chi phi)) + sum <g> / 2
// with R_omega = K_{omega+1}/K_omega. Throw DomainError at chi = 0 or phi = 0.
double residual_omega(const GigParams& params, const GammaSuffStats& stats);
double residual_chi(const GigParams& params, const GammaSuffStats& stats);
double residual_phi(const GigParams& params, const GammaSuffStats& stats);

// Boundary families. Gamma (chi = 0): the omega condition becomes
// P ln(phi/2) - P psi(omega) + sum <ln g>. Inverse Gamma (phi = 0):
// -P ln(chi/2) + P psi(-omega) + sum <ln g>.
double residual_omega_gamma(const GigParams& params, const GammaSuffStats& stats);
double residual_omega_inverse_gamma(const GigParams& params, const GammaSuffStats& stats);

enum class HyperParam { kOmega, kChi, kPhi };
std::string_view hyper_param_name(HyperParam which);

struct SolveOptions {
  double tol = 1e-8;         // on |residual|
  int max_bisections = 200;
  double lower = 1e-8;       // search range for chi, phi and |omega| on boundaries
  double upper = 1e8;
  double omega_bound = 1e3;  // |omega| range in the general family
  double floor = 1e-10;      // chi, phi never drop below this
};

struct SolveResult {
  double value = 0.0;
  double residual = 0.0;
  int bisections = 0;
  bool converged = false;
  bool boundary = false;        // no sign change found; value unchanged
  bool multiple_roots = false;  // more than one sign change on the bracket
};

struct Bracket {
  double lo;
  double hi;
  bool found;
};

using ScalarFn = std::function<double(double)>;

// Grows [x/2^k, x*2^k] (multiplicative) until f changes sign, within
// [lower, upper].
Bracket expand_bracket_geometric(const ScalarFn& f, double x, double lower, double upper);
// Grows [x - 2^k, x + 2^k] until f changes sign, within [-bound, bound].
Bracket expand_bracket_additive(const ScalarFn& f, double x, double bound);

// Bisection on a sign-changing bracket until |f| < tol, max_iter halvings,
// or the bracket collapses to adjacent doubles.
SolveResult bisect(const ScalarFn& f, double lo, double hi, double tol = 1e-8,
                   int max_iter = 200);

// Counts sign changes of f on `samples` points spread over [lo, hi]
// (log-spaced when lo > 0).
int count_sign_changes(const ScalarFn& f, double lo, double hi, int samples = 24);

// ML-II update of one prior parameter with the other two held fixed. Which
// equation applies follows the current sub-family (general, Gamma or inverse
// Gamma). Throws ConfigError if `which` is pinned by the preset.
SolveResult solve_hyper(HyperParam which, const GigParams& current, const GammaSuffStats& stats,
                        FamilyPreset preset, const SolveOptions& options = {});

}  // namespace mgp

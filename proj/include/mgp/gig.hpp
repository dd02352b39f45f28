#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mgp {

// Generalised inverse Gaussian N^-1(omega, chi, phi) on x > 0, density
//   (phi/chi)^(omega/2) / (2 K_omega(sqrt(chi phi))) x^(omega-1)
//       exp(-(chi/x + phi x)/2).
struct GigParams {
  double omega = 1.0;
  double chi = 1.0;
  double phi = 1.0;

  friend bool operator==(const GigParams&, const GigParams&) = default;
};

// Which closed form a parameter triple is evaluated with. chi below
// kBoundaryEps (omega > 0) is the Gamma family, phi below it (omega < 0)
// the inverse-Gamma family.
enum class GigFamily { kGeneral, kGamma, kInverseGamma };

inline constexpr double kBoundaryEps = 1e-12;

// Empty when the triple satisfies the domain table
//   omega > 0: chi >= 0, phi > 0
//   omega = 0: chi > 0,  phi > 0
//   omega < 0: chi > 0,  phi >= 0
// otherwise a description of the violated clause.
std::optional<std::string> validate(const GigParams& params);

// Throws DomainError carrying the validate() message.
void require_valid(const GigParams& params);

GigFamily sub_family(const GigParams& params);

// ln of the normalising constant, so that
// log_density(x) = log_normalizer + (omega-1) ln x - (chi/x + phi x)/2.
double log_normalizer(const GigParams& params);

double log_density(double x, const GigParams& params);

// <x>, <1/x>, <ln x>. A moment that diverges (for example <1/x> of a Gamma
// with omega <= 1) is std::nullopt.
struct GigMoments {
  std::optional<double> mean;
  std::optional<double> mean_inv;
  double mean_log = 0.0;
};

GigMoments moments(const GigParams& params);

// E_q[ln p(x | density)] for x ~ q, given q's moments. Terms whose
// coefficient is exactly zero are skipped, so a divergent moment only
// matters when it is actually weighted.
double expected_log_density(const GigParams& density, const GigMoments& q);

// Differential entropy of the GIG with the given parameters and moments.
double entropy(const GigParams& params, const GigMoments& m);

// Named prior families. Each fixes some of (omega, chi, phi) and leaves the
// rest to type-II ML.
enum class FamilyPreset {
  kFree,
  kHyperbolic,
  kLaplace,
  kGammaVariance,
  kStudentT,
  kCauchy,
};

struct LearnableMask {
  bool omega = false;
  bool chi = false;
  bool phi = false;
};

FamilyPreset parse_preset(std::string_view name);
std::string_view preset_name(FamilyPreset preset);
GigParams default_prior(FamilyPreset preset);
LearnableMask learnable(FamilyPreset preset);

// Throws ConfigError if params are incompatible with the preset's pinned
// values (for example chi != 0 under student-t).
void check_preset(FamilyPreset preset, const GigParams& params);

}  // namespace mgp

#include "mgp/gig.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mgp/errors.hpp"
#include "mgp/special_functions.hpp"

namespace mgp {

std::optional<std::string> validate(const GigParams& p) {
  std::ostringstream msg;
  if (!std::isfinite(p.omega) || !std::isfinite(p.chi) ||
      !std::isfinite(p.phi)) {
    msg << "non-finite parameter (omega=" << p.omega << ", chi=" << p.chi
        << ", phi=" << p.phi << ")";
    return msg.str();
  }
  if (p.omega > 0.0) {
    if (!(p.chi >= 0.0) || !(p.phi > 0.0)) {
      msg << "omega>0 requires chi>=0 and phi>0 (chi=" << p.chi
          << ", phi=" << p.phi << ")";
      return msg.str();
    }
  } else if (p.omega == 0.0) {
    if (!(p.chi > 0.0) || !(p.phi > 0.0)) {
      msg << "omega=0 requires chi>0 and phi>0 (chi=" << p.chi
          << ", phi=" << p.phi << ")";
      return msg.str();
    }
  } else {
    if (!(p.chi > 0.0) || !(p.phi >= 0.0)) {
      msg << "omega<0 requires chi>0 and phi>=0 (chi=" << p.chi
          << ", phi=" << p.phi << ")";
      return msg.str();
    }
  }
  return std::nullopt;
}

void require_valid(const GigParams& params) {
  if (auto violation = validate(params)) {
    throw DomainError("invalid GIG parameters: " + *violation);
  }
}

GigFamily sub_family(const GigParams& p) {
  if (p.omega > 0.0 && p.chi < kBoundaryEps) return GigFamily::kGamma;
  if (p.omega < 0.0 && p.phi < kBoundaryEps) return GigFamily::kInverseGamma;
  return GigFamily::kGeneral;
}

double log_normalizer(const GigParams& p) {
  require_valid(p);
  switch (sub_family(p)) {
    case GigFamily::kGamma:
      // shape omega, rate phi/2
      return p.omega * std::log(0.5 * p.phi) - std::lgamma(p.omega);
    case GigFamily::kInverseGamma:
      // shape -omega, scale chi/2
      return -p.omega * std::log(0.5 * p.chi) - std::lgamma(-p.omega);
    case GigFamily::kGeneral:
      break;
  }
  return 0.5 * p.omega * std::log(p.phi / p.chi) - std::numbers::ln2 -
         log_bessel_k(p.omega, std::sqrt(p.chi * p.phi));
}

double log_density(double x, const GigParams& p) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("GIG log_density: need finite x > 0");
  }
  const GigFamily family = sub_family(p);
  const double chi = family == GigFamily::kGamma ? 0.0 : p.chi;
  const double phi = family == GigFamily::kInverseGamma ? 0.0 : p.phi;
  return log_normalizer(p) + (p.omega - 1.0) * std::log(x) -
         0.5 * (chi / x + phi * x);
}

GigMoments moments(const GigParams& p) {
  require_valid(p);
  GigMoments m;
  switch (sub_family(p)) {
    case GigFamily::kGamma:
      m.mean = 2.0 * p.omega / p.phi;
      if (p.omega > 1.0) m.mean_inv = p.phi / (2.0 * (p.omega - 1.0));
      m.mean_log = digamma(p.omega) - std::log(0.5 * p.phi);
      return m;
    case GigFamily::kInverseGamma:
      if (p.omega < -1.0) m.mean = 0.5 * p.chi / (-p.omega - 1.0);
      m.mean_inv = -2.0 * p.omega / p.chi;
      m.mean_log = std::log(0.5 * p.chi) - digamma(-p.omega);
      return m;
    case GigFamily::kGeneral:
      break;
  }
  const double z = std::sqrt(p.chi * p.phi);
  const double scale = std::sqrt(p.chi / p.phi);
  m.mean = scale * bessel_ratio(p.omega, z);
  m.mean_inv = std::sqrt(p.phi / p.chi) * bessel_ratio(-p.omega, z);
  m.mean_log = std::log(scale) + dlogK_dorder(p.omega, z);
  return m;
}

double expected_log_density(const GigParams& density, const GigMoments& q) {
  const GigFamily family = sub_family(density);
  const double chi = family == GigFamily::kGamma ? 0.0 : density.chi;
  const double phi = family == GigFamily::kInverseGamma ? 0.0 : density.phi;
  double value = log_normalizer(density) + (density.omega - 1.0) * q.mean_log;
  if (chi != 0.0) {
    if (!q.mean_inv) throw NumericalError("E[1/x] diverges under q");
    value -= 0.5 * chi * *q.mean_inv;
  }
  if (phi != 0.0) {
    if (!q.mean) throw NumericalError("E[x] diverges under q");
    value -= 0.5 * phi * *q.mean;
  }
  return value;
}

double entropy(const GigParams& params, const GigMoments& m) {
  return -expected_log_density(params, m);
}

namespace {

struct PresetEntry {
  FamilyPreset preset;
  std::string_view name;
  GigParams prior;
  LearnableMask mask;
};

// Boundary families learn only the parameters that stay off the boundary.
constexpr PresetEntry kPresets[] = {
    {FamilyPreset::kFree, "free", {1.0, 1.0, 1.0}, {true, true, true}},
    {FamilyPreset::kHyperbolic, "hyperbolic", {-1.0, 1.0, 1.0}, {false, true, true}},
    {FamilyPreset::kLaplace, "laplace", {-1.0, 1.0, 0.0}, {false, true, false}},
    {FamilyPreset::kGammaVariance, "gamma-variance", {-1.0, 1.0, 0.0}, {true, true, false}},
    {FamilyPreset::kStudentT, "student-t", {1.0, 0.0, 1.0}, {true, false, true}},
    {FamilyPreset::kCauchy, "cauchy", {0.5, 0.0, 1.0}, {false, false, true}},
};

const PresetEntry& entry(FamilyPreset preset) {
  for (const auto& e : kPresets) {
    if (e.preset == preset) return e;
  }
  throw ConfigError("unknown family preset");
}

}  // namespace

FamilyPreset parse_preset(std::string_view name) {
  for (const auto& e : kPresets) {
    if (e.name == name) return e.preset;
  }
  throw ConfigError("unknown family preset '" + std::string(name) +
                    "' (expected free, hyperbolic, laplace, gamma-variance, "
                    "student-t or cauchy)");
}

std::string_view preset_name(FamilyPreset preset) { return entry(preset).name; }

GigParams default_prior(FamilyPreset preset) { return entry(preset).prior; }

LearnableMask learnable(FamilyPreset preset) { return entry(preset).mask; }

void check_preset(FamilyPreset preset, const GigParams& params) {
  if (auto violation = validate(params)) {
    throw ConfigError("invalid prior for preset '" +
                      std::string(preset_name(preset)) + "': " + *violation);
  }
  const std::string name(preset_name(preset));
  switch (preset) {
    case FamilyPreset::kFree:
      break;
    case FamilyPreset::kHyperbolic:
      if (params.omega != -1.0) throw ConfigError(name + " pins omega = -1");
      break;
    case FamilyPreset::kLaplace:
      if (params.omega != -1.0 || params.phi != 0.0) {
        throw ConfigError(name + " pins omega = -1 and phi = 0");
      }
      break;
    case FamilyPreset::kGammaVariance:
      if (!(params.omega < 0.0) || params.phi != 0.0) {
        throw ConfigError(name + " requires omega < 0 and phi = 0");
      }
      break;
    case FamilyPreset::kStudentT:
      if (!(params.omega > 0.0) || params.chi != 0.0) {
        throw ConfigError(name + " requires omega > 0 and chi = 0");
      }
      break;
    case FamilyPreset::kCauchy:
      if (params.omega != 0.5 || params.chi != 0.0) {
        throw ConfigError(name + " pins omega = 1/2 and chi = 0");
      }
      break;
  }
}

}  // namespace mgp

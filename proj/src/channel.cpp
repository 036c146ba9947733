#include "aap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aap/errors.hpp"

namespace aap {

namespace {

void require_elevation(Degrees phi) {
  if (!(phi.value > 0.0 && phi.value <= 90.0)) {
    throw DomainError("elevation angle must lie in (0, 90] degrees, got " +
                      std::to_string(phi.value));
  }
}

}  // namespace

double Degrees::radians() const { return value * std::numbers::pi / 180.0; }

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

double reference_gain_from_carrier(double carrier_hz) {
  if (!(carrier_hz > 0.0)) {
    throw ConfigError("carrier frequency must be positive");
  }
  const double g = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_hz);
  return g * g;
}

double carrier_from_reference_gain(double g0) {
  if (!(g0 > 0.0)) {
    throw ConfigError("reference gain g0 must be positive");
  }
  return kSpeedOfLight / (4.0 * std::numbers::pi * std::sqrt(g0));
}

EnvironmentParams EnvironmentParams::from_db(double a, double b,
                                             double eta_los_db,
                                             double eta_nlos_db, double g0) {
  EnvironmentParams env{a, b, db_to_ratio(eta_los_db),
                        db_to_ratio(eta_nlos_db), g0};
  env.validate();
  return env;
}

EnvironmentParams EnvironmentParams::suburban() {
  return from_db(4.88, 0.43, 0.1, 21.0, 1.42e-4);
}

void EnvironmentParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ConfigError("environment parameters a and b must be positive");
  }
  if (!(eta_los >= 1.0)) {
    throw ConfigError("LoS excess loss must be >= 0 dB");
  }
  if (!(eta_nlos >= eta_los)) {
    throw ConfigError("N-LoS excess loss must not be below the LoS excess loss");
  }
  if (!(g0 > 0.0)) {
    throw ConfigError("reference gain g0 must be positive");
  }
}

double UeAapGeometry::distance() const { return std::hypot(r, h); }

Degrees UeAapGeometry::elevation() const {
  if (!(h > 0.0)) {
    throw DomainError("AAP altitude must be positive");
  }
  if (!(r >= 0.0)) {
    throw DomainError("horizontal distance must be non-negative");
  }
  if (r == 0.0) {
    return Degrees{90.0};
  }
  return Degrees{std::atan2(h, r) * 180.0 / std::numbers::pi};
}

double path_loss(const UeAapGeometry& geom, double eta,
                 const EnvironmentParams& env) {
  if (!(geom.h > 0.0)) {
    throw DomainError("AAP altitude must be positive");
  }
  if (!(eta > 0.0)) {
    throw DomainError("excess path loss must be positive");
  }
  return eta * (geom.r * geom.r + geom.h * geom.h) / env.g0;
}

double los_probability(Degrees phi, const EnvironmentParams& env) {
  require_elevation(phi);
  return 1.0 / (1.0 + env.a * std::exp(-env.b * (phi.value - env.a)));
}

double min_valid_delta(const EnvironmentParams& env) {
  return 1.0 / (1.0 + env.a * std::exp(env.a * env.b));
}

double max_valid_delta(const EnvironmentParams& env) {
  return los_probability(Degrees{90.0}, env);
}

Degrees phi_from_delta(double delta, const EnvironmentParams& env) {
  if (!(delta > min_valid_delta(env) && delta < 1.0)) {
    throw DomainError("LoS threshold outside the image of the LoS curve: " +
                      std::to_string(delta));
  }
  const double top = max_valid_delta(env);
  if (delta > top) {
    throw DomainError("LoS threshold above the nadir LoS probability: " +
                      std::to_string(delta));
  }
  // 1 - delta has too few bits near the top of the curve to invert reliably.
  if (delta == top) {
    return Degrees{90.0};
  }
  const double phi =
      std::min(90.0, env.a - std::log((1.0 - delta) / (env.a * delta)) / env.b);
  if (!(phi > 0.0 && phi <= 90.0)) {
    throw DomainError("LoS threshold maps outside (0, 90] degrees: " +
                      std::to_string(delta));
  }
  return Degrees{phi};
}

double mean_additional_path_loss(Degrees phi, const EnvironmentParams& env) {
  const double p = los_probability(phi, env);
  return env.eta_nlos + p * (env.eta_los - env.eta_nlos);
}

double mean_path_loss(const UeAapGeometry& geom, const EnvironmentParams& env) {
  return path_loss(geom, mean_additional_path_loss(geom.elevation(), env), env);
}

Coverage coverage_radius(double h, double delta, const EnvironmentParams& env) {
  if (!(h > 0.0)) {
    throw DomainError("AAP altitude must be positive");
  }
  const Degrees phi = phi_from_delta(delta, env);
  Coverage cov;
  cov.phi = phi;
  if (phi.value >= 90.0) {
    cov.degenerate = true;
    return cov;
  }
  const double rad = phi.radians();
  cov.cot_phi = std::cos(rad) / std::sin(rad);
  cov.radius = h * cov.cot_phi;
  return cov;
}

Coverage require_coverage(double h, double delta, const EnvironmentParams& env) {
  Coverage cov = coverage_radius(h, delta, env);
  if (cov.degenerate) {
    throw DegenerateCoverageError("LoS threshold leaves a zero-radius cell");
  }
  return cov;
}

}  // namespace aap

#include "aap/energy.hpp"

#include <string>

#include "aap/errors.hpp"

namespace aap {

namespace {

void require_altitude(double h, const SystemParams& sys) {
  if (!(h >= sys.h_min && h <= sys.h_max)) {
    throw DomainError("altitude " + std::to_string(h) +
                      " m outside the admissible range [" +
                      std::to_string(sys.h_min) + ", " +
                      std::to_string(sys.h_max) + "]");
  }
}

}  // namespace

UavEnergyParams UavEnergyParams::quadrotor() {
  return {315.0, -211.261, 4.917, 275.204};
}

bool UavEnergyParams::is_zero() const {
  return alpha_cl == 0.0 && beta_cl == 0.0 && alpha_ho == 0.0 && beta_ho == 0.0;
}

void UavEnergyParams::validate(const SystemParams& sys) const {
  if (is_zero()) {
    return;
  }
  if (!(alpha_cl > 0.0) || !(alpha_ho > 0.0)) {
    throw ConfigError("UAV energy slopes alpha_cl and alpha_ho must be positive");
  }
  // Affine and increasing, so h_min is the worst case.
  if (!(alpha_cl * sys.h_min + beta_cl > 0.0)) {
    throw ConfigError("climb energy is not positive at h_min");
  }
  if (!(alpha_ho * sys.h_min + beta_ho >= 0.0)) {
    throw ConfigError("hover power is negative at h_min");
  }
}

double climb_energy(double h, const UavEnergyParams& uav) {
  return uav.alpha_cl * h + uav.beta_cl;
}

double hover_energy(double h, const SystemParams& sys,
                    const UavEnergyParams& uav) {
  return (uav.alpha_ho * h + uav.beta_ho) * sys.service_time_t;
}

double uav_only_energy(double h, const SystemParams& sys,
                       const UavEnergyParams& uav) {
  require_altitude(h, sys);
  return climb_energy(h, uav) + hover_energy(h, sys, uav);
}

double total_energy(double h, double mean_tx_power, const SystemParams& sys,
                    const UavEnergyParams& uav) {
  if (!(mean_tx_power >= 0.0)) {
    throw DomainError("mean transmit power must be non-negative");
  }
  return uav_only_energy(h, sys, uav) +
         (mean_tx_power + sys.circuit_power_pc) * sys.service_time_t;
}

}  // namespace aap

#pragma once

#include <cmath>

#include "aap/channel.hpp"
#include "aap/energy.hpp"
#include "aap/uplink.hpp"

namespace fixture {

inline aap::EnvironmentParams env() { return aap::EnvironmentParams::suburban(); }

// Baseline radio parameters at the given target arrived SNR.
inline aap::SystemParams sys(double gamma_db = 15.0) {
  aap::SystemParams s;
  s.noise_psd = aap::db_to_ratio(-174.0) * 1e-3;
  s.ue_density_rho = 0.01;
  s.area_radius_r = 180.48;
  s.set_gamma(aap::db_to_ratio(gamma_db));
  return s;
}

inline aap::UavEnergyParams uav() { return aap::UavEnergyParams::quadrotor(); }

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixture

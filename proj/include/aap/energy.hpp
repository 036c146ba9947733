#pragma once

#include "aap/uplink.hpp"

namespace aap {

// Affine climb and hover energy model of the aerial vehicle.
//   climb: alpha_cl h + beta_cl            (J, spent once)
//   hover: (alpha_ho h + beta_ho) T        (J, over the service period)
struct UavEnergyParams {
  double alpha_cl = 0.0;  // J/m
  double beta_cl = 0.0;   // J
  double alpha_ho = 0.0;  // W/m
  double beta_ho = 0.0;   // W

  // Quadrotor constants of the evaluation setup.
  static UavEnergyParams quadrotor();
  // All-zero coefficients: communication-only energy accounting.
  static UavEnergyParams zero() { return {}; }

  bool is_zero() const;
  // Coefficients must be all zero, or give positive slopes and non-negative
  // climb and hover energy over [h_min, h_max].
  void validate(const SystemParams& sys) const;
};

double climb_energy(double h, const UavEnergyParams& uav);
double hover_energy(double h, const SystemParams& sys, const UavEnergyParams& uav);

// Climb + hover energy. Throws DomainError outside [h_min, h_max].
double uav_only_energy(double h, const SystemParams& sys,
                       const UavEnergyParams& uav);

// uav_only_energy + (mean_tx_power + P_C) T.
double total_energy(double h, double mean_tx_power, const SystemParams& sys,
                    const UavEnergyParams& uav);

}  // namespace aap

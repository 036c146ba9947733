#pragma once

// Uplink power control, expected sum transmit power and data rates of one
// AAP cell under worst-case co-channel interference.

#include "aap/channel.hpp"

namespace aap {

struct SystemParams {
  double bandwidth_w = 20e6;      // W, Hz
  int num_interferers_m = 6;      // neighbouring co-channel AAPs
  double circuit_power_pc = 5.0;  // P_C, W
  double service_time_t = 500.0;  // T, s
  double p_max = 1e-3;            // per-UE cap, W
  double p_target_pa = 0.0;       // target arrived power, W
  double noise_psd = 0.0;         // sigma0^2, W/Hz
  double ue_density_rho = 0.0;    // UEs per m^2
  double h_min = 15.0;            // m
  double h_max = 300.0;           // m
  double area_radius_r = 0.0;     // target disk radius R, m
  int resource_blocks_b = 1;
  double tpc_beta = 1.0;

  // gamma = P_a / (sigma0^2 W)
  double gamma() const;
  void set_gamma(double gamma_linear);
  double noise_power() const { return noise_psd * bandwidth_w; }

  void validate() const;
};

struct CellLoad {
  double n_ue = 0.0;              // rho pi R_a^2, real-valued
  double per_ue_bandwidth = 0.0;  // W / n_ue
};

CellLoad cell_load(double coverage_radius, const SystemParams& sys);

// min(P_max, P_a B L^beta) with the UE's exact mean path loss.
double ue_transmit_power(const UeAapGeometry& geom, const SystemParams& sys,
                         const EnvironmentParams& env);

// Average (uncapped) transmit power P_a L^beta B of one UE.
double ue_mean_transmit_power(const UeAapGeometry& geom, const SystemParams& sys,
                              const EnvironmentParams& env);

// Expected sum transmit power with every UE's excess loss frozen at the cell
// edge value; this is an upper bound on the exact expectation. Requires
// tpc_beta == 1 (the integral is only closed-form for a linear power law).
double expected_sum_power_closed_form(double h, double delta,
                                      const SystemParams& sys,
                                      const EnvironmentParams& env);

struct QuadratureResult {
  double value = 0.0;
  double estimated_relative_error = 0.0;
};

// Expected sum transmit power, integrating the exact r-dependent mean path
// loss over the coverage disk (adaptive Gauss-Kronrod, rel. tol 1e-10).
// Throws QuadratureError when the tolerance is not reached.
QuadratureResult expected_sum_power_exact(double h, double delta,
                                          const SystemParams& sys,
                                          const EnvironmentParams& env);

// Interference-limited SINR shared by every covered UE:
// P_a N / (M P_a N + sigma0^2 W).
double cell_sinr(double n_ue, const SystemParams& sys);

// (W / N) log2(1 + SINR), bits/s.
double per_ue_rate(double h, double delta, const SystemParams& sys,
                   const EnvironmentParams& env);

// N * per-UE rate = W log2(1 + SINR), bits/s.
double sum_rate(double h, double delta, const SystemParams& sys,
                const EnvironmentParams& env);

// W log2(1 + 1/M): the limit of sum_rate as the cell grows.
double sum_rate_saturation(const SystemParams& sys);

// Altitude at which the cell-edge UE needs exactly P_max.
double h_max_power_constraint(double delta, const SystemParams& sys,
                              const EnvironmentParams& env);

}  // namespace aap

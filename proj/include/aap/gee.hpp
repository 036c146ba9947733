#pragma once

// Global energy efficiency (bits per Joule) of one AAP cell and the
// altitude/threshold optimization built on it.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "aap/channel.hpp"
#include "aap/energy.hpp"
#include "aap/uplink.hpp"

namespace aap {

enum class BindingConstraint {
  MinAltitude,
  PowerLimit,
  MaxAltitude,
  Interior,  // grid-search optimum strictly inside the admissible range
};

std::string_view to_string(BindingConstraint c);
BindingConstraint binding_constraint_from_string(std::string_view s);

struct DeploymentSolution {
  double h_opt = 0.0;
  double delta_opt = 0.0;
  double phi_opt_deg = 0.0;
  double r_a = 0.0;
  double gee = 0.0;
  BindingConstraint binding_constraint = BindingConstraint::MinAltitude;
  double h_max_power = 0.0;  // h'_max at delta_opt
  bool audit_passed = false;
  bool fallback_used = false;
  std::size_t feasible_thresholds = 0;
  bool exceeds_area = false;  // r_a > target area radius
};

// T * sum_rate / total energy, with the edge-approximated expected sum power.
// Throws DegenerateCoverageError for a zero-radius cell.
double gee_value(double h, double delta, const SystemParams& sys,
                 const EnvironmentParams& env, const UavEnergyParams& uav);

// lo, lo + step, ... up to hi; hi itself is always the last point.
std::vector<double> linear_grid(double lo, double hi, double step);

// Thresholds delta = P_l(phi) for phi on a uniform degree grid (inclusive).
std::vector<double> delta_grid_from_phi(const EnvironmentParams& env,
                                        double phi_min_deg, double phi_max_deg,
                                        double phi_step_deg);

// phi in [5, 89] degrees at 0.25 degree steps.
std::vector<double> standard_delta_grid(const EnvironmentParams& env);

struct SolveOptions {
  double audit_step_m = 1.0;
  double fallback_step_m = 0.1;
};

// Maximizes GEE over altitude and threshold. The threshold is picked at h_min,
// then GEE(h) at that threshold is audited for strict decrease on a coarse
// altitude grid up to min(h_max, h'_max). If the audit fails, a joint grid
// search over (h, delta) decides instead.
// Thresholds whose h'_max lies below h_min (or whose cell is degenerate) are
// skipped; InfeasibleError when none remain.
DeploymentSolution solve_p1(const SystemParams& sys, const EnvironmentParams& env,
                            const UavEnergyParams& uav,
                            std::span<const double> delta_grid,
                            const SolveOptions& options = {});

struct SumRateDerivative {
  double eq14 = 0.0;               // closed-form d(S/TW)/dh
  double finite_difference = 0.0;  // Richardson-extrapolated central difference
};

// d/dh of sum_rate / W, two ways. With kappa = P_a rho pi cot^2(phi):
//   2 kappa h log2(e) [1/(kappa h^2 + s/(M+1)) - 1/(kappa h^2 + s/M)],
// s = sigma0^2 W. Requires M >= 1.
SumRateDerivative sum_rate_derivative_diag(double h, double delta,
                                           const SystemParams& sys,
                                           const EnvironmentParams& env);

// First index k such that every later relative increment
// (v[j+1] - v[j]) / v[j], j >= k, is below rel_tol. Returns values.size() - 1
// when only the final point qualifies.
std::size_t saturation_knee(std::span<const double> values,
                            double rel_tol = 1e-3);

bool strictly_decreasing(std::span<const double> values);

}  // namespace aap

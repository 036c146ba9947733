#include "aap/gee.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aap/errors.hpp"

namespace aap {

namespace {

struct Candidate {
  double h = 0.0;
  double delta = 0.0;
  double gee = -1.0;
};

// Higher GEE wins; ties go to the lower altitude, then the larger threshold
// (smaller cell). Independent of evaluation order.
bool better(const Candidate& c, const Candidate& best) {
  if (c.gee != best.gee) {
    return c.gee > best.gee;
  }
  if (c.h != best.h) {
    return c.h < best.h;
  }
  return c.delta > best.delta;
}

struct Threshold {
  double delta;
  double h_upper;
  double h_power;
};

}  // namespace

std::string_view to_string(BindingConstraint c) {
  switch (c) {
    case BindingConstraint::MinAltitude:
      return "MIN_ALTITUDE";
    case BindingConstraint::PowerLimit:
      return "POWER_LIMIT";
    case BindingConstraint::MaxAltitude:
      return "MAX_ALTITUDE";
    case BindingConstraint::Interior:
      return "INTERIOR";
  }
  return "UNKNOWN";
}

BindingConstraint binding_constraint_from_string(std::string_view s) {
  for (auto c : {BindingConstraint::MinAltitude, BindingConstraint::PowerLimit,
                 BindingConstraint::MaxAltitude, BindingConstraint::Interior}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  throw std::invalid_argument("unknown binding constraint: " + std::string(s));
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw DomainError("invalid grid bounds");
  }
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    grid.push_back(lo + static_cast<double>(i) * step);
  }
  if (hi - grid.back() > 1e-9 * std::max(1.0, std::abs(hi))) {
    grid.push_back(hi);
  } else {
    grid.back() = std::min(grid.back(), hi);
  }
  return grid;
}

double gee_value(double h, double delta, const SystemParams& sys,
                 const EnvironmentParams& env, const UavEnergyParams& uav) {
  const double bits = sys.service_time_t * sum_rate(h, delta, sys, env);
  const double power = expected_sum_power_closed_form(h, delta, sys, env);
  return bits / total_energy(h, power, sys, uav);
}

std::vector<double> delta_grid_from_phi(const EnvironmentParams& env,
                                        double phi_min_deg, double phi_max_deg,
                                        double phi_step_deg) {
  if (!(phi_step_deg > 0.0) || phi_max_deg < phi_min_deg) {
    throw ConfigError("invalid elevation grid");
  }
  std::vector<double> deltas;
  for (double phi : linear_grid(phi_min_deg, phi_max_deg, phi_step_deg)) {
    deltas.push_back(los_probability(Degrees{phi}, env));
  }
  return deltas;
}

std::vector<double> standard_delta_grid(const EnvironmentParams& env) {
  return delta_grid_from_phi(env, 5.0, 89.0, 0.25);
}

DeploymentSolution solve_p1(const SystemParams& sys, const EnvironmentParams& env,
                            const UavEnergyParams& uav,
                            std::span<const double> delta_grid,
                            const SolveOptions& options) {
  if (delta_grid.empty()) {
    throw ConfigError("threshold grid is empty");
  }
  if (!(options.audit_step_m > 0.0) || !(options.fallback_step_m > 0.0)) {
    throw ConfigError("altitude grid steps must be positive");
  }

  std::vector<Threshold> feasible;
  for (double delta : delta_grid) {
    if (coverage_radius(sys.h_min, delta, env).degenerate) {
      continue;
    }
    const double h_power = h_max_power_constraint(delta, sys, env);
    if (h_power < sys.h_min) {
      continue;
    }
    feasible.push_back({delta, std::min(sys.h_max, h_power), h_power});
  }
  if (feasible.empty()) {
    throw InfeasibleError(
        "no LoS threshold satisfies the UE power limit at h_min");
  }

  // Threshold that maximizes GEE at the minimum altitude.
  Candidate best;
  const Threshold* chosen = nullptr;
  for (const Threshold& t : feasible) {
    const Candidate c{sys.h_min, t.delta,
                      gee_value(sys.h_min, t.delta, sys, env, uav)};
    if (chosen == nullptr || better(c, best)) {
      best = c;
      chosen = &t;
    }
  }

  std::vector<double> audit_values;
  for (double h : linear_grid(sys.h_min, chosen->h_upper, options.audit_step_m)) {
    audit_values.push_back(gee_value(h, chosen->delta, sys, env, uav));
  }

  DeploymentSolution sol;
  sol.audit_passed = strictly_decreasing(audit_values);
  sol.feasible_thresholds = feasible.size();

  if (!sol.audit_passed) {
    sol.fallback_used = true;
    for (const Threshold& t : feasible) {
      for (double h :
           linear_grid(sys.h_min, t.h_upper, options.fallback_step_m)) {
        const Candidate c{h, t.delta, gee_value(h, t.delta, sys, env, uav)};
        if (better(c, best)) {
          best = c;
        }
      }
    }
  }

  const Coverage cov = require_coverage(best.h, best.delta, env);
  sol.h_opt = best.h;
  sol.delta_opt = best.delta;
  sol.phi_opt_deg = cov.phi.value;
  sol.r_a = cov.radius;
  sol.gee = best.gee;
  sol.h_max_power = h_max_power_constraint(best.delta, sys, env);
  sol.exceeds_area = sol.r_a > sys.area_radius_r;

  const double h_upper = std::min(sys.h_max, sol.h_max_power);
  const double tol = 1e-9 * sys.h_max;
  if (std::abs(sol.h_opt - sys.h_min) <= tol) {
    sol.binding_constraint = BindingConstraint::MinAltitude;
  } else if (std::abs(sol.h_opt - h_upper) <= tol) {
    sol.binding_constraint = sol.h_max_power < sys.h_max
                                 ? BindingConstraint::PowerLimit
                                 : BindingConstraint::MaxAltitude;
  } else {
    sol.binding_constraint = BindingConstraint::Interior;
  }
  return sol;
}

SumRateDerivative sum_rate_derivative_diag(double h, double delta,
                                           const SystemParams& sys,
                                           const EnvironmentParams& env) {
  if (sys.num_interferers_m < 1) {
    throw DomainError("derivative diagnostic requires at least one interferer");
  }
  const Coverage cov = require_coverage(h, delta, env);
  const double kappa = sys.p_target_pa * sys.ue_density_rho * std::numbers::pi *
                       cov.cot_phi * cov.cot_phi;
  const double m = sys.num_interferers_m;
  const double s = sys.noise_power();
  const double x = kappa * h * h;
  const double lead = 2.0 * kappa * h * std::numbers::log2e;

  SumRateDerivative out;
  out.eq14 = lead / (x + s / (m + 1.0)) - lead / (x + s / m);

  // Differenced through the deficit log2(1 + 1/M) - S/W, which keeps full
  // precision where the rate has flattened out. Off-range altitudes are fine:
  // the cell radius is linear in h at a fixed threshold.
  auto deficit = [&](double alt) {
    const double n = cell_load(coverage_radius(alt, delta, env).radius, sys).n_ue;
    const double x = sys.p_target_pa * n;
    return -std::log1p(-s / ((m + 1.0) * (m * x + s))) * std::numbers::log2e;
  };
  auto central = [&](double step) {
    return (deficit(h - step) - deficit(h + step)) / (2.0 * step);
  };
  const double step = 1e-3 * h;
  out.finite_difference = (4.0 * central(0.5 * step) - central(step)) / 3.0;
  return out;
}

std::size_t saturation_knee(std::span<const double> values, double rel_tol) {
  if (values.empty()) {
    return 0;
  }
  std::size_t knee = 0;
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    const double inc = (values[j + 1] - values[j]) / values[j];
    if (!(inc < rel_tol)) {
      knee = j + 1;
    }
  }
  return knee;
}

bool strictly_decreasing(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(),
                            [](double a, double b) { return !(b < a); }) ==
         values.end();
}

}  // namespace aap

#include "aap/uplink.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aap/errors.hpp"

namespace aap {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
constexpr unsigned kQuadratureMaxDepth = 30;

}  // namespace

double SystemParams::gamma() const { return p_target_pa / noise_power(); }

void SystemParams::set_gamma(double gamma_linear) {
  p_target_pa = gamma_linear * noise_power();
}

void SystemParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw ConfigError(std::string(name) + " must be positive");
    }
  };
  positive(bandwidth_w, "bandwidth");
  positive(p_max, "p_max");
  positive(p_target_pa, "target arrived power");
  positive(noise_psd, "noise power spectral density");
  positive(ue_density_rho, "UE density");
  positive(h_min, "h_min");
  positive(h_max, "h_max");
  positive(area_radius_r, "area radius");
  if (!(circuit_power_pc >= 0.0)) {
    throw ConfigError("circuit power must be non-negative");
  }
  if (!(service_time_t >= 0.0)) {
    throw ConfigError("service time must be non-negative");
  }
  if (h_min > h_max) {
    throw ConfigError("h_min must not exceed h_max");
  }
  if (num_interferers_m < 0) {
    throw ConfigError("number of interferers must be non-negative");
  }
  if (resource_blocks_b < 1) {
    throw ConfigError("resource block count must be >= 1");
  }
  if (!(tpc_beta > 0.0 && tpc_beta <= 1.0)) {
    throw ConfigError("TPC beta must lie in (0, 1]");
  }
}

CellLoad cell_load(double coverage_radius, const SystemParams& sys) {
  CellLoad load;
  load.n_ue = sys.ue_density_rho * std::numbers::pi * coverage_radius *
              coverage_radius;
  load.per_ue_bandwidth = load.n_ue > 0.0 ? sys.bandwidth_w / load.n_ue : 0.0;
  return load;
}

double ue_mean_transmit_power(const UeAapGeometry& geom, const SystemParams& sys,
                              const EnvironmentParams& env) {
  const double loss = mean_path_loss(geom, env);
  return sys.p_target_pa * sys.resource_blocks_b * std::pow(loss, sys.tpc_beta);
}

double ue_transmit_power(const UeAapGeometry& geom, const SystemParams& sys,
                         const EnvironmentParams& env) {
  return std::min(sys.p_max, ue_mean_transmit_power(geom, sys, env));
}

double expected_sum_power_closed_form(double h, double delta,
                                      const SystemParams& sys,
                                      const EnvironmentParams& env) {
  if (sys.tpc_beta != 1.0) {
    throw DomainError("closed-form sum power requires tpc_beta == 1");
  }
  const Coverage cov = require_coverage(h, delta, env);
  const double eta_edge = mean_additional_path_loss(cov.phi, env);
  const double c2 = cov.cot_phi * cov.cot_phi;
  const double h4 = h * h * h * h;
  return 2.0 * std::numbers::pi * sys.ue_density_rho * sys.p_target_pa *
         sys.resource_blocks_b * eta_edge * c2 * h4 * (c2 + 2.0) /
         (4.0 * env.g0);
}

QuadratureResult expected_sum_power_exact(double h, double delta,
                                          const SystemParams& sys,
                                          const EnvironmentParams& env) {
  const Coverage cov = require_coverage(h, delta, env);
  auto integrand = [&](double r) {
    return 2.0 * std::numbers::pi * r *
           ue_mean_transmit_power(UeAapGeometry{r, h}, sys, env);
  };
  double error = 0.0;
  double l1 = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          integrand, 0.0, cov.radius, kQuadratureMaxDepth,
          kQuadratureTolerance, &error, &l1);
  QuadratureResult out;
  out.value = sys.ue_density_rho * integral;
  out.estimated_relative_error = l1 > 0.0 ? error / l1 : 0.0;
  if (out.estimated_relative_error > kQuadratureTolerance) {
    throw QuadratureError("sum-power quadrature did not converge",
                          out.estimated_relative_error);
  }
  return out;
}

double cell_sinr(double n_ue, const SystemParams& sys) {
  const double arrived = sys.p_target_pa * n_ue;
  return arrived / (sys.num_interferers_m * arrived + sys.noise_power());
}

double per_ue_rate(double h, double delta, const SystemParams& sys,
                   const EnvironmentParams& env) {
  const Coverage cov = require_coverage(h, delta, env);
  const CellLoad load = cell_load(cov.radius, sys);
  return load.per_ue_bandwidth * std::log1p(cell_sinr(load.n_ue, sys)) /
         std::numbers::ln2;
}

double sum_rate(double h, double delta, const SystemParams& sys,
                const EnvironmentParams& env) {
  const Coverage cov = require_coverage(h, delta, env);
  const CellLoad load = cell_load(cov.radius, sys);
  return sys.bandwidth_w * std::log1p(cell_sinr(load.n_ue, sys)) /
         std::numbers::ln2;
}

double sum_rate_saturation(const SystemParams& sys) {
  if (sys.num_interferers_m == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return sys.bandwidth_w * std::log1p(1.0 / sys.num_interferers_m) /
         std::numbers::ln2;
}

double h_max_power_constraint(double delta, const SystemParams& sys,
                              const EnvironmentParams& env) {
  const Degrees phi = phi_from_delta(delta, env);
  const double eta_edge = mean_additional_path_loss(phi, env);
  double c2 = 0.0;
  if (phi.value < 90.0) {
    const double cot = 1.0 / std::tan(phi.radians());
    c2 = cot * cot;
  }
  return std::sqrt(sys.p_max * env.g0 /
                   (sys.p_target_pa * eta_edge * (1.0 + c2)));
}

}  // namespace aap

// End-to-end acceptance checks. One line per check; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "aap/channel.hpp"
#include "aap/commands.hpp"
#include "aap/energy.hpp"
#include "aap/gee.hpp"
#include "aap/montecarlo.hpp"
#include "aap/packing.hpp"
#include "aap/scenario.hpp"
#include "aap/uplink.hpp"

using namespace aap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Check = std::function<Outcome(const Scenario&)>;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> ratio_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

Outcome altitude_monotonicity(const Scenario& sc) {
  int curves = 0;
  int bad = 0;
  for (double gamma_db : {0.0, 15.0, 30.0}) {
    const Scenario s = sc.with_gamma_db(gamma_db);
    for (double delta : s.sweeps.delta_list) {
      std::vector<double> v;
      for (double h : linear_grid(15.0, 300.0, 1.0)) {
        v.push_back(gee_value(h, delta, s.system, s.environment, s.uav));
      }
      ++curves;
      bad += (v.size() == 286 && strictly_decreasing(v)) ? 0 : 1;
    }
  }
  return {bad == 0, std::to_string(curves - bad) + "/" + std::to_string(curves) +
                        " curves strictly decreasing over 286 altitudes"};
}

Outcome ablation_plateau(const Scenario& sc) {
  const Scenario s = sc.with_gamma_db(0.0);
  const UavEnergyParams zero = UavEnergyParams::zero();
  double worst = 0.0;
  bool tail_ok = true;
  for (double delta : s.sweeps.delta_list) {
    const double at_min = gee_value(15.0, delta, s.system, s.environment, zero);
    double best = at_min;
    for (double h : linear_grid(15.0, 100.0, 0.5)) {
      best = std::max(best, gee_value(h, delta, s.system, s.environment, zero));
    }
    worst = std::max(worst, (best - at_min) / at_min);
    tail_ok = tail_ok && gee_value(300.0, delta, s.system, s.environment, zero) < at_min;
  }
  return {worst < 0.01 && tail_ok,
          "max over [15,100] m exceeds GEE(15) by at most " + fmt("%.3e", worst) +
              (tail_ok ? ", GEE(300) < GEE(15) for all thresholds"
                       : ", GEE(300) >= GEE(15) somewhere")};
}

Outcome sum_power_bound(const Scenario& sc) {
  const SystemParams& sys = sc.system;
  const EnvironmentParams& env = sc.environment;
  double worst_edge = 0.0;
  double min_gap = 1e300;
  for (double h : linear_grid(15.0, 300.0, 71.25)) {
    for (double delta : {0.2, 0.39, 0.58, 0.77, 0.96}) {
      const double closed = expected_sum_power_closed_form(h, delta, sys, env);
      const double edge = quadrature_sum_power(h, delta, sys, env, EtaMode::EdgeConstant);
      const double exact = expected_sum_power_exact(h, delta, sys, env).value;
      worst_edge = std::max(worst_edge, std::abs(edge - closed) / closed);
      min_gap = std::min(min_gap, (closed - exact) / closed);
    }
  }
  EnvironmentParams flat = env;
  flat.eta_nlos = flat.eta_los;
  double flat_gap = 0.0;
  for (double delta : {0.2, 0.5, 0.9}) {
    const double closed = expected_sum_power_closed_form(100.0, delta, sys, flat);
    flat_gap = std::max(flat_gap,
                        std::abs(closed - expected_sum_power_exact(100.0, delta, sys, flat).value) /
                            closed);
  }
  return {worst_edge < 1e-9 && min_gap > 0.0 && flat_gap < 1e-9,
          "edge-quadrature rel err " + fmt("%.2e", worst_edge) + ", min (closed-exact)/closed " +
              fmt("%.3e", min_gap) + ", equal-loss gap " + fmt("%.1e", flat_gap)};
}

Outcome void_identity(const Scenario&) {
  double worst = 0.0;
  for (int n = 3; n <= 50; ++n) {
    worst = std::max(worst, std::abs(n * prop2_bracket(n) -
                                     n * (std::numbers::pi + void_edge(n) + void_center(n))));
  }
  return {worst < 1e-12, "max abs error " + fmt("%.2e", worst) + " over n = 3..50"};
}

Outcome hexagonal_case(const Scenario& sc) {
  const double r_a = sc.system.area_radius_r / 3.0;
  const PlacementPlan p = run_algorithm1(3.0 * r_a, r_a);
  const bool pattern = p.levels.size() == 2 && p.levels[0].count == 6 && p.levels[1].count == 1;
  const double margin = p.feasibility.worst_pairwise_margin.value_or(1e300);
  const bool ok = pattern && p.total_aaps == 7 &&
                  std::abs(p.packing_density - 7.0 / 9.0) < 1e-12 && p.feasibility.all_ok() &&
                  std::abs(margin) < 1e-9 * r_a;
  return {ok, "levels " + std::to_string(p.levels.size()) + ", density " +
                  fmt("%.15f", p.packing_density) + ", worst pairwise margin " +
                  fmt("%.2e", margin) + " m"};
}

Outcome plan_feasibility(const Scenario& sc) {
  const double r_a = solve_scenario(sc).r_a;
  int bad = 0;
  for (double ratio : ratio_grid(1.0, 10.0, 200)) {
    const FeasibilityReport r = run_algorithm1(ratio * r_a, r_a).feasibility;
    bad += (r.pairwise_ok && r.containment_ok && r.level_containment_ok) ? 0 : 1;
  }
  return {bad == 0, std::to_string(200 - bad) + "/200 plans feasible"};
}

Outcome density_band(const Scenario& sc) {
  Scenario s = sc;
  s.sweeps.ratio_count = 0;
  CommandOptions opt;
  const CommandResult report = cmd_density_sweep(s, opt);
  const std::string& csv = report.files.at(0).content;
  bool references_listed = true;
  for (const ReferenceDensity& ref : reference_densities()) {
    const std::string density = std::to_string(ref.density).substr(0, 6);
    references_listed = references_listed && csv.find(density) != std::string::npos &&
                        csv.find("comparison only") != std::string::npos;
  }

  double lo = 1.0;
  double hi = 0.0;
  int outside = 0;
  std::string first_out;
  std::string last_out;
  for (double ratio : ratio_grid(3.0, 10.0, 200)) {
    const double d = run_algorithm1(ratio, 1.0).packing_density;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    if (d < 0.6 || d > 0.8) {
      ++outside;
      if (first_out.empty()) {
        first_out = fmt("%.4f", ratio);
      }
      last_out = fmt("%.4f", ratio);
    }
  }
  std::ostringstream detail;
  detail << "density range [" << fmt("%.4f", lo) << ", " << fmt("%.4f", hi) << "] over 200 ratios";
  if (outside > 0) {
    detail << "; " << outside << " outside [0.6, 0.8] (R/R_a " << first_out << " .. " << last_out
           << ")";
  }
  detail << (references_listed ? "; reference densities reported" : "; reference rows missing");
  for (const ReferenceDensity& ref : reference_densities()) {
    const PlacementPlan p = run_algorithm1(ref.area_radius, ref.implied_r_a);
    detail << "; R=" << fmt("%.2f", ref.area_radius) << " m: " << fmt("%.4f", p.packing_density)
           << " vs " << fmt("%.4f", ref.density);
  }
  return {outside == 0 && references_listed, detail.str()};
}

Outcome round_trips(const Scenario& sc) {
  const EnvironmentParams& env = sc.environment;
  double inv = 0.0;
  for (double delta : ratio_grid(0.2, 0.999, 50)) {
    inv = std::max(inv, std::abs(los_probability(phi_from_delta(delta, env), env) - delta));
  }
  double edge = 0.0;
  for (double delta : ratio_grid(0.2, 0.99, 20)) {
    const double h = h_max_power_constraint(delta, sc.system, env);
    const double r_a = coverage_radius(h, delta, env).radius;
    edge = std::max(edge, std::abs(ue_mean_transmit_power({r_a, h}, sc.system, env) -
                                   sc.system.p_max) /
                              sc.system.p_max);
  }
  return {inv < 1e-9 && edge < 1e-9,
          "inversion err " + fmt("%.2e", inv) + ", edge power rel err " + fmt("%.2e", edge)};
}

Outcome monte_carlo(const Scenario& sc) {
  const DeploymentSolution sol = solve_scenario(sc);
  const double h = sc.system.h_min;
  const double exact = quadrature_sum_power(h, sol.delta_opt, sc.system, sc.environment,
                                            EtaMode::PerUe);
  const TrialStats a =
      run_sum_power_trials(h, sol.delta_opt, sc.system, sc.environment, 2024, 10000, 4);
  const TrialStats b =
      run_sum_power_trials(h, sol.delta_opt, sc.system, sc.environment, 2024, 10000, 1);
  const double err = std::abs(a.mean_uncapped - exact) / exact;
  const bool same = a.mean_uncapped == b.mean_uncapped && a.mean_capped == b.mean_capped &&
                    a.stderr_uncapped == b.stderr_uncapped;
  return {err < 0.01 && same, "rel err " + fmt("%.3e", err) + " over 10^4 trials, rerun " +
                                  (same ? "bit-identical" : "DIFFERS")};
}

Outcome threshold_saturation(const Scenario& sc) {
  const auto phis = linear_grid(5.0, 89.0, 0.25);
  std::ostringstream detail;
  bool ok = true;
  for (double gamma_db : {0.0, 15.0, 30.0}) {
    const Scenario s = sc.with_gamma_db(gamma_db);
    std::vector<double> g;
    std::vector<double> g0;
    std::vector<double> used;
    for (double phi : phis) {
      const double delta = los_probability(Degrees{phi}, s.environment);
      if (coverage_radius(s.system.h_min, delta, s.environment).degenerate) {
        continue;
      }
      used.push_back(phi);
      g.push_back(gee_value(s.system.h_min, delta, s.system, s.environment, s.uav));
      g0.push_back(gee_value(s.system.h_min, delta, s.system, s.environment,
                             UavEnergyParams::zero()));
    }
    const std::size_t k = saturation_knee(g);
    const std::size_t k0 = saturation_knee(g0);
    bool flat = k + 1 < g.size() && k0 + 1 < g0.size();
    for (std::size_t j = k; j + 1 < g.size(); ++j) {
      flat = flat && (g[j + 1] - g[j]) / g[j] < 1e-3;
    }
    for (std::size_t j = k0; j + 1 < g0.size(); ++j) {
      flat = flat && (g0[j + 1] - g0[j]) / g0[j] < 1e-3;
    }
    ok = ok && flat && used[k] <= used[k0];
    detail << (gamma_db == 0.0 ? "" : "; ") << fmt("%g", gamma_db) << " dB knee "
           << fmt("%g", used[k]) << " vs " << fmt("%g", used[k0]) << " deg";
  }
  return {ok, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double max_seconds;  // 0: no limit
  Check run;
};

}  // namespace

int main() {
  const Scenario sc = load_scenario(std::string(AAP_SOURCE_DIR) + "/scenarios/baseline.ini");
  const std::vector<Criterion> criteria{
      {1, "GEE strictly decreasing in altitude", 10.0, altitude_monotonicity},
      {2, "GEE plateau without UAV energy", 0.0, ablation_plateau},
      {3, "sum-power closed form vs quadrature", 5.0, sum_power_bound},
      {4, "void-area identity", 0.0, void_identity},
      {5, "hexagonal seven-disk placement", 0.0, hexagonal_case},
      {6, "placement feasibility sweep", 10.0, plan_feasibility},
      {7, "packing density band", 0.0, density_band},
      {8, "threshold and power-limit round trips", 0.0, round_trips},
      {9, "Monte-Carlo convergence and determinism", 60.0, monte_carlo},
      {10, "threshold saturation knee shift", 0.0, threshold_saturation},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(sc);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.max_seconds > 0.0 && secs >= c.max_seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt("%g", c.max_seconds) + " s budget";
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
  }
  std::printf("%zu/%zu passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

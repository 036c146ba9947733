#include "aap/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "aap/channel.hpp"
#include "aap/energy.hpp"
#include "aap/errors.hpp"
#include "aap/montecarlo.hpp"
#include "aap/output.hpp"
#include "aap/uplink.hpp"

namespace aap {

using nlohmann::json;

namespace {

std::string join_counts(const PlacementPlan& plan) {
  std::string out;
  for (const PackingLevel& l : plan.levels) {
    if (!out.empty()) {
      out += ';';
    }
    out += std::to_string(l.count);
  }
  return out;
}

std::string flag(bool b) { return b ? "1" : "0"; }

double resolve_r_a(const Scenario& sc, const CommandOptions& opt,
                   std::string& source) {
  if (opt.r_a) {
    if (!(*opt.r_a > 0.0)) {
      throw ConfigError("--ra must be positive");
    }
    source = "override";
    return *opt.r_a;
  }
  source = "solve";
  return solve_scenario(sc).r_a;
}

unsigned default_workers(const CommandOptions& opt) {
  if (opt.workers > 1) {
    return opt.workers;
  }
  return std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
}

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass;
};

}  // namespace

const std::vector<ReferenceDensity>& reference_densities() {
  static const std::vector<ReferenceDensity> refs = [] {
    std::vector<ReferenceDensity> v{
        {180.48, 0.7896, {6, 1}, 0.0},
        {252.68, 0.6844, {8, 3}, 0.0},
    };
    for (ReferenceDensity& r : v) {
      int total = 0;
      for (int c : r.level_counts) {
        total += c;
      }
      r.implied_r_a = r.area_radius * std::sqrt(r.density / total);
    }
    return v;
  }();
  return refs;
}

const ReferenceDensity* find_reference_density(double area_radius) {
  for (const ReferenceDensity& r : reference_densities()) {
    if (std::abs(r.area_radius - area_radius) <= 1e-9 * r.area_radius) {
      return &r;
    }
  }
  return nullptr;
}

DeploymentSolution solve_scenario(const Scenario& sc) {
  const auto grid = delta_grid_from_phi(sc.environment, sc.sweeps.phi_min_deg,
                                        sc.sweeps.phi_max_deg,
                                        sc.sweeps.phi_step_deg);
  return solve_p1(sc.system, sc.environment, sc.uav, grid);
}

CommandResult cmd_altitude_sweep(const Scenario& sc, const CommandOptions&) {
  CsvTable table({"gamma_db", "delta", "h_m", "gee_bits_per_j", "sum_rate_bps",
                  "energy_total_j", "energy_uav_j", "sum_power_w",
                  "power_feasible", "gee_ea0_bits_per_j", "energy_total_ea0_j"});
  const auto heights = linear_grid(sc.sweeps.altitude_min, sc.sweeps.altitude_max,
                                   sc.sweeps.altitude_step);
  const UavEnergyParams zero = UavEnergyParams::zero();
  std::size_t feasible_rows = 0;
  for (double gamma_db : sc.gamma_db_values()) {
    const Scenario s = sc.with_gamma_db(gamma_db);
    const SystemParams& sys = s.system;
    for (double delta : s.sweeps.delta_list) {
      if (coverage_radius(sys.h_min, delta, s.environment).degenerate) {
        throw ConfigError("delta " + format_number(delta) + " gives a zero-radius cell");
      }
      const double h_power = h_max_power_constraint(delta, sys, s.environment);
      for (double h : heights) {
        const double rate = sum_rate(h, delta, sys, s.environment);
        const double power =
            expected_sum_power_closed_form(h, delta, sys, s.environment);
        const double energy = total_energy(h, power, sys, s.uav);
        const double energy0 = total_energy(h, power, sys, zero);
        const bool feasible = h <= h_power;
        feasible_rows += feasible ? 1 : 0;
        table.add_row({format_number(gamma_db), format_number(delta),
                       format_number(h),
                       format_number(sys.service_time_t * rate / energy),
                       format_number(rate), format_number(energy),
                       format_number(uav_only_energy(h, sys, s.uav)),
                       format_number(power), flag(feasible),
                       format_number(sys.service_time_t * rate / energy0),
                       format_number(energy0)});
      }
    }
  }
  if (feasible_rows == 0) {
    throw InfeasibleError("no altitude in the sweep satisfies the UE power limit");
  }
  CommandResult res;
  res.files.push_back({"altitude_sweep.csv", table.str()});
  res.summary = std::to_string(table.rows()) + " altitude rows";
  return res;
}

CommandResult cmd_threshold_sweep(const Scenario& sc, const CommandOptions&) {
  CsvTable table({"gamma_db", "phi_deg", "delta", "gee_bits_per_j",
                  "gee_ea0_bits_per_j", "r_a_m", "n_ue", "power_feasible"});
  CsvTable knees({"gamma_db", "knee_phi_deg", "knee_phi_ea0_deg",
                  "max_gee_phi_deg", "max_gee_ea0_phi_deg"});
  const auto phis = linear_grid(sc.sweeps.phi_min_deg, sc.sweeps.phi_max_deg,
                                sc.sweeps.phi_step_deg);
  const UavEnergyParams zero = UavEnergyParams::zero();
  std::size_t feasible_rows = 0;
  for (double gamma_db : sc.gamma_db_values()) {
    const Scenario s = sc.with_gamma_db(gamma_db);
    const SystemParams& sys = s.system;
    const double h = sys.h_min;
    std::vector<double> gee;
    std::vector<double> gee0;
    std::vector<double> used_phis;
    for (double phi : phis) {
      const double delta = los_probability(Degrees{phi}, s.environment);
      const Coverage cov = coverage_radius(h, delta, s.environment);
      if (cov.degenerate) {
        continue;
      }
      const double g = gee_value(h, delta, sys, s.environment, s.uav);
      const double g0 = gee_value(h, delta, sys, s.environment, zero);
      const bool feasible = h_max_power_constraint(delta, sys, s.environment) >= h;
      feasible_rows += feasible ? 1 : 0;
      gee.push_back(g);
      gee0.push_back(g0);
      used_phis.push_back(phi);
      table.add_row({format_number(gamma_db), format_number(phi),
                     format_number(delta), format_number(g), format_number(g0),
                     format_number(cov.radius),
                     format_number(cell_load(cov.radius, sys).n_ue),
                     flag(feasible)});
    }
    if (gee.empty()) {
      continue;
    }
    const auto argmax = [&](const std::vector<double>& v) {
      return used_phis[static_cast<std::size_t>(
          std::max_element(v.begin(), v.end()) - v.begin())];
    };
    knees.add_row({format_number(gamma_db),
                   format_number(used_phis[saturation_knee(gee)]),
                   format_number(used_phis[saturation_knee(gee0)]),
                   format_number(argmax(gee)), format_number(argmax(gee0))});
  }
  if (feasible_rows == 0) {
    throw InfeasibleError("no threshold in the sweep satisfies the UE power limit at h_min");
  }
  CommandResult res;
  res.files.push_back({"threshold_sweep.csv", table.str()});
  res.files.push_back({"threshold_knees.csv", knees.str()});
  res.summary = std::to_string(table.rows()) + " threshold rows";
  return res;
}

CommandResult cmd_solve(const Scenario& sc, const CommandOptions&) {
  const DeploymentSolution sol = solve_scenario(sc);
  json j = to_json(sol);
  j["gamma_db"] = sc.gamma_db();
  j["scenario"] = sc.name;
  CommandResult res;
  res.files.push_back({"solution.json", j.dump(2) + "\n"});
  std::ostringstream msg;
  msg << "h_opt=" << format_number(sol.h_opt) << " m, phi=" << format_number(sol.phi_opt_deg)
      << " deg, R_a=" << format_number(sol.r_a) << " m, "
      << to_string(sol.binding_constraint)
      << (sol.fallback_used ? " (grid-search fallback)" : "");
  res.summary = msg.str();
  return res;
}

CommandResult cmd_place(const Scenario& sc, const CommandOptions& opt) {
  std::string source;
  const double r_a = resolve_r_a(sc, opt, source);
  const double area = sc.system.area_radius_r;
  if (area < r_a) {
    throw InfeasibleError("target area radius " + format_number(area) +
                          " m is smaller than the coverage radius " +
                          format_number(r_a) + " m");
  }
  const PlacementPlan plan = run_algorithm1(area, r_a);
  json j = to_json(plan);
  j["r_a_source"] = source;
  if (const ReferenceDensity* ref = find_reference_density(area)) {
    j["reference"] = {
        {"density", ref->density},
        {"level_counts", ref->level_counts},
        {"implied_r_a_m", ref->implied_r_a},
        {"note",
         "reference value for this radius; its coverage radius is unstated, "
         "so it is reported for comparison only"},
    };
  }
  CsvTable centers({"level", "index", "x_m", "y_m"});
  for (const PackingLevel& l : plan.levels) {
    for (std::size_t i = 0; i < l.centers.size(); ++i) {
      centers.add_row({std::to_string(l.level_index), std::to_string(i),
                       format_number(l.centers[i].x), format_number(l.centers[i].y)});
    }
  }
  CommandResult res;
  res.files.push_back({"plan.json", j.dump(2) + "\n"});
  res.files.push_back({"centers.csv", centers.str()});
  res.summary = "levels (" + join_counts(plan) + "), " +
                std::to_string(plan.total_aaps) + " AAPs, density " +
                format_number(plan.packing_density) +
                (plan.feasibility.all_ok() ? "" : ", FEASIBILITY VIOLATION");
  if (!plan.feasibility.all_ok()) {
    res.exit_code = kExitValidation;
  }
  return res;
}

CommandResult cmd_density_sweep(const Scenario& sc, const CommandOptions& opt) {
  std::string source;
  const double r_a = resolve_r_a(sc, opt, source);
  CsvTable table({"source", "area_radius_m", "r_a_m", "ratio", "total_aaps",
                  "packing_density", "level_counts", "verified",
                  "reference_density", "note"});
  bool all_verified = true;
  auto add = [&](const std::string& src, double area, double radius,
                 const ReferenceDensity* ref, const std::string& note) {
    std::string ref_cell = ref ? format_number(ref->density) : "";
    if (area < radius) {
      table.add_row({src, format_number(area), format_number(radius),
                     format_number(area / radius), "0", "0", "", "0", ref_cell,
                     "area smaller than one cell"});
      return;
    }
    const PlacementPlan plan = run_algorithm1(area, radius);
    const bool ok = plan.feasibility.all_ok();
    all_verified = all_verified && ok;
    table.add_row({src, format_number(area), format_number(radius),
                   format_number(area / radius), std::to_string(plan.total_aaps),
                   format_number(plan.packing_density), join_counts(plan),
                   flag(ok), ref_cell, note});
  };
  for (double area : sc.sweeps.area_radius_list) {
    const ReferenceDensity* ref = find_reference_density(area);
    add(source, area, r_a, ref,
        ref ? "reference coverage radius unstated: comparison only" : "");
    if (ref) {
      add("reference_implied_r_a", area, ref->implied_r_a, ref,
          "r_a implied by reference density and count");
    }
  }
  if (sc.sweeps.ratio_count > 0) {
    const std::size_t n = sc.sweeps.ratio_count;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio =
          n == 1 ? sc.sweeps.ratio_min
                 : sc.sweeps.ratio_min + (sc.sweeps.ratio_max - sc.sweeps.ratio_min) *
                                             static_cast<double>(i) /
                                             static_cast<double>(n - 1);
      add("ratio_grid", ratio * r_a, r_a, nullptr, "");
    }
  }
  CommandResult res;
  res.files.push_back({"density_sweep.csv", table.str()});
  res.summary = std::to_string(table.rows()) + " density rows";
  if (!all_verified) {
    res.exit_code = kExitValidation;
    res.summary += ", FEASIBILITY VIOLATION";
  }
  return res;
}

CommandResult cmd_validate(const Scenario& sc, const CommandOptions& opt) {
  const EnvironmentParams& env = sc.environment;
  const SystemParams& sys = sc.system;
  std::vector<Check> checks;

  {
    double worst = 0.0;
    for (int n = 3; n <= 50; ++n) {
      worst = std::max(worst, std::abs(n * prop2_bracket(n) -
                                       n * (std::numbers::pi + void_edge(n) +
                                            void_center(n))));
    }
    checks.push_back({"void_area_identity_abs_error", worst, 1e-12, worst < 1e-12});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double delta = 0.2 + (0.999 - 0.2) * i / 49.0;
      worst = std::max(worst,
                       std::abs(los_probability(phi_from_delta(delta, env), env) - delta));
    }
    checks.push_back({"los_inversion_abs_error", worst, 1e-9, worst < 1e-9});
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double delta = 0.2 + (0.99 - 0.2) * i / 19.0;
      const double h = h_max_power_constraint(delta, sys, env);
      const Coverage cov = require_coverage(h, delta, env);
      const double p = sys.p_target_pa * mean_path_loss({cov.radius, h}, env);
      worst = std::max(worst, std::abs(p - sys.p_max) / sys.p_max);
    }
    checks.push_back({"edge_power_at_h_max_rel_error", worst, 1e-9, worst < 1e-9});
  }
  {
    double worst_closed = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    const auto heights = linear_grid(sys.h_min, sys.h_max, (sys.h_max - sys.h_min) / 4.0);
    for (double h : heights) {
      for (int i = 0; i < 5; ++i) {
        const double delta = 0.2 + 0.19 * i;
        const double closed = expected_sum_power_closed_form(h, delta, sys, env);
        const double edge =
            quadrature_sum_power(h, delta, sys, env, EtaMode::EdgeConstant);
        const double exact = quadrature_sum_power(h, delta, sys, env, EtaMode::PerUe);
        worst_closed = std::max(worst_closed, std::abs(edge - closed) / closed);
        min_gap = std::min(min_gap, (closed - exact) / closed);
      }
    }
    checks.push_back({"closed_form_vs_edge_quadrature_rel_error", worst_closed, 1e-9,
                      worst_closed < 1e-9});
    const bool equal_eta = env.eta_los == env.eta_nlos;
    checks.push_back({"closed_form_minus_exact_min_rel_gap", min_gap, 0.0,
                      equal_eta ? min_gap > -1e-12 : min_gap > 0.0});
  }
  {
    const std::uint64_t seed = opt.seed.value_or(sc.seeds.front());
    const std::size_t trials = opt.trials.value_or(sc.trials);
    double delta = sc.sweeps.delta_list.front();
    try {
      delta = solve_scenario(sc).delta_opt;
    } catch (const InfeasibleError&) {
    }
    const unsigned workers = default_workers(opt);
    const GapReport rep =
        approximation_gap_report(sys.h_min, delta, sys, env, trials, seed, workers);
    const double err = std::abs(rep.mc_relative_error);
    checks.push_back({"monte_carlo_rel_error", err, 0.01, err < 0.01});
    const TrialStats again =
        run_sum_power_trials(sys.h_min, delta, sys, env, seed, trials, 1);
    const bool same = again.mean_uncapped == rep.stats.mean_uncapped &&
                      again.mean_capped == rep.stats.mean_capped &&
                      again.stderr_uncapped == rep.stats.stderr_uncapped;
    checks.push_back({"monte_carlo_determinism", same ? 0.0 : 1.0, 0.0, same});
    checks.push_back({"approximation_rel_gap", rep.relative_gap, 0.0,
                      rep.relative_gap >= -1e-12});
  }
  {
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
      const double ratio = 1.0 + 9.0 * i / 199.0;
      if (!run_algorithm1(ratio, 1.0).feasibility.all_ok()) {
        ++failures;
      }
    }
    checks.push_back({"placement_feasibility_failures", static_cast<double>(failures),
                      0.0, failures == 0});
  }

  CsvTable table({"check", "value", "limit", "pass"});
  bool all = true;
  for (const Check& c : checks) {
    table.add_row({c.name, format_number(c.value), format_number(c.limit), flag(c.pass)});
    all = all && c.pass;
  }
  CommandResult res;
  res.files.push_back({"validation.csv", table.str()});
  res.exit_code = all ? kExitOk : kExitValidation;
  res.summary = all ? "validation passed" : "validation FAILED";
  return res;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-efficient 3-D placement of UAV aerial access points"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> r_a;

  using Handler = CommandResult (*)(const Scenario&, const CommandOptions&);
  const std::vector<std::tuple<const char*, const char*, Handler>> verbs{
      {"altitude-sweep", "GEE versus hovering altitude (CSV)", cmd_altitude_sweep},
      {"threshold-sweep", "GEE versus LoS threshold angle at h_min (CSV)",
       cmd_threshold_sweep},
      {"solve", "optimal altitude and LoS threshold (JSON)", cmd_solve},
      {"place", "multilevel AAP placement (JSON + CSV centers)", cmd_place},
      {"density-sweep", "packing density over target radii (CSV)", cmd_density_sweep},
      {"validate", "Monte-Carlo and identity checks (CSV report)", cmd_validate},
  };
  Handler handler = nullptr;
  for (const auto& [name, help, fn] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "scenario file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "Monte-Carlo base seed");
    sub->add_option("--trials", trials, "Monte-Carlo trial count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--ra", r_a, "coverage radius override, meters")
        ->check(CLI::PositiveNumber);
    sub->callback([&handler, f = fn] { handler = f; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const Scenario sc = load_scenario(scenario_path);
    CommandOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.r_a = r_a;
    const CommandResult res = handler(sc, opt);
    const std::string dir = out_dir.empty() ? sc.output : out_dir;
    if (dir.empty()) {
      out << res.files.front().content;
    } else {
      for (const OutputFile& f : res.files) {
        const auto path = std::filesystem::path(dir) / f.name;
        write_file_atomic(path, f.content);
        out << path.string() << "\n";
      }
    }
    if (!res.summary.empty()) {
      err << res.summary << "\n";
    }
    return res.exit_code;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const DegenerateCoverageError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace aap

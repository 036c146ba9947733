#pragma once

// Command implementations behind the aapdeploy CLI. Each command returns the
// files it produces; run_cli writes them under --out or prints the primary
// one to stdout.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aap/gee.hpp"
#include "aap/packing.hpp"
#include "aap/scenario.hpp"

namespace aap {

enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 1,
  kExitConfig = 2,
  kExitValidation = 3,
};

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> r_a;
  unsigned workers = 1;
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  std::vector<OutputFile> files;  // files[0] is the primary output
  std::string summary;            // human-readable, goes to stderr
  int exit_code = kExitOk;
};

// Reference density figures for two target radii. Their coverage radius is
// not given, so they are reported next to computed values, never asserted.
struct ReferenceDensity {
  double area_radius = 0.0;
  double density = 0.0;
  std::vector<int> level_counts;
  double implied_r_a = 0.0;  // R sqrt(density / total count)
};
const std::vector<ReferenceDensity>& reference_densities();
const ReferenceDensity* find_reference_density(double area_radius);

CommandResult cmd_altitude_sweep(const Scenario& sc, const CommandOptions& opt = {});
CommandResult cmd_threshold_sweep(const Scenario& sc, const CommandOptions& opt = {});
CommandResult cmd_solve(const Scenario& sc, const CommandOptions& opt = {});
CommandResult cmd_place(const Scenario& sc, const CommandOptions& opt = {});
CommandResult cmd_density_sweep(const Scenario& sc, const CommandOptions& opt = {});
CommandResult cmd_validate(const Scenario& sc, const CommandOptions& opt = {});

// Deployment solution for the scenario's own gamma over its elevation grid.
DeploymentSolution solve_scenario(const Scenario& sc);

// Full CLI: aapdeploy <verb> --scenario <path> [--out <dir>] [--seed N]
// [--trials N] [--ra meters]. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aap

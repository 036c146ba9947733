#pragma once

// Scenario files: sectioned key = value text.
//
//   # comment
//   [environment]
//   a = 4.88
//   ...
//
// Sections: environment, system, uav, sweeps, run. Unknown sections or keys,
// duplicate keys and missing required keys are ConfigErrors.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aap/channel.hpp"
#include "aap/energy.hpp"
#include "aap/uplink.hpp"

namespace aap {

struct SweepSpec {
  double altitude_min = 0.0;  // defaults to h_min
  double altitude_max = 0.0;  // defaults to h_max
  double altitude_step = 1.0;
  double phi_min_deg = 5.0;
  double phi_max_deg = 89.0;
  double phi_step_deg = 0.25;
  std::vector<double> gamma_db_list;     // empty: the system's own gamma
  std::vector<double> delta_list{0.9};   // thresholds of the altitude sweep
  std::vector<double> area_radius_list;  // defaults to {area_radius}
  double ratio_min = 0.0;                // R / R_a grid for density sweeps
  double ratio_max = 0.0;
  std::size_t ratio_count = 0;
};

struct Scenario {
  std::string name;
  EnvironmentParams environment;
  SystemParams system;
  UavEnergyParams uav;
  SweepSpec sweeps;
  std::vector<std::uint64_t> seeds{1};
  std::size_t trials = 10000;
  std::string output;

  double gamma_db() const;
  // Copy with the target arrived power set from gamma (dB).
  Scenario with_gamma_db(double gamma_db) const;
  // Gamma values to sweep: sweeps.gamma_db_list or the system's own gamma.
  std::vector<double> gamma_db_values() const;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace aap

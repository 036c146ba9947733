#include "aap/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aap/errors.hpp"

namespace aap {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, const std::string& key) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': not a number: '" + std::string(text) + "'");
  }
  return v;
}

long long parse_integer(std::string_view text, const std::string& key) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("key '" + key + "': not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  while (!text.empty()) {
    const auto comma = text.find(',');
    items.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return items;
}

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys{
      {"environment",
       {"a", "b", "eta_los_db", "eta_nlos_db", "g0", "carrier_frequency_hz"}},
      {"system",
       {"bandwidth_hz", "num_interferers", "circuit_power_w", "service_time_s",
        "p_max_w", "p_target_w", "gamma_db", "noise_psd_w_per_hz",
        "noise_psd_dbm_per_hz", "ue_density_per_m2", "h_min_m", "h_max_m",
        "area_radius_m", "resource_blocks", "tpc_beta"}},
      {"uav", {"alpha_climb", "beta_climb", "alpha_hover", "beta_hover"}},
      {"sweeps",
       {"altitude_min_m", "altitude_max_m", "altitude_step_m", "phi_min_deg",
        "phi_max_deg", "phi_step_deg", "gamma_db_list", "delta_list",
        "area_radius_list_m", "ratio_min", "ratio_max", "ratio_count"}},
      {"run", {"name", "seeds", "trials", "output"}},
  };
  return keys;
}

class Entries {
 public:
  void set(const std::string& section, const std::string& key,
           std::string value, int line) {
    const auto sec = known_keys().find(section);
    if (sec == known_keys().end()) {
      throw ConfigError("line " + std::to_string(line) + ": unknown section [" +
                        section + "]");
    }
    if (!sec->second.contains(key)) {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                        key + "' in [" + section + "]");
    }
    const std::string full = section + "." + key;
    if (!values_.emplace(full, std::move(value)).second) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" +
                        full + "'");
    }
  }

  bool has(const std::string& full) const { return values_.contains(full); }

  const std::string& raw(const std::string& full) const {
    const auto it = values_.find(full);
    if (it == values_.end()) {
      throw ConfigError("missing required key '" + full + "'");
    }
    return it->second;
  }

  double number(const std::string& full) const {
    return parse_double(raw(full), full);
  }

  double number_or(const std::string& full, double fallback) const {
    return has(full) ? number(full) : fallback;
  }

  long long integer_or(const std::string& full, long long fallback) const {
    return has(full) ? parse_integer(raw(full), full) : fallback;
  }

  std::vector<double> numbers(const std::string& full) const {
    std::vector<double> out;
    for (std::string_view item : split_list(raw(full))) {
      out.push_back(parse_double(item, full));
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

Entries tokenize(std::string_view text) {
  Entries entries;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    if (view.front() == '[') {
      if (view.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = std::string(trim(view.substr(1, view.size() - 2)));
      if (!known_keys().contains(section)) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" +
                        key + "'");
    }
    entries.set(section, key, value, line_no);
  }
  return entries;
}

EnvironmentParams read_environment(const Entries& e) {
  const bool has_g0 = e.has("environment.g0");
  const bool has_fc = e.has("environment.carrier_frequency_hz");
  if (!has_g0 && !has_fc) {
    throw ConfigError("environment needs g0 or carrier_frequency_hz");
  }
  double g0 = 0.0;
  if (has_fc) {
    g0 = reference_gain_from_carrier(e.number("environment.carrier_frequency_hz"));
  }
  if (has_g0) {
    const double given = e.number("environment.g0");
    // Both given: they must describe the same carrier.
    if (has_fc && std::abs(given - g0) > 0.01 * g0) {
      throw ConfigError("g0 and carrier_frequency_hz disagree by more than 1%");
    }
    g0 = given;
  }
  return EnvironmentParams::from_db(
      e.number("environment.a"), e.number("environment.b"),
      e.number("environment.eta_los_db"), e.number("environment.eta_nlos_db"), g0);
}

SystemParams read_system(const Entries& e) {
  SystemParams sys;
  sys.bandwidth_w = e.number("system.bandwidth_hz");
  sys.num_interferers_m =
      static_cast<int>(parse_integer(e.raw("system.num_interferers"), "system.num_interferers"));
  sys.circuit_power_pc = e.number("system.circuit_power_w");
  sys.service_time_t = e.number("system.service_time_s");
  sys.p_max = e.number("system.p_max_w");
  sys.ue_density_rho = e.number("system.ue_density_per_m2");
  sys.h_min = e.number("system.h_min_m");
  sys.h_max = e.number("system.h_max_m");
  sys.area_radius_r = e.number("system.area_radius_m");
  sys.resource_blocks_b = static_cast<int>(e.integer_or("system.resource_blocks", 1));
  sys.tpc_beta = e.number_or("system.tpc_beta", 1.0);

  const bool psd_w = e.has("system.noise_psd_w_per_hz");
  const bool psd_dbm = e.has("system.noise_psd_dbm_per_hz");
  if (psd_w == psd_dbm) {
    throw ConfigError("give exactly one of noise_psd_w_per_hz, noise_psd_dbm_per_hz");
  }
  sys.noise_psd = psd_w ? e.number("system.noise_psd_w_per_hz")
                        : db_to_ratio(e.number("system.noise_psd_dbm_per_hz")) * 1e-3;

  const bool pa = e.has("system.p_target_w");
  const bool gamma = e.has("system.gamma_db");
  if (pa == gamma) {
    throw ConfigError("give exactly one of p_target_w, gamma_db");
  }
  if (pa) {
    sys.p_target_pa = e.number("system.p_target_w");
  } else {
    sys.set_gamma(db_to_ratio(e.number("system.gamma_db")));
  }
  sys.validate();
  return sys;
}

UavEnergyParams read_uav(const Entries& e, const SystemParams& sys) {
  UavEnergyParams uav{e.number("uav.alpha_climb"), e.number("uav.beta_climb"),
                      e.number("uav.alpha_hover"), e.number("uav.beta_hover")};
  uav.validate(sys);
  return uav;
}

SweepSpec read_sweeps(const Entries& e, const SystemParams& sys,
                      const EnvironmentParams& env) {
  SweepSpec s;
  s.altitude_min = e.number_or("sweeps.altitude_min_m", sys.h_min);
  s.altitude_max = e.number_or("sweeps.altitude_max_m", sys.h_max);
  s.altitude_step = e.number_or("sweeps.altitude_step_m", 1.0);
  if (s.altitude_min < sys.h_min || s.altitude_max > sys.h_max ||
      s.altitude_min > s.altitude_max || !(s.altitude_step > 0.0)) {
    throw ConfigError("altitude sweep must be an increasing grid inside [h_min, h_max]");
  }
  s.phi_min_deg = e.number_or("sweeps.phi_min_deg", 5.0);
  s.phi_max_deg = e.number_or("sweeps.phi_max_deg", 89.0);
  s.phi_step_deg = e.number_or("sweeps.phi_step_deg", 0.25);
  if (!(s.phi_min_deg > 0.0) || s.phi_max_deg > 90.0 ||
      s.phi_min_deg > s.phi_max_deg || !(s.phi_step_deg > 0.0)) {
    throw ConfigError("elevation sweep must be an increasing grid inside (0, 90]");
  }
  if (e.has("sweeps.gamma_db_list")) {
    s.gamma_db_list = e.numbers("sweeps.gamma_db_list");
  }
  if (e.has("sweeps.delta_list")) {
    s.delta_list = e.numbers("sweeps.delta_list");
  }
  for (double d : s.delta_list) {
    if (!(d > min_valid_delta(env) && d <= max_valid_delta(env))) {
      throw ConfigError("delta_list entry outside the LoS curve image: " +
                        std::to_string(d));
    }
  }
  s.area_radius_list = e.has("sweeps.area_radius_list_m")
                           ? e.numbers("sweeps.area_radius_list_m")
                           : std::vector<double>{sys.area_radius_r};
  for (double r : s.area_radius_list) {
    if (!(r > 0.0)) {
      throw ConfigError("area radii must be positive");
    }
  }
  s.ratio_min = e.number_or("sweeps.ratio_min", 0.0);
  s.ratio_max = e.number_or("sweeps.ratio_max", 0.0);
  const long long count = e.integer_or("sweeps.ratio_count", 0);
  if (count < 0) {
    throw ConfigError("ratio_count must be non-negative");
  }
  s.ratio_count = static_cast<std::size_t>(count);
  if (s.ratio_count > 0 && !(s.ratio_min >= 1.0 && s.ratio_max >= s.ratio_min)) {
    throw ConfigError("ratio grid needs 1 <= ratio_min <= ratio_max");
  }
  return s;
}

}  // namespace

double Scenario::gamma_db() const { return 10.0 * std::log10(system.gamma()); }

Scenario Scenario::with_gamma_db(double gamma_db) const {
  Scenario copy = *this;
  copy.system.set_gamma(db_to_ratio(gamma_db));
  return copy;
}

std::vector<double> Scenario::gamma_db_values() const {
  if (!sweeps.gamma_db_list.empty()) {
    return sweeps.gamma_db_list;
  }
  return {gamma_db()};
}

Scenario parse_scenario(std::string_view text) {
  const Entries e = tokenize(text);
  Scenario sc;
  sc.environment = read_environment(e);
  sc.system = read_system(e);
  sc.uav = read_uav(e, sc.system);
  sc.sweeps = read_sweeps(e, sc.system, sc.environment);
  if (e.has("run.name")) {
    sc.name = e.raw("run.name");
  }
  if (e.has("run.seeds")) {
    sc.seeds.clear();
    for (std::string_view item : split_list(e.raw("run.seeds"))) {
      const long long v = parse_integer(item, "run.seeds");
      if (v < 0) {
        throw ConfigError("seeds must be non-negative");
      }
      sc.seeds.push_back(static_cast<std::uint64_t>(v));
    }
  }
  const long long trials = e.integer_or("run.trials", 10000);
  if (trials < 1) {
    throw ConfigError("trials must be >= 1");
  }
  sc.trials = static_cast<std::size_t>(trials);
  if (e.has("run.output")) {
    sc.output = e.raw("run.output");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open scenario file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str());
  if (sc.name.empty()) {
    sc.name = path.stem().string();
  }
  return sc;
}

}  // namespace aap

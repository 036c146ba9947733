#include "aap/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace aap {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CSV row width does not match the header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) {
        out += ',';
      }
      out += cells[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& row : rows_) {
    emit(row);
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

json to_json(const PlacementPlan& plan) {
  json levels = json::array();
  for (const PackingLevel& l : plan.levels) {
    json centers = json::array();
    for (const Point2& c : l.centers) {
      centers.push_back({c.x, c.y});
    }
    levels.push_back({
        {"level_index", l.level_index},
        {"ring_radius_m", l.ring_radius},
        {"count", l.count},
        {"center_radius_m", l.center_radius},
        {"phase_rad", l.phase},
        {"area_bound_count", l.area_bound},
        {"geometric_bound_count", l.geometric_bound},
        {"centers", centers},
    });
  }
  const FeasibilityReport& f = plan.feasibility;
  json feas = {
      {"pairwise_ok", f.pairwise_ok},
      {"containment_ok", f.containment_ok},
      {"level_containment_ok", f.level_containment_ok},
      {"min_radius_ok", f.min_radius_ok},
      {"worst_pairwise_margin_m",
       f.worst_pairwise_margin ? json(*f.worst_pairwise_margin) : json(nullptr)},
      {"worst_containment_margin_m", f.worst_containment_margin},
      {"worst_level_margin_m", f.worst_level_margin},
      {"tolerance_m", f.tolerance},
  };
  return {
      {"r_a_m", plan.r_a},
      {"area_radius_m", plan.area_radius},
      {"total_aaps", plan.total_aaps},
      {"packing_density", plan.packing_density},
      {"levels", levels},
      {"feasibility", feas},
  };
}

PlacementPlan plan_from_json(const json& j) {
  PlacementPlan plan;
  plan.r_a = j.at("r_a_m").get<double>();
  plan.area_radius = j.at("area_radius_m").get<double>();
  plan.total_aaps = j.at("total_aaps").get<int>();
  plan.packing_density = j.at("packing_density").get<double>();
  for (const json& jl : j.at("levels")) {
    PackingLevel l;
    l.level_index = jl.at("level_index").get<int>();
    l.ring_radius = jl.at("ring_radius_m").get<double>();
    l.count = jl.at("count").get<int>();
    l.center_radius = jl.at("center_radius_m").get<double>();
    l.phase = jl.at("phase_rad").get<double>();
    l.area_bound = jl.at("area_bound_count").get<int>();
    l.geometric_bound = jl.at("geometric_bound_count").get<int>();
    for (const json& c : jl.at("centers")) {
      l.centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    }
    plan.levels.push_back(std::move(l));
  }
  const json& jf = j.at("feasibility");
  FeasibilityReport& f = plan.feasibility;
  f.pairwise_ok = jf.at("pairwise_ok").get<bool>();
  f.containment_ok = jf.at("containment_ok").get<bool>();
  f.level_containment_ok = jf.at("level_containment_ok").get<bool>();
  f.min_radius_ok = jf.at("min_radius_ok").get<bool>();
  if (!jf.at("worst_pairwise_margin_m").is_null()) {
    f.worst_pairwise_margin = jf.at("worst_pairwise_margin_m").get<double>();
  }
  f.worst_containment_margin = jf.at("worst_containment_margin_m").get<double>();
  f.worst_level_margin = jf.at("worst_level_margin_m").get<double>();
  f.tolerance = jf.at("tolerance_m").get<double>();
  return plan;
}

json to_json(const DeploymentSolution& sol) {
  return {
      {"h_opt_m", sol.h_opt},
      {"delta_opt", sol.delta_opt},
      {"phi_opt_deg", sol.phi_opt_deg},
      {"r_a_m", sol.r_a},
      {"gee_bits_per_joule", sol.gee},
      {"binding_constraint", std::string(to_string(sol.binding_constraint))},
      {"h_max_power_m", sol.h_max_power},
      {"audit_passed", sol.audit_passed},
      {"fallback_used", sol.fallback_used},
      {"feasible_thresholds", sol.feasible_thresholds},
      {"exceeds_area", sol.exceeds_area},
  };
}

DeploymentSolution solution_from_json(const json& j) {
  DeploymentSolution sol;
  sol.h_opt = j.at("h_opt_m").get<double>();
  sol.delta_opt = j.at("delta_opt").get<double>();
  sol.phi_opt_deg = j.at("phi_opt_deg").get<double>();
  sol.r_a = j.at("r_a_m").get<double>();
  sol.gee = j.at("gee_bits_per_joule").get<double>();
  sol.binding_constraint =
      binding_constraint_from_string(j.at("binding_constraint").get<std::string>());
  sol.h_max_power = j.at("h_max_power_m").get<double>();
  sol.audit_passed = j.at("audit_passed").get<bool>();
  sol.fallback_used = j.at("fallback_used").get<bool>();
  sol.feasible_thresholds = j.at("feasible_thresholds").get<std::size_t>();
  sol.exceeds_area = j.at("exceeds_area").get<bool>();
  return sol;
}

}  // namespace aap

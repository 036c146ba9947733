#pragma once

// CSV/JSON serialization and atomic file output.
//
// CSV: header row first, fixed column order, numbers with 12 significant
// digits and '.' as decimal separator independent of locale, LF endings.

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aap/gee.hpp"
#include "aap/packing.hpp"

namespace aap {

std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Cells are written verbatim; use format_number for numeric values.
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

nlohmann::json to_json(const PlacementPlan& plan);
PlacementPlan plan_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DeploymentSolution& sol);
DeploymentSolution solution_from_json(const nlohmann::json& j);

}  // namespace aap

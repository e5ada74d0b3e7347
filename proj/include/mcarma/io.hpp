#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcarma/model.hpp"

namespace mcarma {

/// Model document: {"p", "q", "d", "A": [A_1..A_p], "B": [B_0..B_q], "SigmaL"},
/// matrices as row-major nested arrays. Ragged arrays are rejected.
McarmaModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const McarmaModel& model);
McarmaModel load_model(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& what);

/// Shortest round-trip formatting with 17 significant digits, C locale.
std::string format_number(double v);

/// Header plus rows of numbers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace mcarma

#include "mcarma/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "mcarma/error.hpp"

namespace mcarma {

namespace {

int require_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw Error(ErrorKind::BadInput, std::string("model field '") + key + "' must be an integer");
  return doc[key].get<int>();
}

std::vector<Matrix> matrix_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw Error(ErrorKind::BadInput, std::string("model field '") + key + "' must be an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < doc[key].size(); ++i)
    out.push_back(matrix_from_json(doc[key][i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::BadInput, what + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorKind::BadInput, what + " rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorKind::BadInput, what + " is ragged");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw Error(ErrorKind::BadInput, what + " has a non-numeric entry");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

McarmaModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::BadInput, "model document must be a JSON object");
  McarmaModel m;
  m.p = require_int(doc, "p");
  m.q = require_int(doc, "q");
  m.d = require_int(doc, "d");
  m.ar = matrix_list(doc, "A");
  m.ma = matrix_list(doc, "B");
  if (!doc.contains("SigmaL")) throw Error(ErrorKind::BadInput, "model field 'SigmaL' is missing");
  m.sigma_l = matrix_from_json(doc["SigmaL"], "SigmaL");
  return m;
}

nlohmann::json model_to_json(const McarmaModel& model) {
  nlohmann::json doc;
  doc["p"] = model.p;
  doc["q"] = model.q;
  doc["d"] = model.d;
  doc["A"] = nlohmann::json::array();
  for (const Matrix& a : model.ar) doc["A"].push_back(matrix_to_json(a));
  doc["B"] = nlohmann::json::array();
  for (const Matrix& b : model.ma) doc["B"].push_back(matrix_to_json(b));
  doc["SigmaL"] = matrix_to_json(model.sigma_l);
  return doc;
}

McarmaModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open model file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, "model file is not valid JSON: " + std::string(e.what()));
  }
  return model_from_json(doc);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error(ErrorKind::Numerical, "number formatting failed");
  return std::string(buf, res.ptr);
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json Table::to_json() const {
  nlohmann::json out;
  out["columns"] = columns;
  out["rows"] = rows;
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::BadInput, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::BadInput, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::BadInput, "cannot move output into " + path.string() + ": " + ec.message());
  }
}

}  // namespace mcarma

#include "lmat/matrix_json.hpp"

#include <stdexcept>

namespace lmat {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries()) entries.push_back(m.field().format(e));
  return {{"field", m.field().descriptor()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("matrix JSON must be an object");
  for (const char* key : {"field", "rows", "cols", "entries"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("matrix JSON missing '") + key + "'");
  }
  if (!j["field"].is_string()) throw std::invalid_argument("matrix JSON 'field' must be a string");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw std::invalid_argument("matrix JSON 'rows'/'cols' must be non-negative integers");
  }
  if (!j["entries"].is_array()) throw std::invalid_argument("matrix JSON 'entries' must be an array");
  Field field = Field::parse(j["field"].get<std::string>());
  auto rows = j["rows"].get<std::size_t>();
  auto cols = j["cols"].get<std::size_t>();
  const auto& raw = j["entries"];
  if (raw.size() != rows * cols) {
    throw std::invalid_argument("matrix JSON has " + std::to_string(raw.size()) + " entries, expected " +
                                std::to_string(rows * cols));
  }
  std::vector<Elem> entries;
  entries.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i].is_string()) throw std::invalid_argument("entry " + std::to_string(i) + " is not a string");
    try {
      entries.push_back(field.parse_elem(raw[i].get<std::string>()));
    } catch (const std::exception& ex) {
      throw std::invalid_argument("entry (" + std::to_string(i / std::max<std::size_t>(cols, 1)) + "," +
                                  std::to_string(i % std::max<std::size_t>(cols, 1)) + "): " + ex.what());
    }
  }
  return Matrix(field, rows, cols, std::move(entries));
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace lmat

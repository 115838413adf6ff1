#pragma once

#include "lmat/matrix.hpp"

#include <json.hpp>

#include <string>

namespace lmat {

/// {"field": descriptor, "rows": n, "cols": m, "entries": [row-major strings]}
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// Stable textual form used for files (2-space indent, trailing newline).
std::string dump_json(const nlohmann::json& j);

}  // namespace lmat

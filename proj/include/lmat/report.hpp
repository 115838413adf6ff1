#pragma once

#include "lmat/certify.hpp"
#include "lmat/construction.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lmat {

/// {"field", "rows", "cols", "palette": [strings], "ids": [ints]}.
nlohmann::json palette_to_json(const PaletteMatrix& m);
PaletteMatrix palette_from_json(const nlohmann::json& j);

/// Matrix artifact: {"format", "name", "matrix" (palette form), "claims", ...}.
/// Claims are what verify_artifact re-checks: "L", "lambda", "symmetric",
/// "rank_upper", "rank_certified_lower", "rank_certified_exact".
nlohmann::json artifact_json(const ConstructionReport& r);
nlohmann::json artifact_json(const std::string& name, const Matrix& m, const nlohmann::json& claims,
                             const nlohmann::json& extra = nlohmann::json::object());

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

struct VerifyReport {
  bool ok = true;
  std::size_t size = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

/// Re-checks every claim from the matrix alone. Per-cell failures name
/// (row,col); at most kMaxCellFailures are listed, then a count.
VerifyReport verify_artifact(const nlohmann::json& artifact);
VerifyReport verify_file(const std::string& path);

inline constexpr std::size_t kMaxCellFailures = 20;

struct ExperimentConfig {
  std::string construction;  // square | threehalves | fivethirds | xy3
  std::string field = "Q";
  std::vector<std::string> L;           // xy3: the pair {x, y}
  std::optional<IntVec> relation;       // default: canonical primitive relation
  std::vector<std::uint32_t> qs;
  std::optional<std::uint64_t> seed;    // required for fivethirds
  std::string out_dir;                  // empty: no files
  CertMode cert = CertMode::exact;
  std::vector<std::uint64_t> primes = kDefaultPrimes;

  /// Throws std::invalid_argument with a diagnostic.
  void validate() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct GrowthRow {
  std::uint32_t q = 0;
  std::size_t size = 0;
  Int rank_upper;
  std::optional<std::size_t> rank_certified_lower;
  std::optional<std::size_t> rank_certified_exact;
  /// size over the exact rank when known, else over rank_upper.
  double ratio() const;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;  // sorted by q
  std::string to_csv() const;
};

struct ExperimentOutcome {
  GrowthTable table;
  bool ok = true;
  std::vector<std::string> failures;  // "q=<q>: ..."
  std::vector<std::string> artifacts;
};

/// Builds, checks and certifies every q; writes artifacts and table.csv into
/// out_dir when set. Deterministic in (config, seed).
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// "a, b, c" -> {"a", "b", "c"} with surrounding spaces trimmed.
std::vector<std::string> split_list(const std::string& text);

}  // namespace lmat

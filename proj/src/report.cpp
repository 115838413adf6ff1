#include "lmat/report.hpp"

#include "lmat/matrix_json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lmat {

using nlohmann::json;

nlohmann::json palette_to_json(const PaletteMatrix& m) {
  json palette = json::array();
  for (const auto& e : m.palette()) palette.push_back(m.field().format(e));
  json ids = json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) ids.push_back(m.id(i, j));
  return {{"field", m.field().descriptor()},
          {"rows", m.size()},
          {"cols", m.size()},
          {"palette", std::move(palette)},
          {"ids", std::move(ids)}};
}

PaletteMatrix palette_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("matrix must be an object");
  if (!j.contains("palette")) return PaletteMatrix::from_matrix(matrix_from_json(j));
  for (const char* key : {"field", "rows", "cols", "ids"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("matrix missing '") + key + "'");
  }
  const auto n = j["rows"].get<std::size_t>();
  if (j["cols"].get<std::size_t>() != n) throw std::invalid_argument("palette matrix must be square");
  Field f = Field::parse(j["field"].get<std::string>());
  std::vector<Elem> palette;
  for (const auto& s : j["palette"]) palette.push_back(f.parse_elem(s.get<std::string>()));
  std::vector<std::uint32_t> ids = j["ids"].get<std::vector<std::uint32_t>>();
  return PaletteMatrix(f, n, std::move(palette), std::move(ids));
}

namespace {

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::optional<Int> json_int(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  return std::nullopt;
}

}  // namespace

nlohmann::json artifact_json(const ConstructionReport& r) {
  const Field& f = r.matrix.field();
  json claims = json::object();
  if (r.declared_L) {
    json l = json::array();
    for (const auto& e : r.declared_L->elems()) l.push_back(f.format(e));
    claims["L"] = l;
  }
  claims["lambda"] = f.format(r.lambda);
  claims["symmetric"] = true;
  claims["rank_upper"] = int_json(r.rank_upper);
  if (r.rank_lower) claims["rank_certified_lower"] = *r.rank_lower;
  if (r.rank_exact) claims["rank_certified_exact"] = *r.rank_exact;
  if (!r.rank_method.empty()) claims["rank_method"] = r.rank_method;
  json out = {{"format", "lmat-artifact/1"}, {"name", r.name}, {"matrix", palette_to_json(r.matrix)},
              {"claims", claims}, {"choices", r.choices}};
  if (!r.cases.empty()) out["cases"] = r.cases;
  if (r.seed) out["seed"] = *r.seed;
  if (r.q != 0) {
    out["q"] = r.q;
    out["d"] = r.d;
  }
  return out;
}

nlohmann::json artifact_json(const std::string& name, const Matrix& m, const nlohmann::json& claims,
                             const nlohmann::json& extra) {
  json out = extra.is_object() ? extra : json::object();
  out["format"] = "lmat-artifact/1";
  out["name"] = name;
  out["matrix"] = palette_to_json(PaletteMatrix::from_matrix(m));
  out["claims"] = claims;
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

VerifyReport verify_artifact(const nlohmann::json& artifact) {
  VerifyReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  if (!artifact.is_object() || !artifact.contains("matrix")) {
    fail("schema: artifact must be an object with a 'matrix'");
    return rep;
  }
  PaletteMatrix m;
  try {
    m = palette_from_json(artifact["matrix"]);
  } catch (const std::exception& ex) {
    fail(std::string("schema: ") + ex.what());
    return rep;
  }
  const Field& f = m.field();
  const std::size_t n = m.size();
  rep.size = n;
  json claims = artifact.value("claims", json::object());
  if (!claims.is_object()) {
    fail("schema: 'claims' must be an object");
    return rep;
  }

  std::size_t cell_failures = 0;
  auto cell_fail = [&](std::size_t i, std::size_t j, const std::string& what) {
    ++cell_failures;
    if (cell_failures <= kMaxCellFailures) fail("(" + std::to_string(i) + "," + std::to_string(j) + "): " + what);
  };

  try {
    if (claims.contains("lambda")) {
      Elem lam = f.parse_elem(claims["lambda"].get<std::string>());
      for (std::size_t i = 0; i < n; ++i) {
        if (!(m.at(i, i) == lam)) cell_fail(i, i, "diagonal " + f.format(m.at(i, i)) + " != claimed lambda " + f.format(lam));
      }
    }
    if (claims.contains("L")) {
      std::vector<Elem> l;
      for (const auto& s : claims["L"]) l.push_back(f.parse_elem(s.get<std::string>()));
      std::vector<bool> allowed(m.palette().size(), false);
      for (std::size_t p = 0; p < m.palette().size(); ++p)
        allowed[p] = std::find(l.begin(), l.end(), m.palette()[p]) != l.end();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && !allowed[m.id(i, j)]) cell_fail(i, j, "entry " + f.format(m.at(i, j)) + " not in claimed L");
    }
    if (claims.value("symmetric", false)) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!(m.at(i, j) == m.at(j, i))) cell_fail(i, j, "asymmetric: differs from (" + std::to_string(j) + "," + std::to_string(i) + ")");
    }
  } catch (const std::exception& ex) {
    fail(std::string("schema: ") + ex.what());
    return rep;
  }
  if (cell_failures > kMaxCellFailures) {
    fail(std::to_string(cell_failures - kMaxCellFailures) + " further cell failures");
  }

  auto upper = claims.contains("rank_upper") ? json_int(claims["rank_upper"]) : std::nullopt;
  auto claimed_exact = claims.contains("rank_certified_exact") ? json_int(claims["rank_certified_exact"]) : std::nullopt;
  auto claimed_lower = claims.contains("rank_certified_lower") ? json_int(claims["rank_certified_lower"]) : std::nullopt;
  if (n > 0 && (upper || claimed_exact || claimed_lower)) {
    std::uint32_t q = artifact.value("q", 0U);
    std::size_t d = artifact.value("d", std::size_t{0});
    RankCertificate cert;
    try {
      cert = certify_rank(m, CertMode::exact, kDefaultPrimes, q, d);
    } catch (const std::exception& ex) {
      // a tampered matrix is no longer translation invariant
      rep.notes.push_back(std::string("character-sum rank unavailable: ") + ex.what());
      cert = certify_rank(m, CertMode::exact, kDefaultPrimes);
    }
    for (auto& s : cert.notices) rep.notes.push_back(s);
    rep.notes.push_back("rank via " + cert.method);
    if (cert.exact) {
      const Int r(static_cast<unsigned long>(*cert.exact));
      if (upper && r > *upper) fail("rank " + r.get_str() + " exceeds claimed rank_upper " + upper->get_str());
      if (claimed_exact && r != *claimed_exact) fail("rank " + r.get_str() + " != claimed exact rank " + claimed_exact->get_str());
      if (claimed_lower && r < *claimed_lower) fail("rank " + r.get_str() + " below claimed lower bound " + claimed_lower->get_str());
    } else if (cert.lower) {
      const Int r(static_cast<unsigned long>(*cert.lower));
      if (upper && r > *upper) fail("certified lower rank " + r.get_str() + " exceeds claimed rank_upper " + upper->get_str());
      if (claimed_exact && r > *claimed_exact) fail("certified lower rank " + r.get_str() + " exceeds claimed exact rank");
      rep.notes.push_back("only a lower bound was re-derived");
    }
  }
  return rep;
}

VerifyReport verify_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    VerifyReport rep;
    rep.ok = false;
    rep.failures.push_back("cannot open " + path);
    return rep;
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& ex) {
    VerifyReport rep;
    rep.ok = false;
    rep.failures.push_back(std::string("schema: ") + ex.what());
    return rep;
  }
  return verify_artifact(j);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty item in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> names{"square", "threehalves", "fivethirds", "xy3"};
  if (std::find(names.begin(), names.end(), construction) == names.end()) {
    throw std::invalid_argument("unknown construction '" + construction + "'");
  }
  Field f = Field::parse(field);
  if (construction == "xy3") {
    if (L.size() != 2) throw std::invalid_argument("xy3 needs L = {x, y}");
    for (const auto& s : L) f.parse_elem(s);
  } else {
    LSet l = LSet::parse(f, L);
    if (relation) make_relation(l, *relation);
  }
  if (qs.empty()) throw std::invalid_argument("experiment needs at least one q");
  if (construction == "fivethirds" && !seed) throw std::invalid_argument("fivethirds needs a seed");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be an object");
  static const std::vector<std::string> known{"construction", "field", "L", "relation", "q", "seed", "out", "cert", "primes"};
  for (const auto& [key, v] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    c.construction = j.at("construction").get<std::string>();
    c.field = j.value("field", std::string("Q"));
    c.L = j.at("L").get<std::vector<std::string>>();
    if (j.contains("relation")) {
      IntVec a;
      for (const auto& x : j["relation"]) a.push_back(Int(x.get<long>()));
      c.relation = a;
    }
    c.qs = j.at("q").get<std::vector<std::uint32_t>>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    c.out_dir = j.value("out", std::string());
    c.cert = parse_cert_mode(j.value("cert", std::string("exact")));
    if (j.contains("primes")) c.primes = j["primes"].get<std::vector<std::uint64_t>>();
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("experiment config: ") + ex.what());
  }
  c.validate();
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  json j = {{"construction", construction}, {"field", field}, {"L", L}, {"q", qs}, {"cert", lmat::to_string(cert)}, {"primes", primes}};
  if (relation) {
    json a = json::array();
    for (const auto& x : *relation) a.push_back(x.get_si());
    j["relation"] = a;
  }
  if (seed) j["seed"] = *seed;
  if (!out_dir.empty()) j["out"] = out_dir;
  return j;
}

double GrowthRow::ratio() const {
  double r = rank_certified_exact ? static_cast<double>(*rank_certified_exact) : rank_upper.get_d();
  return r > 0 ? static_cast<double>(size) / r : 0.0;
}

std::string GrowthTable::to_csv() const {
  std::string out = "q,size,rank_upper,rank_certified_lower,rank_certified_exact,ratio\n";
  for (const auto& r : rows) {
    char ratio[64];
    std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio());
    out += std::to_string(r.q) + "," + std::to_string(r.size) + "," + r.rank_upper.get_str() + "," +
           (r.rank_certified_lower ? std::to_string(*r.rank_certified_lower) : "") + "," +
           (r.rank_certified_exact ? std::to_string(*r.rank_certified_exact) : "") + "," + ratio + "\n";
  }
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentOutcome out;
  Field f = Field::parse(config.field);
  std::vector<std::uint32_t> qs = config.qs;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  std::optional<LSet> l;
  std::optional<IntRelation> rel;
  std::string setup_error;
  if (config.construction != "xy3") {
    l = LSet::parse(f, config.L);
    if (config.relation) {
      rel = make_relation(*l, *config.relation);
    } else if (auto pr = primitive_relation(*l); pr.relation) {
      rel = pr.relation;
    } else {
      setup_error = "L has no primitive relation";
    }
    if (rel && config.construction == "square" && l->all_integer()) rel = normalize_min_negatives(*rel, *l);
  }

  for (auto q : qs) {
    GrowthRow row;
    row.q = q;
    try {
      if (!setup_error.empty()) throw std::invalid_argument(setup_error);
      ConstructionReport rep;
      if (config.construction == "square") rep = construct_square(*l, *rel, q);
      else if (config.construction == "threehalves") rep = construct_threehalves(*l, *rel, q);
      else if (config.construction == "fivethirds") rep = construct_fivethirds(*l, *rel, q, *config.seed);
      else rep = construct_xy3(f, f.parse_elem(config.L[0]), f.parse_elem(config.L[1]), q);
      auto violations = check_report(rep);
      if (!violations.empty()) throw std::logic_error(violations.front());
      std::vector<std::string> notices;
      bool within = certify_report(rep, config.cert, config.primes, &notices);
      row.size = rep.matrix.size();
      row.rank_upper = rep.rank_upper;
      row.rank_certified_lower = rep.rank_lower;
      row.rank_certified_exact = rep.rank_exact;
      if (!within) throw std::logic_error("certified rank exceeds rank_upper");
      if (!config.out_dir.empty()) {
        std::string path = config.out_dir + "/" + config.construction + "_q" + std::to_string(q) + ".json";
        write_file_atomic(path, dump_json(artifact_json(rep)));
        out.artifacts.push_back(path);
      }
    } catch (const std::exception& ex) {
      out.ok = false;
      out.failures.push_back("q=" + std::to_string(q) + ": " + ex.what());
    }
    out.table.rows.push_back(row);
  }
  if (!config.out_dir.empty()) {
    std::string path = config.out_dir + "/table.csv";
    write_file_atomic(path, out.table.to_csv());
    out.artifacts.push_back(path);
  }
  return out;
}

}  // namespace lmat

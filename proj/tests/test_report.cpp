#include <doctest.h>

#include "lmat/matrix_json.hpp"
#include "lmat/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lmat;
using nlohmann::json;

namespace {

std::vector<ConstructionReport> corpus() {
  Field q;
  Field k = Field::parse("Q[t]/(t^2-2)");
  LSet l12 = LSet::parse(q, {"1", "2"});
  LSet l123 = LSet::parse(q, {"1", "2", "3"});
  LSet lk = LSet::parse(k, {"1", "t", "t-1"});
  std::vector<ConstructionReport> out;
  out.push_back(construct_square(l12, make_relation(l12, {2, -1}), 5));
  out.push_back(construct_threehalves(lk, make_relation(lk, {1, -1, 1}), 3));
  out.push_back(construct_fivethirds(l123, make_relation(l123, {3, -3, 1}), 3, 0));
  out.push_back(construct_xy3(q, q.from_int(1), q.from_int(3), 3));
  out.push_back(construct_subset_incidence(6, 3));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("artifacts round-trip byte for byte and verify") {
  for (auto& r : corpus()) {
    CAPTURE(r.name);
    certify_report(r, CertMode::exact, kDefaultPrimes);
    std::string once = dump_json(artifact_json(r));
    json parsed = json::parse(once);
    CHECK(dump_json(parsed) == once);
    // through the matrix types as well
    PaletteMatrix m = palette_from_json(parsed["matrix"]);
    CHECK(dump_json(palette_to_json(m)) == dump_json(parsed["matrix"]));
    auto v = verify_artifact(parsed);
    CHECK(v.ok);
    CHECK(v.failures.empty());
  }
}

TEST_CASE("verify catches a tampered entry") {
  Field q;
  LSet l12 = LSet::parse(q, {"1", "2"});
  auto r = construct_square(l12, make_relation(l12, {2, -1}), 5);
  json a = artifact_json(r);
  auto& m = a["matrix"];
  const std::size_t n = m["rows"].get<std::size_t>();
  // swap the value at (4,11) for the other element of L
  std::uint32_t id = m["ids"][4 * n + 11].get<std::uint32_t>();
  std::uint32_t other = id;
  for (std::uint32_t p = 0; p < m["palette"].size(); ++p)
    if (p != id && m["palette"][p] != r.matrix.field().format(r.lambda)) other = p;
  REQUIRE(other != id);
  m["ids"][4 * n + 11] = other;
  auto v = verify_artifact(a);
  CHECK(!v.ok);
  bool named = false;
  for (const auto& f : v.failures) named = named || f.find("(4,11)") != std::string::npos;
  CHECK(named);

  json outside = artifact_json(r);
  outside["matrix"]["palette"].push_back("7");
  outside["matrix"]["ids"][2 * n + 3] = outside["matrix"]["palette"].size() - 1;
  auto v2 = verify_artifact(outside);
  CHECK(!v2.ok);
  CHECK(v2.failures.front().find("(2,3)") != std::string::npos);
}

TEST_CASE("verify edge cases") {
  json empty = artifact_json("empty", Matrix(Field(), 0, 0), json::object());
  CHECK(verify_artifact(empty).ok);
  CHECK(!verify_artifact(json::array()).ok);
  json bad_rank = artifact_json("j", Matrix::constant(Field(), 3, 3, Field().one()), {{"rank_upper", 0}});
  CHECK(!verify_artifact(bad_rank).ok);
  CHECK(!verify_file("/nonexistent/file.json").ok);
}

TEST_CASE("experiment: square growth table") {
  ExperimentConfig c;
  c.construction = "square";
  c.L = {"1", "2"};
  c.qs = {13, 5, 11, 7};
  auto o = run_experiment(c);
  REQUIRE(o.ok);
  REQUIRE(o.table.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& row = o.table.rows[i];
    CHECK(row.size == std::size_t(row.q) * row.q);
    CHECK(row.rank_upper == 1 + 2 * row.q);
    if (i > 0) {
      CHECK(row.q > o.table.rows[i - 1].q);
      CHECK(row.ratio() > o.table.rows[i - 1].ratio());
    }
  }
  std::string csv = o.table.to_csv();
  CHECK(csv.rfind("q,size,rank_upper,rank_certified_lower,rank_certified_exact,ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(run_experiment(c).table.to_csv() == csv);
}

TEST_CASE("experiment: fivethirds writes artifacts") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lmat_report_test";
  fs::remove_all(dir);
  ExperimentConfig c;
  c.construction = "fivethirds";
  c.L = {"1", "2", "3"};
  c.relation = IntVec{3, -3, 1};
  c.qs = {3};
  c.out_dir = dir.string();
  CHECK_THROWS_WITH(ExperimentConfig(c).validate(), doctest::Contains("seed"));
  c.seed = 0;
  auto o = run_experiment(c);
  REQUIRE(o.ok);
  REQUIRE(o.table.rows.size() == 1);
  CHECK(o.table.rows[0].size == 243);
  REQUIRE(o.artifacts.size() == 2);
  CHECK(verify_file(o.artifacts[0]).ok);
  CHECK(slurp(o.artifacts[1]) == o.table.to_csv());
  // same config, same bytes
  std::string first = slurp(o.artifacts[0]);
  run_experiment(c);
  CHECK(slurp(o.artifacts[0]) == first);
  fs::remove_all(dir);
}

TEST_CASE("experiment config parsing") {
  json j = {{"construction", "square"}, {"L", {"1", "2"}}, {"q", {5, 7}}};
  auto c = ExperimentConfig::from_json(j);
  CHECK(c.qs == std::vector<std::uint32_t>{5, 7});
  CHECK(ExperimentConfig::from_json(c.to_json()).to_json() == c.to_json());
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"construction", "square"}, {"L", {"1", "x"}}, {"q", {5}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"construction", "nope"}, {"L", {"1"}}, {"q", {5}}}), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"construction", "square"}, {"L", {"1", "2"}}, {"q", {5}}, {"extra", 1}}),
                  std::invalid_argument);
  CHECK(split_list(" 1, t -1 ,2") == std::vector<std::string>{"1", "t -1", "2"});
  CHECK_THROWS(split_list("1,,2"));
}

TEST_CASE("experiment reports a failing row") {
  ExperimentConfig c;
  c.construction = "square";
  c.L = {"1", "2"};
  c.qs = {2, 5};  // q must exceed S = 2
  auto o = run_experiment(c);
  CHECK(!o.ok);
  REQUIRE(o.failures.size() == 1);
  CHECK(o.failures[0].rfind("q=2:", 0) == 0);
}

}  // TEST_SUITE

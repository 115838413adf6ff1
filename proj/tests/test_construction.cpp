#include <doctest.h>

#include "lmat/certify.hpp"
#include "lmat/construction.hpp"

#include <random>

using namespace lmat;

namespace {

LSet lset(const char* field, std::vector<std::string> elems) { return LSet::parse(Field::parse(field), elems); }

std::size_t exact_rank(const ConstructionReport& r) { return rank(r.matrix.to_matrix()); }

// Entry(y, x) depends only on x - y: sample random translation pairs.
void check_group_invariance(const ConstructionReport& r, std::mt19937_64& rng) {
  const std::size_t n = r.matrix.size();
  for (int t = 0; t < 200; ++t) {
    FqVector x = vector_at(r.q, r.d, rng() % n), y = vector_at(r.q, r.d, rng() % n), s = vector_at(r.q, r.d, rng() % n);
    FqVector xs = x, ys = y;
    for (std::size_t i = 0; i < r.d; ++i) {
      xs[i] = (x[i] + s[i]) % r.q;
      ys[i] = (y[i] + s[i]) % r.q;
    }
    CHECK(r.matrix.id(vector_index(r.q, y), vector_index(r.q, x)) == r.matrix.id(vector_index(r.q, ys), vector_index(r.q, xs)));
  }
}

}  // namespace

TEST_SUITE("construction") {

TEST_CASE("empty subspace alone gives the all-ones matrix") {
  Field q;
  PhiAssignment phi{q, 2, 2, 1, {{Subspace(2, 2), q.one()}}};
  auto r = grassmann_construct(phi);
  CHECK(r.matrix.size() == 4);
  CHECK(r.matrix.to_matrix() == Matrix::constant(q, 4, 4, q.one()));
  CHECK(r.lambda == q.one());
  CHECK(r.rank_upper == 1);
}

TEST_CASE("phi validation") {
  Field q;
  std::vector<FqVector> line{{1, 0, 0}, {0, 1, 0}};
  PhiAssignment too_big{q, 3, 3, 1, {{Subspace::span(3, 3, line), q.one()}}};
  CHECK_THROWS(grassmann_construct(too_big));
  PhiAssignment dup{q, 3, 3, 1, {{Subspace(3, 3), q.one()}, {Subspace(3, 3), q.one()}}};
  CHECK_THROWS_WITH(grassmann_construct(dup), doctest::Contains("duplicate"));
  std::vector<FqVector> pt{{1, 2, 0}};
  PhiAssignment ok{q, 3, 3, 1, {{Subspace(3, 3), q.one()}, {Subspace::span(3, 3, pt), q.from_rat(Rat(-1, 2))}}};
  PhiAssignment back = PhiAssignment::from_json(ok.to_json());
  CHECK(back.to_json() == ok.to_json());
  CHECK(back.lambda() == q.from_rat(Rat(1, 2)));
}

TEST_CASE("square: {1,2}") {
  LSet l = lset("Q", {"1", "2"});
  auto r = construct_square(l, make_relation(l, {2, -1}), 5);
  CHECK(r.matrix.size() == 25);
  CHECK(r.lambda == l.field().zero());
  CHECK(r.rank_upper == 11);
  CHECK(check_report(r).empty());
  std::size_t rk = exact_rank(r);
  CHECK(rk <= 11);
  CHECK(translation_invariant_rank(r.matrix, 5, 2) == rk);
  CHECK(r.cases.size() == 2);
}

TEST_CASE("square: {2,3} and error paths") {
  LSet l = lset("Q", {"3", "2"});
  auto r = construct_square(l, make_relation(l, {-2, 3}), 5);
  CHECK(r.matrix.size() == 25);
  CHECK(check_report(r).empty());
  LSet l12 = lset("Q", {"1", "2"});
  CHECK_THROWS_WITH(construct_square(l12, make_relation(l12, {2, -1}), 2), doctest::Contains("q <= S"));
  LSet l439 = lset("Q", {"4", "3", "9"});
  CHECK_THROWS_WITH(construct_square(l439, make_relation(l439, {3, -1, -1}), 7), doctest::Contains("sign pattern"));
}

TEST_CASE("square ratio grows with q") {
  LSet l = lset("Q", {"1", "2"});
  IntRelation a = make_relation(l, {2, -1});
  double prev = 0;
  for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
    auto r = construct_square(l, a, q);
    double ratio = double(q) * q / (1 + 2.0 * q);
    CHECK(ratio > prev);
    prev = ratio;
    CHECK(translation_invariant_rank(r.matrix, q, 2) <= 1 + 2 * q);
  }
}

TEST_CASE("threehalves over Q(sqrt2)") {
  LSet l = lset("Q[t]/(t^2-2)", {"1", "t", "t-1"});
  auto r = construct_threehalves(l, make_relation(l, {1, -1, 1}), 5);
  CHECK(r.matrix.size() == 125);
  CHECK(l.field().is_zero(r.lambda));
  CHECK(check_report(r).empty());
  CHECK(r.rank_upper <= 86);
  std::size_t rk = exact_rank(r);
  CHECK(Int(static_cast<unsigned long>(rk)) <= r.rank_upper);
  CHECK(translation_invariant_rank(r.matrix, 5, 3) == rk);
  CHECK(r.cases.count("case 2: H = l") == 1);
  CHECK(r.cases.count("case 3: H = l_{i,i',j}") == 1);
}

TEST_CASE("threehalves {6,10,15}") {
  LSet l = lset("Q", {"6", "10", "15"});
  auto r = construct_threehalves(l, make_relation(l, {0, 3, -2}), 7);
  CHECK(r.matrix.size() == 343);
  CHECK(check_report(r).empty());
  for (const auto& [v, c] : r.histogram) CHECK(l.contains(v));
  auto rk = translation_invariant_rank(r.matrix, 7, 3);
  REQUIRE(rk);
  CHECK(Int(static_cast<unsigned long>(*rk)) <= r.rank_upper);
  CHECK_THROWS_AS(construct_threehalves(l, make_relation(l, {0, 3, -2}), 3), ParameterTooSmall);
}

TEST_CASE("fivethirds {1,2,3} q=3") {
  LSet l = lset("Q", {"1", "2", "3"});
  auto r = construct_fivethirds(l, make_relation(l, {3, -3, 1}), 3, 0);
  CHECK(r.matrix.size() == 243);
  CHECK(check_report(r).empty());
  CHECK(r.rank_upper == 199);
  auto rk = translation_invariant_rank(r.matrix, 3, 5);
  REQUIRE(rk);
  CHECK(*rk <= 199);
  std::size_t cases_seen = r.cases.size();
  CHECK(cases_seen >= 5);
  // Same seed, same matrix.
  auto again = construct_fivethirds(l, make_relation(l, {3, -3, 1}), 3, 0);
  CHECK(again.matrix.palette() == r.matrix.palette());
  CHECK(again.choices == r.choices);
}

TEST_CASE("xy3") {
  Field q;
  auto r = construct_xy3(q, q.from_int(1), q.from_int(3), 3);
  CHECK(r.matrix.size() == 81);
  CHECK(check_report(r).empty());
  CHECK(r.rank_upper == 1 + 4 * 3 + 6 * 9);
  std::size_t rk = exact_rank(r);
  CHECK(rk <= 67);
  CHECK(translation_invariant_rank(r.matrix, 3, 4) == rk);
  CHECK_THROWS_WITH(construct_xy3(q, q.from_int(1), q.from_int(2), 5), doctest::Contains("3x = x+y"));
}

TEST_CASE("subset incidence") {
  auto r62 = construct_subset_incidence(6, 2);
  CHECK(r62.matrix.size() == 15);
  CHECK(exact_rank(r62) <= 7);
  auto r51 = construct_subset_incidence(5, 1);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(r51.matrix.at(i, j) == Field().from_int(i == j ? 0 : 1));
  auto r73 = construct_subset_incidence(7, 3);
  CHECK(r73.matrix.size() == 35);
  CHECK(exact_rank(r73) <= 8);
}

TEST_CASE("group invariance and symmetry across the corpus") {
  std::mt19937_64 rng(12);
  LSet l = lset("Q", {"1", "2"});
  LSet l3 = lset("Q", {"1", "2", "3"});
  Field q;
  std::vector<ConstructionReport> corpus{construct_square(l, make_relation(l, {2, -1}), 7),
                                         construct_fivethirds(l3, make_relation(l3, {3, -3, 1}), 3, 5),
                                         construct_xy3(q, q.from_int(2), q.from_int(-1), 3)};
  for (const auto& r : corpus) {
    CHECK(r.matrix.is_symmetric());
    check_group_invariance(r, rng);
  }
}

TEST_CASE("character-sum rank matches elimination on small instances") {
  Field q;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    std::uint32_t p = trial % 2 ? 3 : 2;
    std::size_t d = 2 + trial % 2;
    PhiAssignment phi{q, p, d, d - 1, {}};
    for (std::size_t s = 0; s < d; ++s) {
      for (const auto& w : enumerate_subspaces(p, d, s)) {
        if (rng() % 3 == 0) phi.support.emplace_back(w, q.from_int(static_cast<long>(rng() % 7) - 3));
      }
    }
    auto r = grassmann_construct(phi);
    CHECK(translation_invariant_rank(r.matrix, p, d) == exact_rank(r));
  }
}

TEST_CASE("extend to size") {
  LSet l = lset("Q", {"1", "2"});
  auto ext = extend_to_size(square_builder(l, make_relation(l, {2, -1})), 30);
  CHECK(ext.q == 7);
  CHECK(ext.matrix.size() == 30);
  REQUIRE(ext.rank_sub);
  REQUIRE(ext.rank_full);
  CHECK(*ext.rank_sub <= *ext.rank_full);
  auto exact = extend_to_size(square_builder(l, make_relation(l, {2, -1})), 25);
  CHECK(exact.q == 5);
  CHECK(exact.matrix.palette() == exact.full.matrix.palette());
  CHECK(exact.matrix.size() == exact.full.matrix.size());
}

TEST_CASE("certification modes") {
  LSet l = lset("Q[t]/(t^2-2)", {"1", "t", "t-1"});
  auto r = construct_threehalves(l, make_relation(l, {1, -1, 1}), 5);
  std::vector<std::uint64_t> primes{1000003};
  CHECK(certify_report(r, CertMode::modular, primes));
  REQUIRE(r.rank_lower);
  std::size_t lower = *r.rank_lower;
  CHECK(certify_report(r, CertMode::exact, primes));
  CHECK(lower <= *r.rank_exact);
}

}

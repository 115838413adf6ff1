#include <doctest.h>

#include "lmat/spectral.hpp"

#include <numeric>
#include <random>

using namespace lmat;

namespace {

Rat leibniz_det(const std::vector<std::vector<Rat>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rat sum = 0;
  do {
    Rat t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= a[i][perm[i]];
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    sum += inv % 2 ? -t : t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

// det(xI - M) at an integer x.
Rat charpoly_at(const Matrix& m, long x) {
  std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) a[i][j] = (i == j ? Rat(x) : Rat(0)) - m.at(i, j).c[0];
  return leibniz_det(a);
}

bool is_01(const Matrix& m) {
  for (const auto& e : m.entries())
    if (!(e.c[0] == 0 || e.c[0] == 1)) return false;
  return true;
}

// Geometric multiplicity of sqrt(2) in a rational matrix, using only Q:
// ker(M^2 - 2I) splits into the +-sqrt(2) eigenspaces, which are Galois
// conjugate and so of equal dimension.
std::size_t sqrt2_multiplicity_over_q(const Matrix& m) {
  Field q;
  Matrix s = m * m - Matrix::identity(q, m.rows()).scaled(q.from_int(2));
  return (m.rows() - rank(s)) / 2;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("companion matrices") {
  Field q;
  CHECK(companion(UPoly::parse("x^2-2")) == Matrix::from_ints(q, {{0, 2}, {1, 0}}));
  CHECK(companion(UPoly::parse("x-5")) == Matrix::from_ints(q, {{5}}));
  Matrix c3 = companion(UPoly::parse("x^3-x-1"));
  CHECK(c3.at(0, 2).c[0] == 1);
  CHECK(c3.at(1, 2).c[0] == 1);
  CHECK(c3.at(2, 2).c[0] == 0);

  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-6, 6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rat> cs;
    for (int i = 0; i < 1 + trial % 4; ++i) cs.push_back(coef(rng));
    cs.push_back(1);
    UPoly f(cs);
    Matrix c = companion(f);
    for (long x = -3; x <= 3; ++x) CHECK(charpoly_at(c, x) == f.eval(x));
  }
  CHECK_THROWS(companion(UPoly::parse("2*x^2-1")));
  CHECK_THROWS(companion(UPoly::parse("x^2-1/2")));

  Field k = Field::parse("Q[t]/(t^2-2)");
  CHECK(eigen_multiplicity(embed_rational(companion(UPoly::parse("x^2-2")), k), k.generator()) == 1);
}

TEST_CASE("amplify: zero progenitor and small blocks") {
  Field q;
  LSet l01(q, {q.zero(), q.one()}, true);
  auto r = amplify({Matrix(q, 1, 1), l01, 9}, q.zero());
  CHECK(r.matrix == Matrix(q, 9, 9));
  CHECK(*r.multiplicity == 9);

  auto r1 = amplify({Matrix::from_ints(q, {{0, 1}, {1, 0}}), l01, 1});
  CHECK(r1.matrix.rows() == 2);
  CHECK(is_01(r1.matrix));
  CHECK(q.is_zero(r1.matrix.at(0, 0)));
  CHECK(q.is_zero(r1.matrix.at(1, 1)));
}

TEST_CASE("amplify: symmetry, entries and bounds") {
  Field q;
  LSet l01(q, {q.zero(), q.one()}, true);
  Matrix prog = Matrix::from_ints(q, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  REQUIRE(prog.is_symmetric());
  // eigenvalue -2 of prog: rows sum to 3, 2, 3; check directly
  const Elem lam = q.from_int(-2);
  std::size_t mp = eigen_multiplicity(prog, lam);
  REQUIRE(mp == 1);
  auto r = amplify({prog, l01, 25}, lam);
  CHECK(r.matrix.rows() == 75);
  CHECK(r.matrix.is_symmetric());
  CHECK(is_01(r.matrix));
  for (std::size_t i = 0; i < 75; ++i) CHECK(q.is_zero(r.matrix.at(i, i)));
  std::size_t m = eigen_multiplicity(r.matrix, lam);
  CHECK(m == *r.multiplicity);
  long sum = 0;
  for (const auto& p : r.patches) sum += static_cast<long>(p.rank * p.blocks);
  CHECK(static_cast<long>(m) >= 25 - sum);
  CHECK(r.lower_bound_fine >= r.lower_bound_coarse);

  Field k = Field::parse("Q[t]/(t^2-2)");
  LSet lk(k, {k.zero(), k.one()}, true);
  Matrix bad(k, 1, 1);
  bad.at(0, 0) = k.generator();
  CHECK_THROWS_WITH(amplify({bad, lk, 4}), doctest::Contains("not an integer combination"));
  CHECK_THROWS(amplify({Matrix(q, 1, 1), LSet::parse(q, {"1"}), 4}));
}

TEST_CASE("digraph pipeline: sqrt 2") {
  auto r = digraph_pipeline(UPoly::parse("x^2-2"), 50);
  CHECK(r.matrix.rows() == 50);
  CHECK(is_01(r.matrix));
  CHECK(r.multiplicity == sqrt2_multiplicity_over_q(r.matrix));
  CHECK(r.multiplicity >= 11);
  CHECK(r.multiplicity <= 25);
  CHECK(static_cast<long>(r.multiplicity) >= r.lower_bound);
  const long base = 50 - static_cast<long>(r.multiplicity);
  CHECK(std::abs(static_cast<long>(r.translated_rank) - base) <= 1);
}

TEST_CASE("digraph pipeline: integer eigenvalues") {
  Field q;
  auto r = digraph_pipeline(UPoly::parse("x-1"), 9);
  CHECK(is_01(r.matrix));
  CHECK(r.multiplicity == 9 - rank(r.matrix - Matrix::identity(q, 9)));
  CHECK(r.multiplicity >= 3);

  auto z = digraph_pipeline(UPoly::parse("x"), 5);
  CHECK(z.multiplicity == 5);
  auto m1 = digraph_pipeline(UPoly::parse("x+1"), 6);
  CHECK(m1.multiplicity == 5);
  auto r2 = digraph_pipeline(UPoly::parse("x+3"), 30);
  CHECK(is_01(r2.matrix));
  CHECK(r2.multiplicity == 30 - rank(r2.matrix + Matrix::identity(q, 30).scaled(q.from_int(3))));
}

TEST_CASE("digraph pipeline: upper bound n/d on every output") {
  struct Case {
    const char* f;
    std::size_t n;
  };
  for (Case c : {Case{"x^2-2", 10}, Case{"x^2-x-1", 20}, Case{"x-2", 16}, Case{"x^3-2", 12}, Case{"x^2-3", 31}}) {
    auto r = digraph_pipeline(UPoly::parse(c.f), c.n);
    CAPTURE(c.f);
    CHECK(r.matrix.rows() == c.n);
    CHECK(is_01(r.matrix));
    CHECK(r.multiplicity <= c.n / r.d);
    CHECK(static_cast<long>(r.multiplicity) >= r.lower_bound);
  }
  CHECK_THROWS_WITH(digraph_pipeline(UPoly::parse("x^2-1"), 10), doctest::Contains("reducible"));
}

TEST_CASE("polyrel matrix") {
  Field k = Field::parse("Q[t]/(t^2-2)");
  Field q;
  LSet l = LSet::parse(k, {"1", "t"});
  auto r = polyrel_matrix(MultiPoly::parse("2*x1^2 - x2^2", q, 2), l);
  REQUIRE(r.matrix.rows() == 2);
  CHECK(r.monomials == std::vector<Exponents>{{1, 0}, {0, 1}});
  // det(M - I) = 0 by the 2x2 formula
  const Matrix& m = r.matrix;
  Elem det = k.sub(k.mul(k.sub(m.at(0, 0), k.one()), k.sub(m.at(1, 1), k.one())), k.mul(m.at(0, 1), m.at(1, 0)));
  CHECK(k.is_zero(det));
  CHECK(r.rank_shifted == 1);
  // entries are integer multiples of sqrt(2) - 1
  Elem a = k.sub(k.generator(), k.one());
  for (const auto& e : m.entries()) CHECK(k.is_integer(k.div(e, a)));

  CHECK_THROWS_WITH(polyrel_matrix(MultiPoly::parse("x1", q, 2), l), doctest::Contains("< 2"));
  CHECK_THROWS_WITH(polyrel_matrix(MultiPoly::parse("x1^2 - x2^2", q, 2), l), doctest::Contains("P(1,...,1) = 0"));
  CHECK_THROWS_WITH(polyrel_matrix(MultiPoly::parse("x1^2", q, 2), l), doctest::Contains("P(alpha)"));
}

TEST_CASE("polyrel matrix with three variables") {
  // x1 * (3 x1 - 3 x2 + x3) on {1, 2, 3}
  Field q;
  LSet l = LSet::parse(q, {"1", "2", "3"});
  auto r = polyrel_matrix(MultiPoly::parse("3*x1^2 - 3*x1*x2 + x1*x3", q, 3), l);
  CHECK(r.matrix.rows() == 3);
  CHECK(eigen_multiplicity(r.matrix, q.one()) >= 1);
  std::vector<std::vector<Rat>> a(3, std::vector<Rat>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a[i][j] = r.matrix.at(i, j).c[0] - (i == j ? 1 : 0);
  CHECK(leibniz_det(a) == 0);
}

TEST_CASE("polytobetter pipeline") {
  Field k = Field::parse("Q[t]/(t^2-2)");
  Field q;
  LSet l = LSet::parse(k, {"1", "t"});
  auto P = MultiPoly::parse("2*x1^2 - x2^2", q, 2);

  auto small = polytobetter_pipeline(P, l, 1);
  CHECK(small.matrix.rows() == 2);
  CHECK(small.rank <= 2);

  auto r = polytobetter_pipeline(P, l, 25);
  REQUIRE(r.matrix.rows() == 50);
  std::size_t ones = 0, roots = 0;
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) {
      const Elem& e = r.matrix.at(i, j);
      if (i == j) CHECK(k.is_zero(e));
      else if (k.is_one(e)) ++ones;
      else if (e == k.generator()) ++roots;
    }
  CHECK(ones + roots == 50 * 49);
  CHECK(r.rank == rank(r.matrix));
  CHECK(static_cast<long>(r.rank) <= r.rank_bound);
  CHECK(r.rank <= 50 - *r.amplified.multiplicity + 1);
}

}  // TEST_SUITE

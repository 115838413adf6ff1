#include "lmat/vanishing.hpp"

#include <bit>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace lmat {

namespace {

void validate(const Pattern& pattern, std::size_t k) {
  const std::size_t n = pattern.size();
  if (n > kPatternDetMaxSize) {
    throw std::invalid_argument("pattern of size " + std::to_string(n) + " exceeds the symbolic limit " +
                                std::to_string(kPatternDetMaxSize));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (pattern[i].size() != n) throw std::invalid_argument("pattern is not square");
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t lab = pattern[i][j];
      if (i == j && lab != 0) throw std::invalid_argument("pattern diagonal must carry the marker 0");
      if (i != j && (lab == 0 || lab > k)) {
        throw std::invalid_argument("pattern label out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

// All b in N^m with |b| <= n, in lexicographic order.
void simplex_points(std::size_t m, unsigned n, std::vector<Exponents>& out) {
  Exponents cur(m, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == m) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, n);
}

Rat det_at(const Pattern& pattern, const std::vector<Rat>& x) {
  const std::size_t n = pattern.size();
  Field q;
  Matrix m(q, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.at(i, j) = q.from_rat(x[pattern[i][j] - 1]);
    }
  }
  return determinant(m).c[0];
}

}  // namespace

MultiPoly pattern_det_cofactor(const Pattern& pattern, std::size_t k) {
  validate(pattern, k);
  const std::size_t n = pattern.size();
  Field q;
  if (n == 0) return MultiPoly::constant(q, k, q.one());
  std::vector<MultiPoly> vars;
  for (std::size_t i = 0; i < k; ++i) vars.push_back(MultiPoly::variable(q, k, i));
  std::unordered_map<std::uint32_t, MultiPoly> memo;
  std::function<MultiPoly(std::uint32_t)> rec = [&](std::uint32_t used) -> MultiPoly {
    const std::size_t row = static_cast<std::size_t>(std::popcount(used));
    if (row == n) return MultiPoly::constant(q, k, q.one());
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    MultiPoly sum(q, k);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used & (1U << j)) continue;
      if (j != row) {
        MultiPoly t = vars[pattern[row][j] - 1] * rec(used | (1U << j));
        sum = pos % 2 == 0 ? sum + t : sum - t;
      }
      ++pos;
    }
    memo.emplace(used, sum);
    return sum;
  };
  return rec(0);
}

MultiPoly pattern_det(const Pattern& pattern, std::size_t k) {
  validate(pattern, k);
  if (k == 0) throw std::invalid_argument("pattern_det needs at least one variable");
  const std::size_t n = pattern.size();
  const unsigned deg = static_cast<unsigned>(n);
  Field q;
  const std::size_t m = k - 1;  // x_1 = 1, the others run over the simplex

  std::vector<Exponents> pts;
  simplex_points(m, deg, pts);
  std::map<Exponents, Rat> value;
  for (const auto& b : pts) {
    std::vector<Rat> x(k, Rat(1));
    for (std::size_t i = 0; i < m; ++i) x[i + 1] = b[i];
    value[b] = det_at(pattern, x);
  }

  // binom[i][a] = C(x_{i+2}, a) as a polynomial
  std::vector<std::vector<MultiPoly>> binom(m);
  for (std::size_t i = 0; i < m; ++i) {
    MultiPoly y = MultiPoly::variable(q, k, i + 1);
    binom[i].push_back(MultiPoly::constant(q, k, q.one()));
    for (unsigned a = 1; a <= deg; ++a) {
      MultiPoly step = (y - MultiPoly::constant(q, k, q.from_int(a - 1))).scaled(q.from_rat(Rat(1, a)));
      binom[i].push_back(binom[i].back() * step);
    }
  }

  MultiPoly dehom(q, k);
  for (const auto& a : pts) {
    // forward difference Delta^a f(0)
    Rat diff = 0;
    for (const auto& [b, fb] : value) {
      bool below = true;
      unsigned gap = 0;
      Int coef = 1;
      for (std::size_t i = 0; i < m && below; ++i) {
        if (b[i] > a[i]) below = false;
        else {
          gap += a[i] - b[i];
          coef *= binomial(a[i], b[i]);
        }
      }
      if (!below) continue;
      diff += (gap % 2 == 0 ? Rat(coef) : Rat(-coef)) * fb;
    }
    if (diff == 0) continue;
    MultiPoly term = MultiPoly::constant(q, k, q.from_rat(diff));
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i] > 0) term = term * binom[i][a[i]];
    }
    dehom = dehom + term;
  }

  MultiPoly out(q, k);
  for (const auto& [e, c] : dehom.terms()) {
    Exponents h = e;
    unsigned rest = 0;
    for (std::size_t i = 1; i < k; ++i) rest += e[i];
    if (rest > deg) throw std::logic_error("interpolant exceeds the determinant degree");
    h[0] = deg - rest;
    out.add_term(h, c);
  }

  if (n <= 6 && !(out == pattern_det_cofactor(pattern, k))) {
    throw std::logic_error("pattern determinant: interpolation disagrees with cofactor expansion");
  }
  return out;
}

Pattern pattern_of(const Matrix& m, const LSet& l) {
  if (!m.square()) throw std::invalid_argument("pattern_of needs a square matrix");
  if (m.field() != l.field()) throw std::invalid_argument("matrix and L live in different fields");
  const std::size_t n = m.rows();
  Pattern p(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        if (!m.field().is_zero(m.at(i, i))) {
          throw std::invalid_argument("not an L-matrix: nonzero diagonal at " + std::to_string(i));
        }
        continue;
      }
      auto idx = l.index_of(m.at(i, j));
      if (!idx) {
        throw std::invalid_argument("not an L-matrix: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") = " + m.field().format(m.at(i, j)) + " is not in L");
      }
      p[i][j] = *idx + 1;
    }
  }
  return p;
}

GenupperWitness genupper_witness(const Matrix& m, const LSet& l) {
  Pattern pat = pattern_of(m, l);
  const std::size_t n = pat.size();
  const std::size_t k = l.size();
  GenupperWitness w;
  w.rank = rank(m);
  w.r = w.rank + 1;
  if (n < w.r) {
    throw std::invalid_argument("rank precondition fails: size " + std::to_string(n) + " < rank + 1 = " +
                                std::to_string(w.r));
  }
  w.v = n - w.r;
  if (w.v == 0) w.warnings.push_back("v = 0: the witness only carries the normalisation P(1,...,1) = 1");

  Field q;
  MultiPoly pn = pattern_det(pat, k);
  Pattern minor(pat.begin(), pat.end() - 1);
  for (auto& row : minor) row.pop_back();
  MultiPoly pn1 = pattern_det(minor, k);
  MultiPoly p = pn + MultiPoly::variable(q, k, 0) * pn1;
  if ((n - 1) % 2 == 1) p = p.scaled(q.from_int(-1));
  w.P = p;

  if (!p.is_homogeneous() || p.degree() != static_cast<long>(n)) {
    throw std::logic_error("genupper witness is not homogeneous of degree " + std::to_string(n));
  }
  if (!p.is_integral()) throw std::logic_error("genupper witness has non-integer coefficients");
  std::vector<Elem> ones(k, q.one());
  if (!q.is_one(p.eval(ones))) {
    throw std::logic_error("genupper witness: P(1,...,1) = " + q.format(p.eval(ones)) + ", expected 1");
  }
  w.order = vanishing_order(p.over(l.field()), l.elems());
  if (!w.order.at_least(w.v)) {
    throw std::logic_error("genupper witness vanishes to order " + std::to_string(w.order.order) + " < v = " +
                           std::to_string(w.v));
  }
  return w;
}

}  // namespace lmat

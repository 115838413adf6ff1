#include "lmat/spectral.hpp"

#include "lmat/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lmat {

Matrix companion(const UPoly& f) {
  if (!f.is_monic()) throw std::invalid_argument("companion: polynomial must be monic");
  if (!f.is_integral()) throw std::invalid_argument("companion: polynomial must have integer coefficients");
  if (f.degree() < 1) throw std::invalid_argument("companion: degree must be at least 1");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  Field q;
  Matrix m(q, d, d);
  for (std::size_t i = 1; i < d; ++i) m.at(i, i - 1) = q.one();
  for (std::size_t i = 0; i < d; ++i) m.at(i, d - 1) = q.from_rat(-f.coeff(i));
  return m;
}

Matrix embed_rational(const Matrix& m, const Field& target) {
  if (m.field().kind() != FieldKind::rational) throw std::invalid_argument("embed_rational needs a matrix over Q");
  Matrix out(target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = target.from_rat(m.at(i, j).c[0]);
  }
  return out;
}

namespace {

// beta = sum A_i alpha_i with integer A, if possible.
std::optional<IntVec> decompose(const Field& f, const std::vector<Elem>& alphas, const Elem& beta) {
  const std::size_t k = alphas.size();
  RatMat m;
  RatVec b;
  if (f.kind() == FieldKind::prime) {
    RatVec row;
    for (const auto& a : alphas) row.push_back(a.c[0]);
    row.push_back(Rat(Int(f.modulus_prime())));
    m.push_back(row);
    b.push_back(beta.c[0]);
  } else {
    for (std::size_t c = 0; c < f.degree(); ++c) {
      RatVec row;
      for (const auto& a : alphas) row.push_back(a.c[c]);
      m.push_back(row);
      b.push_back(beta.c[c]);
    }
  }
  auto res = integer_solvable(m, b);
  if (!res.solution) return std::nullopt;
  IntVec a = *res.solution;
  a.resize(k);
  return a;
}

struct BuiltPatch {
  Patch info;
  PaletteMatrix qprime;  // l x l, or empty for the zero patch
};

BuiltPatch build_patch(const Field& f, const std::vector<Elem>& alphas, const Elem& beta, std::size_t l) {
  BuiltPatch out;
  out.info.beta = beta;
  auto A = decompose(f, alphas, beta);
  if (!A) {
    throw std::invalid_argument("amplify: entry " + f.format(beta) + " is not an integer combination of L \\ {0}");
  }
  out.info.A = *A;

  std::vector<Elem> shifted{beta};
  bool has_zero = f.is_zero(beta);
  for (const auto& a : alphas) {
    shifted.push_back(f.add(beta, a));
    if (f.is_zero(shifted.back())) has_zero = true;
  }
  if (has_zero) {
    // Q'_beta = 0 is itself a {beta, beta + alpha_i}-matrix here.
    out.info.construction = "zero";
    out.info.rank = f.is_zero(beta) ? 0 : 1;
    out.info.rank_exact = true;
    return out;
  }

  IntVec rel{Int(1)};
  for (const auto& ai : *A) {
    rel[0] += ai;
    rel.push_back(-ai);
  }
  LSet lb(f, shifted);
  IntRelation r = make_relation(lb, rel);
  Builder b = alphas.size() == 1 ? square_builder(lb, r) : threehalves_builder(lb, r);
  out.info.construction = b.name;
  ExtendedMatrix ext = extend_to_size(b, l);
  out.info.q = ext.q;
  out.qprime = ext.matrix;

  if (l <= kExactEliminationMaxSize) {
    Matrix qb = ext.matrix.to_matrix() - Matrix::constant(f, l, l, beta);
    out.info.rank = rank(qb);
    out.info.rank_exact = true;
  } else if (ext.rank_sub) {
    out.info.rank = std::min(l, *ext.rank_sub + 1);
  } else {
    out.info.rank = l;
  }
  return out;
}

}  // namespace

AmplifyResult amplify(const AmplifyPlan& plan, const std::optional<Elem>& lambda, const std::optional<Field>& lambda_field) {
  const Matrix& m = plan.progenitor;
  const Field& f = m.field();
  if (!m.square()) throw std::invalid_argument("amplify: progenitor must be square");
  if (plan.L.field() != f) throw std::invalid_argument("amplify: progenitor and L live in different fields");
  if (!plan.L.contains(f.zero())) throw std::invalid_argument("amplify: L must contain 0");
  if (plan.l == 0) throw std::invalid_argument("amplify: block size must be positive");
  std::vector<Elem> alphas;
  for (const auto& a : plan.L.elems()) {
    if (!f.is_zero(a)) alphas.push_back(a);
  }
  if (alphas.empty()) throw std::invalid_argument("amplify: L needs a nonzero element");

  const std::size_t n = m.rows(), l = plan.l;
  std::map<Elem, BuiltPatch> patches;
  for (const auto& e : m.entries()) {
    if (!patches.count(e)) patches.emplace(e, build_patch(f, alphas, e, l));
    ++patches.at(e).info.blocks;
  }

  AmplifyResult res;
  res.matrix = Matrix(f, n * l, n * l);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Elem& beta = m.at(a, b);
      const BuiltPatch& p = patches.at(beta);
      for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
          // beta delta_ij + Q'_beta(i, j) - beta
          Elem v = p.info.construction == "zero" ? f.zero() : p.qprime.at(i, j);
          if (i == j) v = f.add(v, beta);
          v = f.sub(v, beta);
          if (!plan.L.contains(v)) {
            throw std::logic_error("amplify: entry outside L at block (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")");
          }
          res.matrix.at(a * l + i, b * l + j) = std::move(v);
        }
      }
    }
  }

  long fine = 0;
  std::size_t max_rank = 0;
  for (auto& [beta, p] : patches) {
    fine += static_cast<long>(p.info.rank * p.info.blocks);
    max_rank = std::max(max_rank, p.info.rank);
    res.patches.push_back(p.info);
  }

  if (lambda) {
    const Field& lf = lambda_field ? *lambda_field : f;
    auto lift = [&](const Matrix& x) { return lf == f ? x : embed_rational(x, lf); };
    std::size_t mp = eigen_multiplicity(lift(m), *lambda);
    std::size_t ml = eigen_multiplicity(lift(res.matrix), *lambda);
    res.progenitor_multiplicity = mp;
    res.multiplicity = ml;
    res.lower_bound_fine = static_cast<long>(l * mp) - fine;
    res.lower_bound_coarse = static_cast<long>(l * mp) - static_cast<long>(n * n * max_rank);
    if (static_cast<long>(ml) < res.lower_bound_fine || res.lower_bound_fine < res.lower_bound_coarse) {
      throw std::logic_error("amplify: multiplicity bound violated");
    }
  }
  return res;
}

namespace {

std::size_t translated_rank(const Matrix& d01, const Field& k, const Elem& lambda) {
  Matrix m = embed_rational(d01, k);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.at(i, j) = k.add(m.at(i, j), lambda);
    }
  }
  return rank(m);
}

}  // namespace

DigraphResult digraph_pipeline(const UPoly& minpoly, std::size_t n) {
  if (!minpoly.is_monic() || !minpoly.is_integral()) {
    throw std::invalid_argument("digraph_pipeline: minimal polynomial must be monic with integer coefficients");
  }
  if (minpoly.degree() < 1) throw std::invalid_argument("digraph_pipeline: degree must be at least 1");
  if (n == 0) throw std::invalid_argument("digraph_pipeline: n must be positive");
  const std::size_t d = static_cast<std::size_t>(minpoly.degree());
  if (d >= 2 && d <= 4 && find_factor_deg4(minpoly)) {
    throw std::invalid_argument("digraph_pipeline: " + minpoly.format() + " is reducible over Q");
  }

  DigraphResult res;
  res.n = n;
  res.d = d;
  res.upper_bound = n / d;
  Field q;

  if (d == 1) {
    res.field = q;
    const Int lam = Int(-minpoly.coeff(0));
    res.lambda = q.from_int(lam);
    res.l = n;
    if (lam == 0) {
      res.route = "zero matrix";
      res.matrix = Matrix(q, n, n);
    } else if (lam == -1) {
      res.route = "J - I";
      res.matrix = Matrix::constant(q, n, n, q.one()) - Matrix::identity(q, n);
    } else {
      // Square construction on {lambda, lambda + 1}, relation (1 + lambda, -lambda).
      res.route = "square on {lambda, lambda+1}";
      LSet l(q, {q.from_int(lam), q.from_int(lam + 1)});
      IntRelation r = make_relation(l, IntVec{lam + 1, -lam});
      ExtendedMatrix ext = extend_to_size(square_builder(l, r), n);
      Matrix m = ext.matrix.to_matrix();
      Patch p;
      p.beta = res.lambda;
      p.construction = "square";
      p.q = ext.q;
      p.rank = rank(m);
      p.rank_exact = true;
      p.blocks = 1;
      res.patches.push_back(p);
      res.matrix = Matrix(q, n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) res.matrix.at(i, j) = q.sub(m.at(i, j), res.lambda);
        }
      }
    }
    res.multiplicity = eigen_multiplicity(res.matrix, res.lambda);
    res.lower_bound = res.patches.empty() ? static_cast<long>(res.multiplicity)
                                          : static_cast<long>(n) - static_cast<long>(res.patches[0].rank) - 1;
  } else {
    res.route = "companion amplification";
    res.field = Field::number_field(minpoly);
    res.lambda = res.field.generator();
    res.l = (n + d - 1) / d;
    AmplifyPlan plan{companion(minpoly), LSet(q, {q.zero(), q.one()}, true), res.l};
    AmplifyResult amp = amplify(plan, res.lambda, res.field);
    res.patches = amp.patches;
    res.matrix = amp.matrix.leading_principal(n);
    res.multiplicity = eigen_multiplicity(embed_rational(res.matrix, res.field), res.lambda);
    // truncation loses at most l d - n
    res.lower_bound = amp.lower_bound_fine - static_cast<long>(res.l * d - n);
  }

  for (const auto& e : res.matrix.entries()) {
    if (!q.is_zero(e) && !q.is_one(e)) throw std::logic_error("digraph_pipeline: output is not a {0,1}-matrix");
  }
  if (res.multiplicity > res.upper_bound) {
    throw std::logic_error("digraph_pipeline: multiplicity exceeds n / deg");
  }
  if (static_cast<long>(res.multiplicity) < res.lower_bound) {
    throw std::logic_error("digraph_pipeline: multiplicity below the certified lower bound");
  }
  res.realized_c = (static_cast<double>(n) / static_cast<double>(d) - static_cast<double>(res.multiplicity)) /
                   std::sqrt(static_cast<double>(n));

  // M + lambda (J - I) has rank n - m + {-1, 0, 1}
  res.translated_rank = translated_rank(res.matrix, res.field, res.lambda);
  const long tr = static_cast<long>(res.translated_rank), base = static_cast<long>(n - res.multiplicity);
  if (tr < base - 1 || tr > base + 1) throw std::logic_error("digraph_pipeline: translated rank out of range");
  return res;
}

namespace {

void monomials_of_degree(std::size_t k, unsigned deg, std::vector<Exponents>& out) {
  Exponents cur(k, 0);
  // descending lex: larger x1 exponent first
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == k) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, deg);
}

// Smallest i >= 1 (0-based; x_2 onwards) dividing the monomial.
std::size_t pred_var(const Exponents& m) {
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] > 0) return i;
  }
  throw std::logic_error("pred of a pure x1 power");
}

}  // namespace

PolyrelResult polyrel_matrix(const MultiPoly& P, const LSet& L) {
  const Field& f = L.field();
  const std::size_t k = L.size();
  if (P.field().kind() != FieldKind::rational) throw std::invalid_argument("polyrel_matrix: P must be over Q");
  if (P.num_vars() != k) throw std::invalid_argument("polyrel_matrix: P needs one variable per element of L");
  if (!P.is_integral()) throw std::invalid_argument("polyrel_matrix: P must have integer coefficients");
  if (P.is_zero() || !P.is_homogeneous()) throw std::invalid_argument("polyrel_matrix: P must be homogeneous");
  const long dl = P.degree();
  if (dl < 2) throw std::invalid_argument("polyrel_matrix: degree " + std::to_string(dl) + " < 2");
  const unsigned d = static_cast<unsigned>(dl);
  Field q;
  Elem at_ones = P.eval(std::vector<Elem>(k, q.one()));
  if (!q.is_one(at_ones)) throw std::invalid_argument("polyrel_matrix: P(1,...,1) = " + q.format(at_ones) + ", expected 1");
  MultiPoly pk = P.over(f);
  Elem at_alpha = pk.eval(L.elems());
  if (!f.is_zero(at_alpha)) throw std::invalid_argument("polyrel_matrix: P(alpha) = " + f.format(at_alpha) + ", expected 0");

  // Q(x) = P(x1, x2 + x1, ..., xk + x1)
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < k; ++i) {
    MultiPoly img = MultiPoly::variable(q, k, i);
    if (i > 0) img = img + MultiPoly::variable(q, k, 0);
    images.push_back(img);
  }
  MultiPoly Q = P.compose(images);

  const Elem& a1 = L[0];
  std::vector<Elem> ap(k, f.zero());  // alpha'_i = alpha_i - alpha_1
  for (std::size_t i = 1; i < k; ++i) ap[i] = f.sub(L[i], a1);

  PolyrelResult res;
  monomials_of_degree(k, d - 1, res.monomials);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < res.monomials.size(); ++i) index[res.monomials[i]] = i;
  const std::size_t D = res.monomials.size();
  const std::size_t top = 0;  // x1^(d-1)

  Matrix m1(f, D, D), m2(f, D, D);
  for (std::size_t c = 1; c < D; ++c) {
    Exponents mx = res.monomials[c];
    mx[0] += 1;
    std::size_t i = pred_var(mx);
    --mx[i];
    std::size_t r = index.at(mx);
    m1.at(r, c) = f.add(m1.at(r, c), ap[i]);
  }
  for (const auto& [e, c] : Q.terms()) {
    if (e[0] == d) continue;
    std::size_t i = pred_var(e);
    Exponents pr = e;
    --pr[i];
    std::size_t r = index.at(pr);
    m2.at(r, top) = f.sub(m2.at(r, top), f.mul(f.from_rat(c.c[0]), ap[i]));
  }

  // u_m = m(alpha_1, alpha'_2, ..., alpha'_k)
  std::vector<Elem> point = ap;
  point[0] = a1;
  std::vector<Elem> u;
  for (const auto& mono : res.monomials) {
    Elem v = f.one();
    for (std::size_t i = 0; i < k; ++i) v = f.mul(v, f.pow(point[i], mono[i]));
    u.push_back(v);
  }
  const Elem a1d = f.pow(a1, d);
  for (std::size_t c = 0; c < D; ++c) {
    Elem s1 = f.neg(f.mul(a1, u[c])), s2 = f.zero();
    for (std::size_t r = 0; r < D; ++r) {
      s1 = f.add(s1, f.mul(u[r], m1.at(r, c)));
      s2 = f.add(s2, f.mul(u[r], m2.at(r, c)));
    }
    const Elem want1 = c == top ? f.neg(a1d) : f.zero();
    const Elem want2 = c == top ? a1d : f.zero();
    if (!(f.normalize(s1) == f.normalize(want1)) || !(f.normalize(s2) == f.normalize(want2))) {
      throw std::logic_error("polyrel_matrix: row identity fails at column " + std::to_string(c));
    }
  }

  res.matrix = m1 + m2;
  Matrix shifted = res.matrix - Matrix::identity(f, D).scaled(a1);
  res.rank_shifted = rank(shifted);
  if (res.rank_shifted >= D) throw std::logic_error("polyrel_matrix: alpha_1 is not an eigenvalue");

  std::vector<Elem> lp{f.zero()};
  for (std::size_t i = 1; i < k; ++i) lp.push_back(ap[i]);
  res.L_prime = LSet(f, lp, true);
  return res;
}

PolytobetterResult polytobetter_pipeline(const MultiPoly& P, const LSet& L, std::size_t l) {
  PolytobetterResult res{Matrix(), polyrel_matrix(P, L), {}, 0, 0, 0};
  const Field& f = L.field();
  const Elem& a1 = L[0];
  AmplifyPlan plan{res.progenitor.matrix, res.progenitor.L_prime, l};
  res.amplified = amplify(plan, a1);
  const Matrix& ml = res.amplified.matrix;
  const std::size_t n = ml.rows();
  res.matrix = ml;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      res.matrix.at(i, j) = f.add(ml.at(i, j), a1);
      if (!L.contains(res.matrix.at(i, j))) throw std::logic_error("polytobetter: entry outside L");
    }
  }
  res.rank = rank(res.matrix);
  const std::size_t D = res.progenitor.matrix.rows();
  const long mp = static_cast<long>(*res.amplified.progenitor_multiplicity);
  res.slack = 0;
  for (const auto& p : res.amplified.patches) res.slack += static_cast<long>(p.rank * p.blocks);
  res.rank_bound = static_cast<long>(l) * (static_cast<long>(D) - mp) + res.slack + 1;
  if (static_cast<long>(res.rank) > res.rank_bound) throw std::logic_error("polytobetter: rank exceeds its bound");
  return res;
}

}  // namespace lmat

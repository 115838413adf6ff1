#include "lmat/relation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace lmat {

namespace {

Int round_rat(const Rat& x) {
  Rat shifted = x + Rat(1, 2);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return q;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

struct GramSchmidt {
  std::vector<RatVec> star;  // b*_j
  std::vector<Rat> norm2;    // <b*_j, b*_j>
  std::vector<RatVec> mu;    // mu[i][j] for j < i
};

GramSchmidt gram_schmidt(const std::vector<IntVec>& b) {
  GramSchmidt g;
  const std::size_t n = b.size();
  g.star.resize(n);
  g.norm2.resize(n);
  g.mu.assign(n, RatVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    RatVec v = to_rat(b[i]);
    RatVec bi = v;
    for (std::size_t j = 0; j < i; ++j) {
      g.mu[i][j] = dot(bi, g.star[j]) / g.norm2[j];
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= g.mu[i][j] * g.star[j][t];
    }
    g.star[i] = std::move(v);
    g.norm2[i] = dot(g.star[i], g.star[i]);
    if (g.norm2[i] == 0) throw std::invalid_argument("lattice basis is linearly dependent");
  }
  return g;
}

// Bounded search for lattice vectors v with |t + v|^2 <= radius2.
constexpr std::size_t kEnumerationNodeLimit = 20'000'000;

void enumerate_near(const std::vector<IntVec>& basis, const IntVec& t, const Rat& radius2,
                    const std::function<void(const IntVec&)>& visit) {
  const std::size_t r = basis.size();
  const std::size_t k = t.size();
  if (r == 0) {
    visit(t);
    return;
  }
  GramSchmidt g = gram_schmidt(basis);
  RatVec y(k);
  for (std::size_t i = 0; i < k; ++i) y[i] = -Rat(t[i]);
  // Coordinates of y along b*_j, and the part of y orthogonal to the lattice.
  std::vector<Rat> u(r);
  Rat inside = 0;
  for (std::size_t j = 0; j < r; ++j) {
    u[j] = dot(y, g.star[j]) / g.norm2[j];
    inside += u[j] * u[j] * g.norm2[j];
  }
  Rat budget = radius2 - (dot(y, y) - inside);
  if (budget < 0) return;

  std::vector<Int> x(r, 0);
  std::size_t nodes = 0;
  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t level, const Rat& rem) {
    if (++nodes > kEnumerationNodeLimit) throw std::runtime_error("lattice enumeration exceeded its node budget");
    const std::size_t j = level;
    Rat center = u[j];
    for (std::size_t i = j + 1; i < r; ++i) center -= Rat(x[i]) * g.mu[i][j];
    double spread = std::sqrt(std::max(0.0, Rat(rem / g.norm2[j]).get_d()));
    Int lo = round_rat(center) - Int(static_cast<long>(std::ceil(spread))) - 1;
    Int hi = round_rat(center) + Int(static_cast<long>(std::ceil(spread))) + 1;
    for (Int xi = lo; xi <= hi; ++xi) {
      Rat diff = Rat(xi) - center;
      Rat cost = diff * diff * g.norm2[j];
      if (cost > rem) continue;
      x[j] = xi;
      if (j == 0) {
        IntVec v = t;
        for (std::size_t i = 0; i < r; ++i) {
          if (x[i] == 0) continue;
          for (std::size_t c = 0; c < k; ++c) v[c] += x[i] * basis[i][c];
        }
        visit(v);
      } else {
        rec(j - 1, rem - cost);
      }
    }
    x[j] = 0;
  };
  rec(r - 1, budget);
}

// Nearest-plane reduction of t modulo the lattice.
IntVec babai_reduce(const std::vector<IntVec>& basis, IntVec t) {
  if (basis.empty()) return t;
  GramSchmidt g = gram_schmidt(basis);
  for (std::size_t j = basis.size(); j-- > 0;) {
    Int c = round_rat(dot(to_rat(t), g.star[j]) / g.norm2[j]);
    if (c == 0) continue;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] -= c * basis[j][i];
  }
  return t;
}

IntMat clear_rows(const RatMat& rows) {
  IntMat out;
  for (const auto& row : rows) {
    Int l = 1;
    for (const auto& x : row) l = lcm(l, x.get_den());
    IntVec r(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) r[j] = Rat(row[j] * l).get_num();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

// ---- LSet -----------------------------------------------------------------

LSet::LSet(Field field, std::vector<Elem> elems, bool allow_zero) : field_(std::move(field)) {
  for (auto& e : elems) {
    Elem n = field_.normalize(std::move(e));
    if (!allow_zero && field_.is_zero(n)) throw std::invalid_argument("L must not contain 0");
    if (std::find(elems_.begin(), elems_.end(), n) != elems_.end()) {
      throw std::invalid_argument("L has a repeated element " + field_.format(n));
    }
    elems_.push_back(std::move(n));
  }
}

LSet LSet::parse(const Field& field, const std::vector<std::string>& elems, bool allow_zero) {
  std::vector<Elem> parsed;
  for (const auto& s : elems) parsed.push_back(field.parse_elem(s));
  return LSet(field, std::move(parsed), allow_zero);
}

bool LSet::contains(const Elem& e) const { return index_of(e).has_value(); }

std::optional<std::size_t> LSet::index_of(const Elem& e) const {
  auto it = std::find(elems_.begin(), elems_.end(), e);
  if (it == elems_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

LSet LSet::permuted(const std::vector<std::size_t>& order) const {
  std::vector<Elem> out;
  for (auto i : order) out.push_back(elems_.at(i));
  return LSet(field_, std::move(out), true);
}

bool LSet::all_integer() const {
  return std::all_of(elems_.begin(), elems_.end(), [&](const Elem& e) { return field_.is_integer(e); });
}

std::string LSet::format() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ", ";
    s += field_.format(elems_[i]);
  }
  return s + "}";
}

// ---- relations --------------------------------------------------------------

bool is_primitive_relation(const LSet& l, const IntVec& a) {
  if (a.size() != l.size()) return false;
  const Field& f = l.field();
  Int sum = 0;
  Elem acc = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i];
    acc = f.add(acc, f.mul(f.from_int(a[i]), l[i]));
  }
  // Over F_p the sum condition is still an identity in Z, not a congruence.
  return sum == 1 && f.is_zero(acc);
}

IntRelation make_relation(const LSet& l, IntVec a) {
  if (a.size() != l.size()) throw std::invalid_argument("relation length differs from |L|");
  Int sum = 0;
  for (const auto& x : a) sum += x;
  if (sum != 1) throw std::invalid_argument("relation coefficients sum to " + to_string(sum) + ", not 1");
  if (!is_primitive_relation(l, a)) throw std::invalid_argument("sum A_i alpha_i is not 0");
  return IntRelation{std::move(a)};
}

Int max_norm(const IntVec& a) {
  Int m = 0;
  for (const auto& x : a) m = std::max(m, Int(abs(x)));
  return m;
}

bool relation_less(const IntVec& a, const IntVec& b) {
  Int na = max_norm(a), nb = max_norm(b);
  if (na != nb) return na < nb;
  return a < b;
}

RelationSystem relation_system(const LSet& l) {
  const Field& f = l.field();
  RelationSystem sys;
  sys.k = l.size();
  if (f.kind() == FieldKind::prime) {
    sys.modular_slack = true;
    RatVec row;
    for (const auto& e : l.elems()) row.push_back(e.c[0]);
    row.push_back(Rat(Int(static_cast<unsigned long>(f.modulus_prime()))));
    sys.rows.push_back(std::move(row));
    return sys;
  }
  for (std::size_t coord = 0; coord < f.degree(); ++coord) {
    RatVec row;
    for (const auto& e : l.elems()) row.push_back(e.c[coord]);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

std::vector<IntVec> lll_reduce(std::vector<IntVec> b) {
  const std::size_t n = b.size();
  if (n <= 1) return b;
  const Rat delta(3, 4);
  GramSchmidt g = gram_schmidt(b);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      Int q = round_rat(g.mu[k][j]);
      if (q == 0) continue;
      for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
      g = gram_schmidt(b);
    }
    if (g.norm2[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      g = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

std::vector<IntVec> relation_lattice(const LSet& l) {
  RelationSystem sys = relation_system(l);
  std::vector<IntVec> basis = integer_kernel(clear_rows(sys.rows));
  if (sys.modular_slack) {
    // Projection away from the slack coordinate is injective on the kernel.
    for (auto& v : basis) v.pop_back();
  }
  return lll_reduce(std::move(basis));
}

PrimitiveRelationResult primitive_relation(const LSet& l) {
  RelationSystem sys = relation_system(l);
  PrimitiveRelationResult out;
  out.system = sys.rows;
  RatVec ones(sys.rows.empty() ? l.size() : sys.rows[0].size(), Rat(1));
  if (sys.modular_slack) ones.back() = 0;
  out.system.push_back(std::move(ones));
  out.rhs.assign(out.system.size(), Rat(0));
  out.rhs.back() = 1;

  IntegerSolveResult solved = integer_solvable(out.system, out.rhs);
  if (!solved.solution) {
    out.certificate = std::move(solved.certificate);
    return out;
  }
  IntVec a0(solved.solution->begin(), solved.solution->begin() + static_cast<long>(l.size()));

  // Directions that keep both identities: relations with coefficient sum 0.
  std::vector<IntVec> rel = relation_lattice(l);
  std::vector<IntVec> coset_basis;
  if (!rel.empty()) {
    IntMat sums(1, IntVec(rel.size()));
    for (std::size_t i = 0; i < rel.size(); ++i) {
      for (const auto& x : rel[i]) sums[0][i] += x;
    }
    for (const auto& coeffs : integer_kernel(sums)) {
      IntVec v(l.size(), 0);
      for (std::size_t i = 0; i < rel.size(); ++i) {
        for (std::size_t c = 0; c < l.size(); ++c) v[c] += coeffs[i] * rel[i][c];
      }
      coset_basis.push_back(std::move(v));
    }
    coset_basis = lll_reduce(std::move(coset_basis));
  }

  IntVec start = babai_reduce(coset_basis, a0);
  Int bound = max_norm(start);
  Rat radius2 = Rat(bound * bound) * static_cast<long>(l.size());
  IntVec best = start;
  enumerate_near(coset_basis, start, radius2, [&](const IntVec& cand) {
    if (relation_less(cand, best)) best = cand;
  });
  out.relation = make_relation(l, std::move(best));
  return out;
}

IntRelation normalize_min_negatives(const IntRelation& rel, const LSet& l) {
  if (!l.all_integer()) throw std::invalid_argument("normalize_min_negatives needs integer L");
  IntVec a = make_relation(l, rel.A).A;
  auto value = [&](std::size_t i) { return Int(l[i].c[0].get_num()); };
  while (true) {
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 0) neg.push_back(i);
    }
    if (neg.size() < 2) break;
    std::size_t i = neg[0], j = neg[1], m = 0;
    while (m == i || m == j) ++m;
    const std::size_t idx[3] = {i, j, m};
    const Int x = value(i), y = value(j), z = value(m);
    // (z - y, x - z, y - x) solves B_1 + B_2 + B_3 = 0 and x B_1 + y B_2 + z B_3 = 0.
    Int b[3] = {z - y, x - z, y - x};
    int positive = 0;
    for (const auto& v : b) positive += v > 0;
    if (positive < 2) {
      for (auto& v : b) v = -v;
    }
    for (Int s = 1;; ++s) {
      int pos = 0;
      for (int t = 0; t < 3; ++t) pos += (a[idx[t]] + s * b[t]) > 0;
      if (pos >= 2) {
        for (int t = 0; t < 3; ++t) a[idx[t]] += s * b[t];
        break;
      }
    }
  }
  return make_relation(l, std::move(a));
}

Differences relation_to_differences(const IntRelation& rel, const LSet& l) {
  IntVec a = make_relation(l, rel.A).A;
  Differences d;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] > 0) d.B[{i, 0}] = a[i];
    if (a[i] < 0) d.B[{0, i}] = -a[i];
  }
  const Field& f = l.field();
  Elem acc = l[0];
  for (const auto& [key, b] : d.B) {
    acc = f.add(acc, f.mul(f.from_int(b), f.sub(l[key.first], l[key.second])));
    d.S += b;
  }
  if (!f.is_zero(acc)) throw std::logic_error("difference form of the relation does not vanish");
  return d;
}

PointCriterion point_criterion(const RatVec& v) {
  PointCriterion out;
  out.gcd = 0;
  // Running Bezout: g = sum coef_i (s_i - r_i).
  IntVec coef(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int diff = v[i].get_den() - v[i].get_num();
    Int x, y;
    Int g = ext_gcd(out.gcd, diff, x, y);
    for (std::size_t t = 0; t < i; ++t) coef[t] *= x;
    coef[i] = y;
    out.gcd = g;
  }
  if (out.gcd != 1) return out;
  out.solvable = true;
  out.A.resize(v.size());
  Int sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.A[i] = v[i].get_den() * coef[i];
    sum += out.A[i];
  }
  out.c = 1 - sum;
  Rat at_v = Rat(out.c);
  for (std::size_t i = 0; i < v.size(); ++i) at_v += Rat(out.A[i]) * v[i];
  if (at_v != 0) throw std::logic_error("point criterion witness does not vanish at v");
  return out;
}

std::optional<UPoly> algebraic_integer_of_inverse(const UPoly& g) {
  if (g.degree() < 1) throw std::invalid_argument("minimal polynomial must have degree >= 1");
  if (g.eval(Rat(1)) == 0) throw std::invalid_argument("alpha = 1: 1/(1 - alpha) is undefined");
  // alpha = (lambda - 1)/lambda, so lambda^d g(alpha) = sum g_i (lambda - 1)^i lambda^(d - i).
  const long d = g.degree();
  const UPoly lam_minus_one({Rat(-1), Rat(1)});
  UPoly h;
  UPoly power_minus = UPoly::monomial(Rat(1), 0);
  for (long i = 0; i <= d; ++i) {
    h = h + UPoly::monomial(g.coeff(static_cast<std::size_t>(i)), static_cast<std::size_t>(d - i)) * power_minus;
    power_minus = power_minus * lam_minus_one;
  }
  UPoly monic = h.monic();
  if (!monic.is_integral()) return std::nullopt;
  return monic;
}

}  // namespace lmat

#include "lmat/construction.hpp"

#include "lmat/arith.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace lmat {

// ---- PaletteMatrix ----------------------------------------------------------

PaletteMatrix::PaletteMatrix(Field field, std::size_t n, std::vector<Elem> palette, std::vector<std::uint32_t> ids)
    : field_(std::move(field)), n_(n), palette_(std::move(palette)), ids_(std::move(ids)) {
  if (ids_.size() != n_ * n_) throw std::invalid_argument("palette matrix: id count is not n^2");
  for (auto id : ids_) {
    if (id >= palette_.size()) throw std::invalid_argument("palette matrix: id out of range");
  }
}

PaletteMatrix PaletteMatrix::from_matrix(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("palette matrix must be square");
  std::map<Elem, std::uint32_t> index;
  std::vector<Elem> palette;
  std::vector<std::uint32_t> ids;
  ids.reserve(m.entries().size());
  for (const auto& e : m.entries()) {
    auto [it, fresh] = index.try_emplace(e, static_cast<std::uint32_t>(palette.size()));
    if (fresh) palette.push_back(e);
    ids.push_back(it->second);
  }
  return PaletteMatrix(m.field(), m.rows(), std::move(palette), std::move(ids));
}

Matrix PaletteMatrix::to_matrix() const {
  if (n_ * n_ > kExactRankEntryLimit) throw std::length_error("matrix too large to expand densely");
  std::vector<Elem> entries;
  entries.reserve(ids_.size());
  for (auto id : ids_) entries.push_back(palette_[id]);
  return Matrix(field_, n_, n_, std::move(entries));
}

PaletteMatrix PaletteMatrix::leading_principal(std::size_t m) const {
  if (m > n_) throw std::invalid_argument("leading principal submatrix larger than the matrix");
  std::vector<std::uint32_t> ids;
  ids.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) ids.push_back(id(i, j));
  }
  return PaletteMatrix(field_, m, palette_, std::move(ids));
}

bool PaletteMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (id(i, j) != id(j, i)) return false;
    }
  }
  return true;
}

std::vector<std::pair<Elem, std::size_t>> PaletteMatrix::off_diagonal_histogram() const {
  std::vector<std::size_t> counts(palette_.size(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j) ++counts[id(i, j)];
    }
  }
  std::vector<std::pair<Elem, std::size_t>> out;
  for (std::size_t v = 0; v < palette_.size(); ++v) {
    if (counts[v]) out.emplace_back(palette_[v], counts[v]);
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> PaletteMatrix::reduce(std::uint64_t p) const {
  std::vector<std::uint64_t> res(palette_.size());
  switch (field_.kind()) {
    case FieldKind::prime:
      if (p != field_.modulus_prime()) return std::nullopt;
      for (std::size_t v = 0; v < palette_.size(); ++v) res[v] = palette_[v].c[0].get_num().get_ui();
      break;
    case FieldKind::rational:
      for (std::size_t v = 0; v < palette_.size(); ++v) {
        auto r = reduce_mod(palette_[v].c[0], p);
        if (!r) return std::nullopt;
        res[v] = *r;
      }
      break;
    case FieldKind::numberfield: {
      // t -> a root of f mod p.
      std::vector<std::uint64_t> fc;
      for (const auto& c : integer_coeffs(field_.modulus())) {
        Int r = c % Int(static_cast<unsigned long>(p));
        if (r < 0) r += Int(static_cast<unsigned long>(p));
        fc.push_back(r.get_ui());
      }
      std::optional<std::uint64_t> root;
      for (std::uint64_t r = 0; r < p && !root; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t i = fc.size(); i-- > 0;) acc = (mul_mod(acc, r, p) + fc[i]) % p;
        if (acc == 0) root = r;
      }
      if (!root) return std::nullopt;
      for (std::size_t v = 0; v < palette_.size(); ++v) {
        std::uint64_t acc = 0;
        const auto& c = palette_[v].c;
        for (std::size_t i = c.size(); i-- > 0;) {
          auto ci = reduce_mod(c[i], p);
          if (!ci) return std::nullopt;
          acc = (mul_mod(acc, *root, p) + *ci) % p;
        }
        res[v] = acc;
      }
      break;
    }
  }
  std::vector<std::uint64_t> out(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) out[i] = res[ids_[i]];
  return out;
}

// ---- PhiAssignment ----------------------------------------------------------

void PhiAssignment::validate() const {
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
  if (s >= d) throw std::invalid_argument("phi needs s < d");
  std::set<Subspace> seen;
  for (const auto& [w, v] : support) {
    if (w.q() != q || w.ambient_dim() != d) throw std::invalid_argument("support subspace lives in a different space");
    if (w.dim() > s) throw std::invalid_argument("support subspace of dimension " + std::to_string(w.dim()) + " > s");
    if (!seen.insert(w).second) throw std::invalid_argument("duplicate subspace in phi support");
    field.normalize(v);
  }
}

PhiAssignment PhiAssignment::pruned() const {
  PhiAssignment out = *this;
  out.support.clear();
  for (const auto& entry : support) {
    if (!field.is_zero(entry.second)) out.support.push_back(entry);
  }
  return out;
}

Elem PhiAssignment::lambda() const {
  Elem acc = field.zero();
  for (const auto& entry : support) acc = field.add(acc, entry.second);
  return acc;
}

Int PhiAssignment::rank_upper() const {
  Int total = 0;
  for (const auto& [w, v] : support) {
    if (field.is_zero(v)) continue;
    Int term;
    mpz_ui_pow_ui(term.get_mpz_t(), q, w.dim());
    total += term;
  }
  return total;
}

Elem PhiAssignment::hyperplane_sum(const FqVector& z) const {
  Elem acc = field.zero();
  for (const auto& [w, v] : support) {
    if (w.is_orthogonal(z)) acc = field.add(acc, v);
  }
  return acc;
}

nlohmann::json PhiAssignment::to_json() const {
  nlohmann::json sup = nlohmann::json::array();
  for (const auto& [w, v] : support) sup.push_back({{"basis", w.basis()}, {"value", field.format(v)}});
  return {{"field", field.descriptor()}, {"q", q}, {"d", d}, {"s", s}, {"support", sup}};
}

PhiAssignment PhiAssignment::from_json(const nlohmann::json& j) {
  PhiAssignment phi;
  phi.field = Field::parse(j.at("field").get<std::string>());
  phi.q = j.at("q").get<std::uint32_t>();
  phi.d = j.at("d").get<std::size_t>();
  phi.s = j.at("s").get<std::size_t>();
  for (const auto& item : j.at("support")) {
    auto basis = item.at("basis").get<std::vector<FqVector>>();
    Subspace w = Subspace::span(phi.q, phi.d, basis);
    if (w.dim() != basis.size()) throw std::invalid_argument("phi support basis is not linearly independent");
    phi.support.emplace_back(std::move(w), phi.field.parse_elem(item.at("value").get<std::string>()));
  }
  phi.validate();
  return phi;
}

// ---- report checks -----------------------------------------------------------

std::vector<std::string> check_report(const ConstructionReport& r) {
  std::vector<std::string> bad;
  const PaletteMatrix& m = r.matrix;
  const Field& f = m.field();
  if (!m.is_symmetric()) bad.push_back("matrix is not symmetric");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(m.at(i, i) == r.lambda)) {
      bad.push_back("diagonal entry " + std::to_string(i) + " is " + f.format(m.at(i, i)) + ", expected lambda = " +
                    f.format(r.lambda));
      break;
    }
  }
  if (r.declared_L) {
    for (const auto& [value, count] : m.off_diagonal_histogram()) {
      if (!r.declared_L->contains(value)) {
        bad.push_back("off-diagonal value " + f.format(value) + " (" + std::to_string(count) + " entries) not in L = " +
                      r.declared_L->format());
      }
    }
  }
  std::size_t total = 0;
  for (const auto& hv : r.histogram) total += hv.second;
  if (m.size() > 0 && total != m.size() * (m.size() - 1)) bad.push_back("histogram does not count every off-diagonal entry");
  return bad;
}

namespace {

void ensure_ok(const ConstructionReport& r) {
  auto bad = check_report(r);
  if (!bad.empty()) throw std::logic_error(r.name + " construction failed its invariants: " + bad.front());
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

nlohmann::json vec_json(const FqVector& v) { return nlohmann::json(v); }

nlohmann::json subspace_json(const Subspace& s) { return nlohmann::json(s.basis()); }

Subspace point_space(std::uint32_t q, const FqVector& v) { return normalize_point(q, v).as_subspace(); }

Subspace span2(std::uint32_t q, const FqVector& a, const FqVector& b) {
  std::vector<FqVector> v{a, b};
  return Subspace::span(q, a.size(), v);
}

// Walks the hyperplanes z^perp (one per projective point z) and records the
// case label together with the matrix entry at (0, z).
template <typename Classify>
void verify_cases(ConstructionReport& r, Classify classify) {
  const Field& f = r.matrix.field();
  for (const auto& pt : enumerate_points(r.q, r.d)) {
    auto [label, expected] = classify(pt.rep);
    const Elem& entry = r.matrix.at(0, vector_index(r.q, pt.rep));
    if (!(entry == expected)) {
      throw std::logic_error(r.name + ": hyperplane " + nlohmann::json(pt.rep).dump() + " in " + label + " has entry " +
                             f.format(entry) + ", the case analysis predicts " + f.format(expected));
    }
    ++r.cases[label];
  }
}

std::size_t negative_count(const IntVec& a) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](const Int& x) { return x < 0; }));
}

}  // namespace

// ---- engine ------------------------------------------------------------------

ConstructionReport grassmann_construct(const PhiAssignment& phi_in, const std::optional<LSet>& declared) {
  phi_in.validate();
  PhiAssignment phi = phi_in.pruned();
  const Field& f = phi.field;
  const std::uint32_t q = phi.q;
  const std::size_t d = phi.d;
  const std::uint64_t n64 = ipow(q, d);
  if (n64 > 20000) throw std::length_error("construction size q^d = " + std::to_string(n64) + " exceeds 20000");
  const std::size_t n = static_cast<std::size_t>(n64);

  // One value per projective point; the diagonal carries lambda.
  auto points = enumerate_points(q, d);
  std::vector<Elem> palette;
  std::map<Elem, std::uint32_t> pal_index;
  auto intern = [&](const Elem& e) {
    auto [it, fresh] = pal_index.try_emplace(e, static_cast<std::uint32_t>(palette.size()));
    if (fresh) palette.push_back(e);
    return it->second;
  };
  const Elem lambda = phi.lambda();
  const std::uint32_t diag_id = intern(lambda);
  std::vector<std::uint32_t> point_value(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) point_value[p] = intern(phi.hyperplane_sum(points[p].rep));

  // Every nonzero vector -> palette id of its projective point.
  std::vector<std::uint32_t> vec_value(n, diag_id);
  std::vector<std::uint32_t> point_of_index(n, 0);
  for (std::size_t p = 0; p < points.size(); ++p) point_of_index[vector_index(q, points[p].rep)] = static_cast<std::uint32_t>(p);
  for (std::size_t v = 1; v < n; ++v) {
    ProjPoint pt = normalize_point(q, vector_at(q, d, v));
    vec_value[v] = point_value[point_of_index[vector_index(q, pt.rep)]];
  }

  std::vector<FqVector> digits(n);
  for (std::size_t v = 0; v < n; ++v) digits[v] = vector_at(q, d, v);
  std::vector<std::uint32_t> ids(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t diff = 0;
      for (std::size_t i = 0; i < d; ++i) diff = diff * q + (digits[x][i] + q - digits[y][i]) % q;
      ids[y * n + x] = vec_value[diff];
    }
  }

  ConstructionReport r;
  r.name = "phi";
  r.matrix = PaletteMatrix(f, n, std::move(palette), std::move(ids));
  r.declared_L = declared;
  r.lambda = lambda;
  r.rank_upper = phi.rank_upper();
  r.histogram = r.matrix.off_diagonal_histogram();
  r.phi = phi;
  r.q = q;
  r.d = d;
  ensure_ok(r);
  return r;
}

ConstructionReport construct_square(const LSet& l, const IntRelation& rel, std::uint32_t q) {
  IntVec a = make_relation(l, rel.A).A;
  if (negative_count(a) != 1) {
    throw std::invalid_argument("sign pattern not satisfiable by reordering: need exactly one negative coefficient");
  }
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
  const std::size_t first = static_cast<std::size_t>(std::find_if(a.begin(), a.end(), [](const Int& x) { return x < 0; }) - a.begin());
  const Field& f = l.field();
  Int S = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != first) S += a[i];
  }
  if (Int(q) <= S) throw ParameterTooSmall("q <= S: q = " + std::to_string(q) + ", S = " + to_string(S));

  PhiAssignment phi{f, q, 2, 1, {}};
  phi.support.emplace_back(Subspace(q, 2), l[first]);
  auto points = enumerate_points(q, 2);
  std::size_t next = 0;
  nlohmann::json chosen = nlohmann::json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == first) continue;
    for (Int j = 0; j < a[i]; ++j) {
      const auto& p = points[next++];
      phi.support.emplace_back(p.as_subspace(), f.sub(l[i], l[first]));
      chosen.push_back({{"point", vec_json(p.rep)}, {"element", f.format(l[i])}});
    }
  }

  ConstructionReport r = grassmann_construct(phi, l);
  r.name = "square";
  r.choices = {{"alpha_1", f.format(l[first])}, {"S", to_string(S)}, {"points", chosen}};
  if (!f.is_zero(r.lambda)) throw std::logic_error("square construction: lambda is not 0");

  // Hyperplanes of F_q^2 are single points: z^perp is a chosen point or not.
  std::map<Subspace, Elem> chosen_value;
  for (std::size_t t = 1; t < phi.support.size(); ++t) chosen_value[phi.support[t].first] = f.add(l[first], phi.support[t].second);
  verify_cases(r, [&](const FqVector& z) -> std::pair<std::string, Elem> {
    auto it = chosen_value.find(hyperplane_of(q, z));
    if (it == chosen_value.end()) return {"no chosen point", l[first]};
    return {"chosen point", it->second};
  });
  return r;
}

ConstructionReport construct_threehalves(const LSet& l, const IntRelation& rel, std::uint32_t q) {
  Differences diff = relation_to_differences(rel, l);
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
  if (Int(q) + 1 < diff.S) throw ParameterTooSmall("q + 1 < S: q = " + std::to_string(q) + ", S = " + to_string(diff.S));
  const Field& f = l.field();
  const Elem& a1 = l[0];

  // l = {x_0 = 0}; p-points on l and q-points off l in lexicographic order.
  const FqVector e0{1, 0, 0};
  const Subspace line_l = hyperplane_of(q, e0);
  std::vector<ProjPoint> on_l, off_l;
  for (auto& p : enumerate_points(q, 3)) (p.rep[0] == 0 ? on_l : off_l).push_back(p);

  struct Triple {
    std::size_t i, ip;
    ProjPoint p, qp;
    Subspace line;
  };
  std::vector<Triple> triples;
  Elem phi_l = f.zero();
  std::size_t next = 0;
  for (const auto& [key, b] : diff.B) {
    phi_l = f.add(phi_l, f.mul(f.from_int(b), f.sub(a1, l[key.second])));
    for (Int j = 0; j < b; ++j, ++next) {
      triples.push_back({key.first, key.second, on_l[next], off_l[next], span2(q, on_l[next].rep, off_l[next].rep)});
    }
  }

  PhiAssignment phi{f, q, 3, 2, {}};
  phi.support.emplace_back(Subspace(q, 3), a1);
  phi.support.emplace_back(line_l, phi_l);
  nlohmann::json chosen = nlohmann::json::array();
  for (const auto& t : triples) {
    phi.support.emplace_back(t.p.as_subspace(), f.sub(l[t.ip], a1));
    phi.support.emplace_back(t.line, f.sub(l[t.i], l[t.ip]));
    chosen.push_back({{"pair", {t.i + 1, t.ip + 1}}, {"p", vec_json(t.p.rep)}, {"q", vec_json(t.qp.rep)}});
  }

  ConstructionReport r = grassmann_construct(phi, l);
  r.name = "threehalves";
  r.choices = {{"line", subspace_json(line_l)}, {"S", to_string(diff.S)}, {"triples", chosen}};
  if (!f.is_zero(r.lambda)) throw std::logic_error("threehalves construction: lambda is not 0");

  for (const char* c : {"case 1: no p-point", "case 2: H = l", "case 3: H = l_{i,i',j}", "case 4: p_{i,i',j} in H"}) r.cases[c] = 0;
  verify_cases(r, [&](const FqVector& z) -> std::pair<std::string, Elem> {
    Subspace h = hyperplane_of(q, z);
    if (h == line_l) return {"case 2: H = l", a1};
    for (const auto& t : triples) {
      if (h == t.line) return {"case 3: H = l_{i,i',j}", l[t.i]};
    }
    for (const auto& t : triples) {
      if (h.contains(t.p.rep)) return {"case 4: p_{i,i',j} in H", l[t.ip]};
    }
    return {"case 1: no p-point", a1};
  });
  return r;
}

ConstructionReport construct_fivethirds(const LSet& l, const IntRelation& rel, std::uint32_t q, std::uint64_t seed) {
  IntVec a = make_relation(l, rel.A).A;
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
  // alpha_2 takes the first negative coefficient; alpha_1 the other negative
  // one if present, else the first remaining index.
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) neg.push_back(i);
  }
  if (neg.empty() || neg.size() > 2) {
    throw std::invalid_argument("fivethirds needs one or two negative coefficients, found " + std::to_string(neg.size()));
  }
  const std::size_t i2 = neg[0];
  std::size_t i1 = neg.size() == 2 ? neg[1] : (i2 == 0 ? 1 : 0);
  const Field& f = l.field();
  const Elem &a1 = l[i1], &a2 = l[i2];
  // B' = 1 - A_2 lines and points (one more than -A_2) so that lambda = 0.
  const Int b_lines = 1 - a[i2];
  Int f_count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != i1 && i != i2) f_count += a[i];
  }

  const std::size_t nb = b_lines.get_ui();
  if (Int(q) + 1 < b_lines) {
    throw ParameterTooSmall("q + 1 < B' = " + to_string(b_lines) + ": not enough hyperplanes through V (q = " +
                            std::to_string(q) + ")");
  }

  // V = span(e_2, e_3, e_4); lines in V; points p_j = (a, b, 0, 0, 0).
  const std::size_t d = 5;
  std::vector<FqVector> vgens{{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
  const Subspace V = Subspace::span(q, d, vgens);
  std::vector<Subspace> lines;
  for (const auto& w : enumerate_subspaces(q, 3, 2)) {
    if (lines.size() == nb) break;
    std::vector<FqVector> emb;
    for (const auto& row : w.basis()) emb.push_back({0, 0, row[0], row[1], row[2]});
    lines.push_back(Subspace::span(q, d, emb));
  }
  std::vector<FqVector> pts;
  for (const auto& p : enumerate_points(q, 2)) {
    if (pts.size() == nb) break;
    pts.push_back({p.rep[0], p.rep[1], 0, 0, 0});
  }

  // f-flats: random 3-dim subspaces accepted under I1-I3.
  std::mt19937_64 rng(seed);
  std::vector<Subspace> fflats;
  std::vector<std::size_t> f_elem;  // index into L
  const std::size_t budget = 200000;
  std::size_t draws = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == i1 || i == i2) continue;
    for (Int j = 0; j < a[i]; ++j) {
      while (true) {
        if (++draws > budget) {
          throw ParameterTooSmall("f-flat sampling budget exhausted (q = " + std::to_string(q) + ", seed = " +
                                  std::to_string(seed) + ")");
        }
        std::vector<FqVector> g(3, FqVector(d));
        for (auto& row : g)
          for (auto& x : row) x = static_cast<std::uint32_t>(rng() % q);
        Subspace cand = Subspace::span(q, d, g);
        if (cand.dim() != 3) continue;
        bool ok = true;
        for (const auto& ln : lines) ok = ok && cand.join(ln).dim() == d;           // I1
        for (const auto& p : pts) ok = ok && !cand.contains(p);                      // I2
        for (const auto& other : fflats) ok = ok && cand.join(other).dim() == d;     // I3
        if (!ok) continue;
        fflats.push_back(std::move(cand));
        f_elem.push_back(i);
        break;
      }
    }
  }
  // Exhaustive re-check of I1-I3 over all pairs of the accepted sample.
  for (std::size_t u = 0; u < fflats.size(); ++u) {
    for (const auto& ln : lines) {
      if (fflats[u].join(ln).dim() != d) throw std::logic_error("I1 violated");
    }
    for (const auto& p : pts) {
      if (fflats[u].contains(p)) throw std::logic_error("I2 violated");
    }
    for (std::size_t w = u + 1; w < fflats.size(); ++w) {
      if (fflats[u].join(fflats[w]).dim() != d) throw std::logic_error("I3 violated");
    }
  }
  std::vector<Subspace> lp;
  for (std::size_t j = 0; j < nb; ++j) {
    std::vector<FqVector> g = lines[j].basis();
    g.push_back(pts[j]);
    lp.push_back(Subspace::span(q, d, g));
  }

  PhiAssignment phi{f, q, d, 3, {}};
  phi.support.emplace_back(Subspace(q, d), a1);
  phi.support.emplace_back(V, f.mul(f.sub(a2, a1), f.from_int(1 - b_lines)));
  for (std::size_t j = 0; j < nb; ++j) {
    phi.support.emplace_back(lines[j], f.sub(a2, a1));
    phi.support.emplace_back(lp[j], f.sub(a1, a2));
  }
  for (std::size_t u = 0; u < fflats.size(); ++u) phi.support.emplace_back(fflats[u], f.sub(l[f_elem[u]], a1));

  ConstructionReport r = grassmann_construct(phi, l);
  r.name = "fivethirds";
  r.seed = seed;
  nlohmann::json jl = nlohmann::json::array(), jp = nlohmann::json::array(), jf = nlohmann::json::array();
  for (const auto& ln : lines) jl.push_back(subspace_json(ln));
  for (const auto& p : pts) jp.push_back(vec_json(p));
  for (std::size_t u = 0; u < fflats.size(); ++u) jf.push_back({{"flat", subspace_json(fflats[u])}, {"element", f.format(l[f_elem[u]])}});
  r.choices = {{"alpha_1", f.format(a1)}, {"alpha_2", f.format(a2)}, {"B_prime", to_string(b_lines)}, {"V", subspace_json(V)},
               {"lines", jl}, {"points", jp}, {"f_flats", jf}, {"draws", draws}};
  if (!f.is_zero(r.lambda)) throw std::logic_error("fivethirds construction: lambda is not 0");

  // Zero counts stay visible: case 4 is empty whenever every hyperplane
  // through V carries a p-point (B' = q + 1).
  for (const char* c : {"case 1: f-flat", "case 2: no f-flat, no l-line", "case 3: V and one p-point", "case 4: V, no p-point",
                        "case 5: l_j without p_j", "case 6: l_j and p_j"}) {
    r.cases[c] = 0;
  }
  verify_cases(r, [&](const FqVector& z) -> std::pair<std::string, Elem> {
    Subspace h = hyperplane_of(q, z);
    std::vector<std::size_t> fs, ls, ps;
    for (std::size_t u = 0; u < fflats.size(); ++u)
      if (h.contains(fflats[u])) fs.push_back(u);
    for (std::size_t j = 0; j < nb; ++j)
      if (h.contains(lines[j])) ls.push_back(j);
    for (std::size_t j = 0; j < nb; ++j)
      if (h.contains(pts[j])) ps.push_back(j);
    if (!fs.empty()) {
      if (fs.size() > 1 || !ls.empty()) throw std::logic_error("hyperplane violates I1/I3 structure");
      return {"case 1: f-flat", l[f_elem[fs[0]]]};
    }
    if (ls.empty()) return {"case 2: no f-flat, no l-line", a1};
    if (ls.size() >= 2) {
      if (!h.contains(V)) throw std::logic_error("two l-lines but V not contained");
      if (ps.size() > 1) throw std::logic_error("hyperplane through V contains two p-points");
      if (ps.size() == 1) return {"case 3: V and one p-point", a1};
      return {"case 4: V, no p-point", a2};
    }
    const std::size_t j = ls[0];
    if (std::find(ps.begin(), ps.end(), j) != ps.end()) return {"case 6: l_j and p_j", a1};
    return {"case 5: l_j without p_j", a2};
  });
  return r;
}

ConstructionReport construct_xy3(const Field& f, const Elem& x, const Elem& y, std::uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
  const Elem xy = f.add(x, y), x3 = f.mul(f.from_int(3), x), y3 = f.mul(f.from_int(3), y);
  if (x3 == xy) throw std::invalid_argument("L degenerate: 3x = x+y");
  if (y3 == xy) throw std::invalid_argument("L degenerate: 3y = x+y");
  if (x3 == y3) throw std::invalid_argument("L degenerate: 3x = 3y");
  for (const auto* e : {&xy, &x3, &y3}) {
    if (f.is_zero(*e)) throw std::invalid_argument("L degenerate: contains 0");
  }
  LSet l(f, {xy, x3, y3});

  // p_1..p_4 = e_1..e_4 span P^3 for every q.
  std::vector<FqVector> p(4, FqVector(4, 0));
  for (std::size_t i = 0; i < 4; ++i) p[i][i] = 1;
  const Elem two_x_minus_y = f.sub(f.add(x, x), y), two_y_minus_x = f.sub(f.add(y, y), x);
  const Elem x_minus_2y = f.neg(two_y_minus_x), y_minus_2x = f.neg(two_x_minus_y);
  PhiAssignment phi{f, q, 4, 2, {}};
  phi.support.emplace_back(Subspace(q, 4), xy);
  phi.support.emplace_back(point_space(q, p[0]), two_x_minus_y);
  phi.support.emplace_back(point_space(q, p[2]), two_x_minus_y);
  phi.support.emplace_back(point_space(q, p[1]), two_y_minus_x);
  phi.support.emplace_back(point_space(q, p[3]), two_y_minus_x);
  for (auto [i, j] : {std::pair{0, 1}, {1, 3}, {2, 3}}) phi.support.emplace_back(span2(q, p[i], p[j]), x_minus_2y);
  for (auto [i, j] : {std::pair{1, 2}, {0, 2}, {0, 3}}) phi.support.emplace_back(span2(q, p[i], p[j]), y_minus_2x);

  ConstructionReport r = grassmann_construct(phi, l);
  r.name = "xy3";
  r.choices = {{"x", f.format(x)}, {"y", f.format(y)}, {"points", p}};
  if (!f.is_zero(r.lambda)) throw std::logic_error("xy3 construction: lambda is not 0");
  // Case label: which of the four points the hyperplane contains.
  verify_cases(r, [&](const FqVector& z) -> std::pair<std::string, Elem> {
    std::string label = "contains {";
    Elem expected = phi.hyperplane_sum(z);
    bool first = true;
    for (std::size_t i = 0; i < 4; ++i) {
      if (z[i] == 0) {
        label += (first ? "" : ",") + std::string("p") + std::to_string(i + 1);
        first = false;
      }
    }
    if (!l.contains(expected)) throw std::logic_error("xy3: hyperplane sum outside L");
    return {label + "}", expected};
  });
  return r;
}

ConstructionReport construct_subset_incidence(std::size_t r, std::size_t k) {
  if (k < 1 || k >= r) throw std::invalid_argument("subset incidence needs 1 <= k < r");
  if (binomial(static_cast<long>(r), static_cast<long>(k)) > 20000) throw std::length_error("C(r, k) exceeds 20000");
  // k-subsets of {0..r-1} in lexicographic order, as bitmasks.
  std::vector<std::uint64_t> subsets;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (auto i : idx) mask |= std::uint64_t{1} << i;
    subsets.push_back(mask);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == r - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t t = pos; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  Field f;
  const std::size_t n = subsets.size();
  std::vector<Elem> palette;
  for (std::size_t v = 0; v <= k; ++v) palette.push_back(f.from_int(static_cast<long>(v)));
  std::vector<std::uint32_t> ids(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ids[i * n + j] = static_cast<std::uint32_t>(k - static_cast<std::size_t>(__builtin_popcountll(subsets[i] & subsets[j])));
    }
  }
  std::vector<Elem> lvals(palette.begin() + 1, palette.end());
  ConstructionReport rep;
  rep.name = "incidence";
  rep.matrix = PaletteMatrix(f, n, std::move(palette), std::move(ids));
  rep.declared_L = LSet(f, lvals);
  rep.lambda = f.zero();
  rep.rank_upper = static_cast<unsigned long>(r + 1);
  rep.histogram = rep.matrix.off_diagonal_histogram();
  rep.choices = {{"r", r}, {"k", k}};
  ensure_ok(rep);
  return rep;
}

// ---- builders and size extension ----------------------------------------------

Builder square_builder(const LSet& l, const IntRelation& a) {
  return {"square", 2, [l, a](std::uint32_t q) { return construct_square(l, a, q); }};
}

Builder threehalves_builder(const LSet& l, const IntRelation& a) {
  return {"threehalves", 3, [l, a](std::uint32_t q) { return construct_threehalves(l, a, q); }};
}

Builder fivethirds_builder(const LSet& l, const IntRelation& a, std::uint64_t seed) {
  return {"fivethirds", 5, [l, a, seed](std::uint32_t q) { return construct_fivethirds(l, a, q, seed); }};
}

Builder xy3_builder(const Field& field, const Elem& x, const Elem& y) {
  return {"xy3", 4, [field, x, y](std::uint32_t q) { return construct_xy3(field, x, y, q); }};
}

}  // namespace lmat

#include "lmat/certify.hpp"

#include "lmat/arith.hpp"

#include <algorithm>

namespace lmat {

namespace {

Int squarefree_part(Int v) {
  Int sign = v < 0 ? -1 : 1;
  v = abs(v);
  Int out = 1;
  for (Int p = 2; p * p <= v; ++p) {
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return sign * out * v;
}

// K and Q(zeta_q) meet only in Q.
bool disjoint_from_cyclotomic(const Field& f, std::uint32_t q) {
  switch (f.kind()) {
    case FieldKind::rational:
      return true;
    case FieldKind::prime:
      return false;
    case FieldKind::numberfield:
      break;
  }
  if (f.degree() == 1 || q == 2) return true;
  if (f.degree() != 2) return false;
  // The only quadratic subfield of Q(zeta_q) is Q(sqrt(q*)), q* = +-q = 1 mod 4.
  auto c = integer_coeffs(f.modulus());
  Int disc = c[1] * c[1] - 4 * c[0];
  Int qstar = q % 4 == 1 ? Int(q) : Int(-static_cast<long>(q));
  return squarefree_part(disc) != qstar;
}

std::size_t modular_rank(const PaletteMatrix& m, std::uint64_t p) {
  auto red = m.reduce(p);
  return rank_mod_p(std::move(*red), m.size(), m.size(), p);
}

}  // namespace

CertMode parse_cert_mode(const std::string& s) {
  if (s == "exact") return CertMode::exact;
  if (s == "modular") return CertMode::modular;
  if (s == "bound") return CertMode::bound;
  throw std::invalid_argument("unknown certification mode '" + s + "' (expected exact, modular or bound)");
}

std::string to_string(CertMode m) {
  switch (m) {
    case CertMode::exact:
      return "exact";
    case CertMode::modular:
      return "modular";
    case CertMode::bound:
      return "bound";
  }
  return "?";
}

std::optional<std::size_t> translation_invariant_rank(const PaletteMatrix& m, std::uint32_t q, std::size_t d) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) n *= q;
  if (m.size() != n) throw std::invalid_argument("matrix size is not q^d");
  std::vector<FqVector> digits(n);
  for (std::size_t v = 0; v < n; ++v) digits[v] = vector_at(q, d, v);
  // g(z) = entry(0, z); check entry(y, x) = g(x - y).
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t diff = 0;
      for (std::size_t i = 0; i < d; ++i) diff = diff * q + (digits[x][i] + q - digits[y][i]) % q;
      if (m.id(y, x) != m.id(0, diff)) {
        throw std::invalid_argument("matrix is not translation invariant at (" + std::to_string(y) + "," +
                                    std::to_string(x) + ")");
      }
    }
  }
  if (!disjoint_from_cyclotomic(m.field(), q)) return std::nullopt;

  const Field& f = m.field();
  const auto& pal = m.palette();
  auto value = [&](const std::vector<std::size_t>& counts) {
    Elem acc = f.zero();
    for (std::size_t v = 0; v < pal.size(); ++v) {
      if (counts[v]) acc = f.add(acc, f.mul(f.from_int(static_cast<long>(counts[v])), pal[v]));
    }
    return acc;
  };

  std::size_t r = 0;
  {
    std::vector<std::size_t> all(pal.size(), 0);
    for (std::size_t z = 0; z < n; ++z) ++all[m.id(0, z)];
    if (!f.is_zero(value(all))) ++r;
  }
  // Scaling a by u permutes the classes c, so the verdict is per projective point.
  for (const auto& pt : enumerate_points(q, d)) {
    std::vector<std::vector<std::size_t>> counts(q, std::vector<std::size_t>(pal.size(), 0));
    for (std::size_t z = 0; z < n; ++z) ++counts[dot(q, pt.rep, digits[z])][m.id(0, z)];
    Elem g0 = value(counts[0]);
    bool constant = true;
    for (std::uint32_t c = 1; c < q && constant; ++c) constant = value(counts[c]) == g0;
    if (!constant) r += q - 1;
  }
  return r;
}

RankCertificate certify_rank(const PaletteMatrix& m, CertMode mode, std::span<const std::uint64_t> primes,
                             std::uint32_t q, std::size_t d) {
  RankCertificate cert;
  if (mode == CertMode::bound) {
    cert.method = "bound";
    return cert;
  }
  const bool prime_field = m.field().kind() == FieldKind::prime;
  if (mode == CertMode::exact) {
    const std::size_t limit = prime_field ? 3000 : kExactEliminationMaxSize;
    if (m.size() <= limit) {
      cert.exact = rank(m.to_matrix());
      cert.lower = cert.exact;
      cert.method = prime_field ? "elimination mod p" : "fraction-free elimination";
      return cert;
    }
    if (q != 0) {
      if (auto r = translation_invariant_rank(m, q, d)) {
        cert.exact = r;
        cert.lower = r;
        cert.method = "character sums (translation invariant)";
        return cert;
      }
    }
    cert.notices.push_back("exact rank unaffordable at size " + std::to_string(m.size()) + "; falling back to modular");
  }

  if (m.size() > 2000) {
    cert.method = "bound";
    cert.notices.push_back("modular elimination skipped at size " + std::to_string(m.size()));
    return cert;
  }
  std::vector<std::uint64_t> usable;
  for (auto p : primes) {
    if (m.reduce(p)) {
      usable.push_back(p);
    } else {
      cert.notices.push_back("prime " + std::to_string(p) + " skipped: no reduction of the entries");
    }
  }
  if (usable.empty()) {
    // Search a couple of primes admitting a reduction (a root of the modulus).
    for (std::uint64_t p = next_prime(1000000); usable.size() < 2 && p < 1100000; p = next_prime(p)) {
      if (m.reduce(p)) usable.push_back(p);
    }
  }
  std::size_t best = 0;
  for (auto p : usable) best = std::max(best, modular_rank(m, p));
  if (!usable.empty()) {
    cert.lower = best;
    cert.method = "modular";
  } else {
    cert.method = "bound";
  }
  return cert;
}

bool certify_report(ConstructionReport& r, CertMode mode, std::span<const std::uint64_t> primes,
                    std::vector<std::string>* notices) {
  RankCertificate c = certify_rank(r.matrix, mode, primes, r.q, r.d);
  r.rank_lower = c.lower;
  r.rank_exact = c.exact;
  r.rank_method = c.method;
  if (notices) notices->insert(notices->end(), c.notices.begin(), c.notices.end());
  std::optional<std::size_t> certified = c.exact ? c.exact : c.lower;
  if (certified && Int(static_cast<unsigned long>(*certified)) > r.rank_upper) {
    if (notices) {
      notices->push_back("certified rank " + std::to_string(*certified) + " exceeds rank_upper " + to_string(r.rank_upper));
    }
    return false;
  }
  return true;
}

ExtendedMatrix extend_to_size(const Builder& b, std::size_t n) {
  if (n == 0) throw std::invalid_argument("extend_to_size needs n >= 1");
  for (std::uint32_t q = 2;; q = static_cast<std::uint32_t>(next_prime(q))) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < b.dim; ++i) size *= q;
    if (size < n) continue;
    ExtendedMatrix out;
    try {
      out.full = b.build(q);
    } catch (const ParameterTooSmall&) {
      continue;
    }
    out.q = q;
    out.matrix = out.full.matrix.leading_principal(n);
    const bool char0 = out.full.matrix.field().kind() != FieldKind::prime;
    if (char0 && out.full.q != 0) out.rank_full = translation_invariant_rank(out.full.matrix, out.full.q, out.full.d);
    if (!out.rank_full && out.full.matrix.size() <= kExactEliminationMaxSize) out.rank_full = rank(out.full.matrix.to_matrix());
    if (n <= kExactEliminationMaxSize) out.rank_sub = rank(out.matrix.to_matrix());
    if (out.rank_sub && out.rank_full && *out.rank_sub > *out.rank_full) {
      throw std::logic_error("principal submatrix has larger rank than the full construction");
    }
    return out;
  }
}

}  // namespace lmat

#include "lmat/geometry.hpp"

#include "lmat/arith.hpp"

#include <stdexcept>

namespace lmat {

namespace {

void require_prime(std::uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
}

std::uint32_t inv_q(std::uint32_t a, std::uint32_t q) { return static_cast<std::uint32_t>(inv_mod(a, q)); }

// In-place RREF; returns the nonzero rows.
std::vector<FqVector> rref(std::vector<FqVector> rows, std::uint32_t q, std::size_t d) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    std::uint32_t inv = inv_q(rows[r][c], q);
    for (auto& x : rows[r]) x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % q);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint64_t f = rows[i][c];
      for (std::size_t j = 0; j < d; ++j) {
        rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + (q - f) * rows[r][j]) % q);
      }
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

Subspace::Subspace(std::uint32_t q, std::size_t d) : q_(q), d_(d) {}

Subspace Subspace::span(std::uint32_t q, std::size_t d, std::span<const FqVector> vectors) {
  require_prime(q);
  std::vector<FqVector> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("vector dimension mismatch in span");
    FqVector w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = v[i] % q;
    rows.push_back(std::move(w));
  }
  Subspace s(q, d);
  s.basis_ = rref(std::move(rows), q, d);
  return s;
}

bool Subspace::contains(const FqVector& v) const {
  if (v.size() != d_) throw std::invalid_argument("vector dimension mismatch");
  FqVector w = v;
  for (const auto& row : basis_) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    std::uint64_t f = w[c] % q_;
    if (f == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) w[j] = static_cast<std::uint32_t>((w[j] + (q_ - f) * row[j]) % q_);
  }
  for (auto x : w) {
    if (x % q_ != 0) return false;
  }
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.q_ != q_ || other.d_ != d_) throw std::invalid_argument("subspace ambient mismatch");
  for (const auto& v : other.basis_) {
    if (!contains(v)) return false;
  }
  return true;
}

bool Subspace::is_orthogonal(const FqVector& z) const {
  for (const auto& w : basis_) {
    if (dot(q_, w, z) != 0) return false;
  }
  return true;
}

Subspace Subspace::join(const Subspace& other) const {
  if (other.q_ != q_ || other.d_ != d_) throw std::invalid_argument("subspace ambient mismatch");
  std::vector<FqVector> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(q_, d_, all);
}

Subspace ProjPoint::as_subspace() const { return Subspace::span(q, rep.size(), std::span(&rep, 1)); }

ProjPoint normalize_point(std::uint32_t q, const FqVector& v) {
  require_prime(q);
  std::size_t c = 0;
  while (c < v.size() && v[c] % q == 0) ++c;
  if (c == v.size()) throw std::invalid_argument("the zero vector is not a projective point");
  std::uint64_t inv = inv_q(v[c] % q, q);
  ProjPoint p{q, FqVector(v.size())};
  for (std::size_t i = 0; i < v.size(); ++i) p.rep[i] = static_cast<std::uint32_t>(v[i] % q * inv % q);
  return p;
}

std::uint64_t count_points(std::uint32_t q, std::size_t d) {
  std::uint64_t total = 0, power = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total += power;
    power *= q;
  }
  return total;
}

std::vector<ProjPoint> enumerate_points(std::uint32_t q, std::size_t d) {
  require_prime(q);
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  std::vector<ProjPoint> out;
  out.reserve(count_points(q, d));
  // Representatives sorted lexicographically: leading 1 at the latest position first.
  for (std::size_t lead = d; lead-- > 0;) {
    std::size_t tail = d - lead - 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < tail; ++i) combos *= q;
    for (std::uint64_t t = 0; t < combos; ++t) {
      FqVector v(d, 0);
      v[lead] = 1;
      std::uint64_t rest = t;
      for (std::size_t i = d; i-- > lead + 1;) {
        v[i] = static_cast<std::uint32_t>(rest % q);
        rest /= q;
      }
      out.push_back(ProjPoint{q, std::move(v)});
    }
  }
  return out;
}

std::vector<Subspace> enumerate_subspaces(std::uint32_t q, std::size_t d, std::size_t s) {
  require_prime(q);
  if (s > d) throw std::invalid_argument("subspace dimension exceeds ambient dimension");
  std::vector<Subspace> out;
  std::vector<std::size_t> pivots(s);
  // Iterate over pivot column sets in lexicographic order.
  auto recurse = [&](auto&& self, std::size_t idx, std::size_t start) -> void {
    if (idx == s) {
      // free positions: row r, columns c > pivots[r] that are not pivot columns
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < s; ++r) {
        for (std::size_t c = pivots[r] + 1; c < d; ++c) {
          bool is_pivot = false;
          for (std::size_t pc : pivots) is_pivot = is_pivot || pc == c;
          if (!is_pivot) free.emplace_back(r, c);
        }
      }
      std::vector<std::uint32_t> values(free.size(), 0);
      while (true) {
        std::vector<FqVector> rows(s, FqVector(d, 0));
        for (std::size_t r = 0; r < s; ++r) rows[r][pivots[r]] = 1;
        for (std::size_t i = 0; i < free.size(); ++i) rows[free[i].first][free[i].second] = values[i];
        out.push_back(Subspace::span(q, d, rows));
        std::size_t i = free.size();
        while (i > 0) {
          --i;
          if (++values[i] < q) break;
          values[i] = 0;
          if (i == 0) {
            i = free.size() + 1;
            break;
          }
        }
        if (free.empty() || i == free.size() + 1) break;
      }
      return;
    }
    for (std::size_t c = start; c + (s - idx) <= d; ++c) {
      pivots[idx] = c;
      self(self, idx + 1, c + 1);
    }
  };
  recurse(recurse, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Subspace hyperplane_of(std::uint32_t q, const FqVector& z) {
  ProjPoint p = normalize_point(q, z);  // rejects zero
  const std::size_t d = z.size();
  std::size_t lead = 0;
  while (p.rep[lead] == 0) ++lead;
  // Basis of the kernel of the row p.rep: for each free column c != lead, e_c - p_c e_lead.
  std::vector<FqVector> rows;
  for (std::size_t c = 0; c < d; ++c) {
    if (c == lead) continue;
    FqVector v(d, 0);
    v[c] = 1;
    v[lead] = (q - p.rep[c]) % q;
    rows.push_back(std::move(v));
  }
  return Subspace::span(q, d, rows);
}

bool is_orthogonal(const Subspace& w, const FqVector& z) {
  if (z.size() != w.ambient_dim()) throw std::invalid_argument("dimension mismatch in is_orthogonal");
  bool nonzero = false;
  for (auto x : z) nonzero = nonzero || (x % w.q() != 0);
  if (!nonzero) throw std::invalid_argument("is_orthogonal: z must be nonzero");
  return w.is_orthogonal(z);
}

std::uint32_t dot(std::uint32_t q, const FqVector& a, const FqVector& b) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = (acc + std::uint64_t{a[i]} * b[i]) % q;
  return static_cast<std::uint32_t>(acc);
}

std::size_t vector_index(std::uint32_t q, const FqVector& v) {
  std::size_t idx = 0;
  for (auto x : v) idx = idx * q + x;
  return idx;
}

FqVector vector_at(std::uint32_t q, std::size_t d, std::size_t index) {
  FqVector v(d);
  for (std::size_t i = d; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return v;
}

}  // namespace lmat

#include "lmat/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lmat {

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("LMAT_ENUM_BUDGET")) {
    try {
      std::uint64_t v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultEnumerationBudget;
}

namespace {

// count^cells, or nullopt once it passes the budget.
std::optional<std::uint64_t> bounded_power(std::uint64_t count, std::size_t cells, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    if (count != 0 && total > budget / count) return std::nullopt;
    total *= count;
  }
  return total <= budget ? std::optional(total) : std::nullopt;
}

}  // namespace

MinRankResult min_rank(const SearchSpec& spec) {
  const std::size_t n = spec.n, k = spec.L.size();
  const Field& f = spec.L.field();
  if (k == 0) throw std::invalid_argument("min_rank: L is empty");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (!spec.symmetric_only || i < j)) cells.emplace_back(i, j);

  const std::uint64_t budget = enumeration_budget();
  auto total = bounded_power(k, cells.size(), budget);
  if (!total) {
    throw std::length_error("min_rank: " + std::to_string(k) + "^" + std::to_string(cells.size()) +
                            " matrices exceed the enumeration budget " + std::to_string(budget));
  }

  MinRankResult res;
  res.r_min = res.r_min_with_ones = n + 2;
  std::vector<std::size_t> digit(cells.size(), 0);
  Matrix m(f, n, n);
  auto fill = [&]() {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto [i, j] = cells[c];
      m.at(i, j) = spec.L[digit[c]];
      if (spec.symmetric_only) m.at(j, i) = spec.L[digit[c]];
    }
  };
  while (true) {
    fill();
    ++res.enumerated;
    std::size_t r = rank(m);
    if (r < res.r_min) {
      res.r_min = r;
      res.witness = m;
    }
    std::size_t r1 = rank_with_ones(m);
    if (r1 < res.r_min_with_ones) {
      res.r_min_with_ones = r1;
      res.witness_with_ones = m;
    }
    // odometer, last cell fastest
    std::size_t c = cells.size();
    while (c > 0 && ++digit[c - 1] == k) digit[--c] = 0;
    if (c == 0) break;
  }
  return res;
}

NOfR n_of_r(const LSet& l, std::size_t r, std::size_t n_max, bool symmetric_only) {
  NOfR out;
  bool n_open = true, n0_open = true;
  for (std::size_t n = 1; n <= n_max && (n_open || n0_open); ++n) {
    MinRankResult mr = min_rank({l, n, symmetric_only});
    if (n_open) {
      if (mr.r_min <= r) {
        out.n = n;
        out.witness = mr.witness;
      } else {
        n_open = false;
      }
    }
    if (n0_open) {
      if (mr.r_min_with_ones <= r) {
        out.n0 = n;
        out.witness0 = mr.witness_with_ones;
      } else {
        n0_open = false;
      }
    }
  }
  return out;
}

std::vector<IntRelation> box_relations(const LSet& l, std::size_t bound) {
  const std::size_t k = l.size();
  const Field& f = l.field();
  if (k == 0) return {};
  const std::uint64_t budget = enumeration_budget();
  auto cells = bounded_power(2 * bound + 1, k, budget);
  if (!cells || *cells > budget / k) {
    throw std::length_error("box search: k (2 bound + 1)^k exceeds the enumeration budget " + std::to_string(budget));
  }
  const long b = static_cast<long>(bound);
  std::vector<IntRelation> out;
  // A_1..A_{k-1} range over the box; A_k is forced by the sum identity.
  std::vector<long> a(k, -b);
  while (true) {
    long rest = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) rest -= a[i];
    if (rest >= -b && rest <= b) {
      a[k - 1] = rest;
      Elem s = f.zero();
      for (std::size_t i = 0; i < k; ++i) s = f.add(s, f.mul(f.from_int(a[i]), l[i]));
      if (f.is_zero(s)) {
        IntVec v(a.begin(), a.end());
        out.push_back({v});
      }
    }
    std::size_t c = k - 1;
    while (c > 0 && ++a[c - 1] > b) a[--c] = -b;
    if (c == 0) break;
  }
  std::sort(out.begin(), out.end(), [](const IntRelation& x, const IntRelation& y) { return relation_less(x.A, y.A); });
  return out;
}

std::optional<IntRelation> primitive_relation_box_search(const LSet& l, std::size_t bound) {
  auto all = box_relations(l, bound);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace lmat

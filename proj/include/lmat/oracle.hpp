#pragma once

#include "lmat/matrix.hpp"
#include "lmat/relation.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lmat {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

/// LMAT_ENUM_BUDGET when set to a positive integer, else 2^24.
std::uint64_t enumeration_budget();

/// Exhaustive search over n x n L-matrices (symmetric ones only, on request).
struct SearchSpec {
  LSet L;
  std::size_t n = 0;
  bool symmetric_only = false;
};

struct MinRankResult {
  std::size_t r_min = 0;
  Matrix witness;  // first matrix of rank r_min in enumeration order
  std::size_t r_min_with_ones = 0;
  Matrix witness_with_ones;
  std::uint64_t enumerated = 0;
};

/// Off-diagonal cells are filled row-major, each running through L in
/// declaration order with the last cell varying fastest. Throws
/// std::length_error when the count exceeds the budget.
MinRankResult min_rank(const SearchSpec& spec);

struct NOfR {
  std::size_t n = 0;   // largest n <= n_max with an L-matrix of rank <= r
  std::size_t n0 = 0;  // same for the rank of (M | 1); 0 when none
  Matrix witness;
  std::optional<Matrix> witness0;
};

/// Rank is monotone under principal submatrices, so the scan stops at the
/// first size without a witness.
NOfR n_of_r(const LSet& l, std::size_t r, std::size_t n_max, bool symmetric_only = false);

/// Every primitive relation with |A_i| <= bound, sorted canonically.
std::vector<IntRelation> box_relations(const LSet& l, std::size_t bound);

/// Canonical (minimal max-norm, then lexicographically least) relation in the
/// box, if any. Budget: k (2 bound + 1)^k.
std::optional<IntRelation> primitive_relation_box_search(const LSet& l, std::size_t bound);

}  // namespace lmat

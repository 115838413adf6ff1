#pragma once

#include "lmat/matrix.hpp"
#include "lmat/multipoly.hpp"
#include "lmat/relation.hpp"

#include <string>
#include <vector>

namespace lmat {

/// Square array of variable labels: 0 on the diagonal, 1..k elsewhere.
using Pattern = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kPatternDetMaxSize = 10;

/// det of the matrix with x_label off the diagonal and 0 on it, a homogeneous
/// integer polynomial of degree n in k variables. Computed from its values on
/// the integer simplex {(1, e_2, ..., e_k) : sum e <= n} via forward
/// differences; for n <= 6 it is cross-checked against cofactor expansion.
MultiPoly pattern_det(const Pattern& pattern, std::size_t k);

/// Symbolic Laplace expansion along rows (memoised on the used columns).
MultiPoly pattern_det_cofactor(const Pattern& pattern, std::size_t k);

/// Labels of an L-matrix: entry alpha_i becomes i+1. Throws if M is not an
/// L-matrix.
Pattern pattern_of(const Matrix& m, const LSet& l);

struct GenupperWitness {
  MultiPoly P;
  std::size_t rank = 0;
  std::size_t r = 0;  // rank + 1
  std::size_t v = 0;  // size - r
  VanishingOrder order;
  std::vector<std::string> warnings;
};

/// P = (-1)^(n-1) (P_n + x_1 P_(n-1)) from the pattern determinants of M and
/// of its leading (n-1)-minor. Verified: homogeneous, integral, P(1,...,1) = 1,
/// vanishing to order >= v at (alpha_1, ..., alpha_k). v = 0 only warns.
GenupperWitness genupper_witness(const Matrix& m, const LSet& l);

}  // namespace lmat

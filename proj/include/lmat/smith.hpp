#pragma once

#include "lmat/arith.hpp"

#include <optional>
#include <vector>

namespace lmat {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major, all rows the same length
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank,
/// all d_i > 0. Verified on construction.
struct SmithForm {
  IntMat U, D, V;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMat& a);

IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& x);

/// Integer kernel basis (columns rank..n-1 of V), returned as row vectors.
/// The result spans every integer vector z with A z = 0.
std::vector<IntVec> integer_kernel(const IntMat& a);

/// Outcome of an integer linear system: exactly one of the two is set.
/// The certificate w is a rational row vector with w^T M integral and
/// w^T b not an integer, which rules out integer solutions.
struct IntegerSolveResult {
  std::optional<IntVec> solution;
  std::optional<RatVec> certificate;
};

IntegerSolveResult integer_solvable(const RatMat& m, const RatVec& b);

bool verify_solution(const RatMat& m, const RatVec& b, const IntVec& z);
bool verify_certificate(const RatMat& m, const RatVec& b, const RatVec& w);

}  // namespace lmat

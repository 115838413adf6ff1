#pragma once

#include "lmat/construction.hpp"
#include "lmat/matrix.hpp"
#include "lmat/multipoly.hpp"
#include "lmat/relation.hpp"
#include "lmat/upoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lmat {

/// Companion matrix of a monic integer polynomial: ones on the subdiagonal,
/// -f_0, ..., -f_{d-1} down the last column.
Matrix companion(const UPoly& f);

/// The same rational matrix read in another field.
Matrix embed_rational(const Matrix& m, const Field& target);

/// Progenitor M with entries in the group generated by L \ {0}, amplified to
/// blocks of size l.
struct AmplifyPlan {
  Matrix progenitor;
  LSet L;  // contains 0
  std::size_t l = 1;
};

/// One distinct progenitor entry beta and its correction Q_beta = Q'_beta - beta J.
struct Patch {
  Elem beta;
  IntVec A;                  // beta = sum A_i alpha_i over the nonzero alpha_i of L
  std::string construction;  // "zero", "square", "threehalves"
  std::uint32_t q = 0;       // native parameter of the construction (0 for zero)
  std::size_t rank = 0;      // upper bound for rank(Q_beta), exact when rank_exact
  bool rank_exact = false;
  std::size_t blocks = 0;    // number of progenitor cells holding beta
};

struct AmplifyResult {
  Matrix matrix;  // size l * n over the progenitor's field, entries in L
  std::vector<Patch> patches;
  /// Filled when an eigenvalue was supplied.
  std::optional<std::size_t> progenitor_multiplicity;
  std::optional<std::size_t> multiplicity;
  long lower_bound_fine = 0;    // l m - sum over patched cells of rank(Q_beta)
  long lower_bound_coarse = 0;  // l m - n^2 max rank(Q_beta)
};

/// M_l = M (x) I_l with every block beta I_l replaced by beta I_l + Q_beta.
/// Patches come from the square construction when |L| = 2, else from
/// threehalves, cut to size l; Q'_beta = 0 whenever 0 is in {beta, beta +
/// alpha_i}. With lambda (an element of lambda_field, into which the matrix is
/// embedded) the exact multiplicity is computed and both bounds are asserted.
AmplifyResult amplify(const AmplifyPlan& plan, const std::optional<Elem>& lambda = std::nullopt,
                      const std::optional<Field>& lambda_field = std::nullopt);

struct DigraphResult {
  Matrix matrix;  // n x n {0,1}-matrix over Q
  Field field;    // Q or Q[t]/(minpoly), where lambda lives
  Elem lambda;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t multiplicity = 0;
  long lower_bound = 0;
  std::size_t upper_bound = 0;  // floor(n / d)
  double realized_c = 0;        // (n/d - m) / sqrt(n)
  std::vector<Patch> patches;
  std::size_t translated_rank = 0;  // rank of M + lambda (J - I)
  std::string route;
};

/// {0,1}-matrix of size n with the root of minpoly as an eigenvalue of large
/// multiplicity. Degree 1: square construction on {lambda, lambda + 1} shifted
/// back by lambda (J - I). Degree >= 2: companion matrix amplified with
/// l = ceil(n / d), then the leading n x n block.
DigraphResult digraph_pipeline(const UPoly& minpoly, std::size_t n);

struct PolyrelResult {
  Matrix matrix;                  // over L's field
  std::vector<Exponents> monomials;  // degree d-1, descending lex; x1^(d-1) first
  LSet L_prime;                   // {0, alpha_2 - alpha_1, ...}
  std::size_t rank_shifted = 0;   // rank(M - alpha_1 I)
};

/// Monomial matrix with eigenvalue alpha_1 from a homogeneous integer P with
/// P(1,...,1) = 1 and P(alpha) = 0. Both row identities are re-verified.
PolyrelResult polyrel_matrix(const MultiPoly& P, const LSet& L);

struct PolytobetterResult {
  Matrix matrix;  // L-matrix of size l * C(d+k-2, k-1)
  PolyrelResult progenitor;
  AmplifyResult amplified;
  std::size_t rank = 0;
  long rank_bound = 0;  // l (C - m) + slack + 1
  long slack = 0;
};

PolytobetterResult polytobetter_pipeline(const MultiPoly& P, const LSet& L, std::size_t l);

}  // namespace lmat

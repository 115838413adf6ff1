#pragma once

#include "lmat/field.hpp"
#include "lmat/smith.hpp"
#include "lmat/upoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lmat {

/// A finite set L = {alpha_1, ..., alpha_k} of distinct field elements.
/// Zero is rejected unless explicitly allowed (amplification works with L
/// containing 0).
class LSet {
 public:
  LSet() = default;  // empty, over Q
  LSet(Field field, std::vector<Elem> elems, bool allow_zero = false);
  /// Elements given as strings in the field's syntax.
  static LSet parse(const Field& field, const std::vector<std::string>& elems, bool allow_zero = false);

  const Field& field() const { return field_; }
  const std::vector<Elem>& elems() const { return elems_; }
  const Elem& operator[](std::size_t i) const { return elems_[i]; }
  std::size_t size() const { return elems_.size(); }
  bool contains(const Elem& e) const;
  std::optional<std::size_t> index_of(const Elem& e) const;
  /// Same elements in a new order: result[i] = (*this)[order[i]].
  LSet permuted(const std::vector<std::size_t>& order) const;
  /// True when every element is an integer.
  bool all_integer() const;
  std::string format() const;

 private:
  Field field_;
  std::vector<Elem> elems_;
};

/// Integer coefficients A with sum A_i = 1 and sum A_i alpha_i = 0; both
/// identities are checked when constructed through make_relation.
struct IntRelation {
  IntVec A;
  friend bool operator==(const IntRelation&, const IntRelation&) = default;
};

bool is_primitive_relation(const LSet& l, const IntVec& a);
/// Throws std::invalid_argument naming the failing identity.
IntRelation make_relation(const LSet& l, IntVec a);

/// Canonical order on candidate relations: smaller max-norm first, then
/// lexicographically smaller.
bool relation_less(const IntVec& a, const IntVec& b);
Int max_norm(const IntVec& a);

/// Linear constraints over Q (rows) whose integer solutions are exactly the
/// integer relations on L. Over F_p one extra trailing unknown carries the
/// multiple of p.
struct RelationSystem {
  RatMat rows;
  std::size_t k = 0;           // number of L coordinates
  bool modular_slack = false;  // true over F_p
};
RelationSystem relation_system(const LSet& l);

/// Z-basis of {A in Z^k : sum A_i alpha_i = 0}, LLL-reduced.
std::vector<IntVec> relation_lattice(const LSet& l);

struct PrimitiveRelationResult {
  std::optional<IntRelation> relation;
  /// When absent: the system (relation rows plus the all-ones row) and a
  /// rational w certifying it has no integer solution.
  RatMat system;
  RatVec rhs;
  std::optional<RatVec> certificate;
};

/// Canonical primitive relation: lexicographically least among those of
/// minimal max-norm.
PrimitiveRelationResult primitive_relation(const LSet& l);

/// Repeatedly applies the three-term move until at most one coefficient is
/// negative. Needs integer L.
IntRelation normalize_min_negatives(const IntRelation& a, const LSet& l);

/// alpha_1 + sum B_{i,i'} (alpha_i - alpha_{i'}) = 0 with B >= 0. Keys are
/// 0-based index pairs; index 0 plays the role of alpha_1.
struct Differences {
  std::map<std::pair<std::size_t, std::size_t>, Int> B;
  Int S = 0;
};
Differences relation_to_differences(const IntRelation& a, const LSet& l);

struct PointCriterion {
  bool solvable = false;
  Int gcd;  // gcd(s_i - r_i)
  /// Affine witness Q(x) = sum A_i x_i + c when solvable.
  IntVec A;
  Int c = 0;
};
PointCriterion point_criterion(const RatVec& v);

/// Minimal polynomial of 1/(1 - alpha) from the minimal polynomial of alpha,
/// if it is monic with integer coefficients. Throws when alpha = 1.
std::optional<UPoly> algebraic_integer_of_inverse(const UPoly& minpoly_alpha);

/// LLL reduction (delta = 3/4) of linearly independent integer rows.
std::vector<IntVec> lll_reduce(std::vector<IntVec> basis);

}  // namespace lmat

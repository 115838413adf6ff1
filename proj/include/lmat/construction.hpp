#pragma once

#include "lmat/geometry.hpp"
#include "lmat/matrix.hpp"
#include "lmat/relation.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmat {

/// Square matrix stored as a palette of distinct values plus one palette id
/// per entry. Constructions of size q^d have only a handful of distinct
/// entries, so this stays small where a dense Matrix of Elems would not.
class PaletteMatrix {
 public:
  PaletteMatrix() = default;
  PaletteMatrix(Field field, std::size_t n, std::vector<Elem> palette, std::vector<std::uint32_t> ids);
  static PaletteMatrix from_matrix(const Matrix& m);

  const Field& field() const { return field_; }
  std::size_t size() const { return n_; }
  const std::vector<Elem>& palette() const { return palette_; }
  std::uint32_t id(std::size_t i, std::size_t j) const { return ids_[i * n_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return palette_[id(i, j)]; }

  Matrix to_matrix() const;
  PaletteMatrix leading_principal(std::size_t m) const;
  bool is_symmetric() const;
  /// Off-diagonal value counts in palette order (zero counts dropped).
  std::vector<std::pair<Elem, std::size_t>> off_diagonal_histogram() const;
  /// Residues mod p (Q: denominators must avoid p; Q[t]/(f): t maps to a
  /// root of f mod p). nullopt when no such reduction exists.
  std::optional<std::vector<std::uint64_t>> reduce(std::uint64_t p) const;

 private:
  Field field_;
  std::size_t n_ = 0;
  std::vector<Elem> palette_;
  std::vector<std::uint32_t> ids_;
};

/// Thrown when a construction parameter (usually q) is too small for the
/// choices it has to make. Size extension skips to the next prime on it.
struct ParameterTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// phi: Gr(<= s, d) -> F with finite support.
struct PhiAssignment {
  Field field;
  std::uint32_t q = 2;
  std::size_t d = 1;
  std::size_t s = 0;
  std::vector<std::pair<Subspace, Elem>> support;

  /// Throws on dim > s, s >= d, ambient mismatch, duplicates.
  void validate() const;
  /// Drops zero values.
  PhiAssignment pruned() const;
  Elem lambda() const;
  /// sum over the support of q^(dim W).
  Int rank_upper() const;
  /// Sum of phi(W) over support subspaces W orthogonal to z.
  Elem hyperplane_sum(const FqVector& z) const;

  nlohmann::json to_json() const;
  static PhiAssignment from_json(const nlohmann::json& j);
};

struct ConstructionReport {
  std::string name;
  PaletteMatrix matrix;
  std::optional<LSet> declared_L;
  Elem lambda;
  Int rank_upper;
  std::optional<std::size_t> rank_lower;
  std::optional<std::size_t> rank_exact;
  std::string rank_method;
  std::vector<std::pair<Elem, std::size_t>> histogram;
  nlohmann::json choices = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  /// Verifier case name -> number of hyperplanes that fell in it.
  std::map<std::string, std::size_t> cases;
  std::optional<PhiAssignment> phi;
  /// Set for constructions indexed by F_q^d with entries depending on x - y.
  std::uint32_t q = 0;
  std::size_t d = 0;
};

/// Symmetry, constant diagonal lambda, off-diagonal values in declared L,
/// histogram consistency. Returns the list of violations (empty when fine).
std::vector<std::string> check_report(const ConstructionReport& r);

/// Matrix indexed by F_q^d in lexicographic order with entry(y, x) the sum
/// of phi(W) over W orthogonal to x - y (diagonal: all of the support).
ConstructionReport grassmann_construct(const PhiAssignment& phi, const std::optional<LSet>& declared = std::nullopt);

ConstructionReport construct_square(const LSet& l, const IntRelation& a, std::uint32_t q);
ConstructionReport construct_threehalves(const LSet& l, const IntRelation& a, std::uint32_t q);
ConstructionReport construct_fivethirds(const LSet& l, const IntRelation& a, std::uint32_t q, std::uint64_t seed);
ConstructionReport construct_xy3(const Field& field, const Elem& x, const Elem& y, std::uint32_t q);
ConstructionReport construct_subset_incidence(std::size_t r, std::size_t k);

/// A named construction parameterised by q, with native size q^dim.
struct Builder {
  std::string name;
  std::size_t dim = 2;
  std::function<ConstructionReport(std::uint32_t)> build;
};

Builder square_builder(const LSet& l, const IntRelation& a);
Builder threehalves_builder(const LSet& l, const IntRelation& a);
Builder fivethirds_builder(const LSet& l, const IntRelation& a, std::uint64_t seed);
Builder xy3_builder(const Field& field, const Elem& x, const Elem& y);

struct ExtendedMatrix {
  std::uint32_t q = 0;
  ConstructionReport full;
  PaletteMatrix matrix;  // leading principal n x n
  std::optional<std::size_t> rank_sub;
  std::optional<std::size_t> rank_full;
};

/// Smallest prime q with q^dim >= n that the builder accepts; returns the
/// leading principal n x n submatrix. Asserts rank(sub) <= rank(full) when
/// both ranks are affordable.
ExtendedMatrix extend_to_size(const Builder& b, std::size_t n);

}  // namespace lmat

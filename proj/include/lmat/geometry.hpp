#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace lmat {

using FqVector = std::vector<std::uint32_t>;

/// A subspace of F_q^d (q prime) held as its reduced row-echelon basis, which
/// makes the representation unique. Flats of P^{d-1}(F_q) are carried by their
/// underlying subspaces; the projective dimension is dim() - 1.
class Subspace {
 public:
  Subspace(std::uint32_t q, std::size_t d);  // the zero subspace

  /// RREF of the span of the given vectors.
  static Subspace span(std::uint32_t q, std::size_t d, std::span<const FqVector> vectors);

  std::uint32_t q() const { return q_; }
  std::size_t ambient_dim() const { return d_; }
  std::size_t dim() const { return basis_.size(); }
  int projective_dim() const { return static_cast<int>(basis_.size()) - 1; }
  const std::vector<FqVector>& basis() const { return basis_; }

  bool contains(const FqVector& v) const;
  bool contains(const Subspace& other) const;
  /// <w, z> = 0 for every basis vector w; vacuous for the zero subspace.
  bool is_orthogonal(const FqVector& z) const;
  Subspace join(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.q_ == b.q_ && a.d_ == b.d_ && a.basis_ == b.basis_;
  }
  friend auto operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  std::uint32_t q_;
  std::size_t d_;
  std::vector<FqVector> basis_;
};

/// Canonical representative of a point: first nonzero coordinate equal to 1.
struct ProjPoint {
  std::uint32_t q = 0;
  FqVector rep;

  Subspace as_subspace() const;
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

/// Throws std::invalid_argument when q is not prime or the vector is zero.
ProjPoint normalize_point(std::uint32_t q, const FqVector& v);

/// All (q^d - 1)/(q - 1) points, in lexicographic order of representatives.
std::vector<ProjPoint> enumerate_points(std::uint32_t q, std::size_t d);

/// All s-dimensional subspaces of F_q^d, ordered by their RREF bases.
std::vector<Subspace> enumerate_subspaces(std::uint32_t q, std::size_t d, std::size_t s);

/// The (d-1)-dimensional subspace z^perp under the standard dot product.
Subspace hyperplane_of(std::uint32_t q, const FqVector& z);

/// Same as Subspace::is_orthogonal, rejecting z = 0 and dimension mismatch.
bool is_orthogonal(const Subspace& w, const FqVector& z);

std::uint32_t dot(std::uint32_t q, const FqVector& a, const FqVector& b);

/// Lexicographic index of a vector of F_q^d, and its inverse.
std::size_t vector_index(std::uint32_t q, const FqVector& v);
FqVector vector_at(std::uint32_t q, std::size_t d, std::size_t index);

std::uint64_t count_points(std::uint32_t q, std::size_t d);

}  // namespace lmat

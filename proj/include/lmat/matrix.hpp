#pragma once

#include "lmat/field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lmat {

/// Dense row-major matrix of field elements tagged with its field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix constant(const Field& field, std::size_t rows, std::size_t cols, const Elem& value);
  /// Integer entries given row by row.
  static Matrix from_ints(const Field& field, const std::vector<std::vector<long>>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<Elem>& entries() const { return data_; }

  Matrix transpose() const;
  Matrix leading_principal(std::size_t n) const;
  bool is_symmetric() const;

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Matrix& other) const;
  Matrix scaled(const Elem& s) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Matrices above this many entries refuse exact elimination over Q and
/// number fields; callers must fall back to rank_bounds_modular.
inline constexpr std::size_t kExactRankEntryLimit = 4'000'000;

/// Exact rank. Fraction-free (Bareiss) elimination over Q and Q[t]/(f),
/// ordinary elimination over F_p. Pivot: first nonzero entry of the column,
/// scanning rows top-down. Throws std::length_error above the entry limit.
std::size_t rank(const Matrix& m);

/// Rank of a residue matrix over F_p (row-major, entries already reduced).
/// The buffer is consumed.
std::size_t rank_mod_p(std::vector<std::uint64_t> entries, std::size_t rows, std::size_t cols, std::uint64_t p);

/// Reduction of a Q- or F_p-matrix modulo p; nullopt when p divides a denominator.
std::optional<std::vector<std::uint64_t>> reduce_matrix(const Matrix& m, std::uint64_t p);

struct ModularRankBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool upper_exact = false;
  std::vector<std::pair<std::uint64_t, std::size_t>> per_prime;
  std::vector<std::string> notices;
};

/// lower = max_p rank(M mod p); upper = exact rank when requested and the
/// matrix is under the entry limit, else min(rows, cols).
ModularRankBounds rank_bounds_modular(const Matrix& m, std::span<const std::uint64_t> primes,
                                      bool want_exact_upper = true);

/// Univariate polynomial over the matrix field, coefficients low degree first.
struct FieldPoly {
  std::vector<Elem> coeffs;

  long degree(const Field& f) const;
  Elem eval(const Field& f, const Elem& x) const;
  /// Degrees carrying a nonzero coefficient.
  std::vector<std::size_t> support(const Field& f) const;
};

struct EntrywiseResult {
  Matrix matrix;
  std::size_t rank_input = 0;
  std::size_t rank_output = 0;
  Int dense_bound;   // C(rank M + deg f, deg f)
  Int sparse_bound;  // sum_i C(rank M + d_i - 1, d_i)
  bool bounds_hold = false;
};

/// (f[M])_ij = f(M_ij); both binomial rank bounds are checked post hoc.
Matrix entrywise_apply(const FieldPoly& f, const Matrix& m);
EntrywiseResult entrywise_apply_checked(const FieldPoly& f, const Matrix& m);

Int entrywise_dense_bound(std::size_t rank, long degree);
Int entrywise_sparse_bound(std::size_t rank, const std::vector<std::size_t>& degrees);

/// Determinant by Gaussian elimination over the field (intended for small
/// matrices; entries grow like the Hadamard bound).
Elem determinant(const Matrix& m);

/// Geometric multiplicity: n - rank(M - lambda I).
std::size_t eigen_multiplicity(const Matrix& m, const Elem& lambda);

/// Rank of (M | 1), the matrix with an all-ones column appended.
std::size_t rank_with_ones(const Matrix& m);

/// [[M1, aJ], [aJ, M2]].
Matrix block_compose(const Matrix& m1, const Matrix& m2, const Elem& alpha);

}  // namespace lmat

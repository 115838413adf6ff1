#pragma once

#include "lmat/field.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace lmat {

using Exponents = std::vector<unsigned>;

/// Sparse polynomial in x1..xk over a field. Zero coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(Field field, std::size_t k);

  static MultiPoly constant(const Field& field, std::size_t k, const Elem& c);
  /// x_{i+1} (0-based index i).
  static MultiPoly variable(const Field& field, std::size_t k, std::size_t i);
  /// Rational coefficients, variables x1..xk, e.g. "2*x1^2 - x2^2".
  static MultiPoly parse(const std::string& text, const Field& field, std::size_t k);

  const Field& field() const { return field_; }
  std::size_t num_vars() const { return k_; }
  const std::map<Exponents, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Max total degree; -1 for the zero polynomial.
  long degree() const;
  /// Smallest total degree of a term; -1 for zero.
  long low_degree() const;
  bool is_homogeneous() const;
  /// Every coefficient is an integer.
  bool is_integral() const;

  Elem coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const Elem& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const Elem& c) const;
  MultiPoly pow(unsigned e) const;

  Elem eval(std::span<const Elem> point) const;
  /// Substitutes x_i -> images[i]; all images share one field and arity.
  MultiPoly compose(const std::vector<MultiPoly>& images) const;
  /// P(x + a).
  MultiPoly translate(std::span<const Elem> a) const;
  /// Same polynomial with coefficients mapped into another field. Needs
  /// rational coefficients (source field Q).
  MultiPoly over(const Field& target) const;

  std::string format() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.k_ == b.k_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const MultiPoly& o) const;

  Field field_;
  std::size_t k_ = 0;
  std::map<Exponents, Elem> terms_;
};

/// Coefficient of z^i in P(x + z): sum_e c_e prod_t C(e_t, i_t) x^(e - i).
MultiPoly hasse_derivative(const MultiPoly& p, const Exponents& i);

struct VanishingOrder {
  std::size_t order = 0;
  /// P is the zero polynomial; order is then degree-free and reported as 0.
  bool infinite = false;
  bool at_least(std::size_t v) const { return infinite || order >= v; }
};

/// Largest m such that P(x + a) has no terms of total degree below m.
VanishingOrder vanishing_order(const MultiPoly& p, std::span<const Elem> point);

}  // namespace lmat

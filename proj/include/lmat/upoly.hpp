#pragma once

#include "lmat/arith.hpp"

#include <string>
#include <vector>

namespace lmat {

/// Dense univariate polynomial over Q, coefficients low degree first.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);

  static UPoly monomial(const Rat& c, std::size_t degree);
  static UPoly parse(const std::string& text, const std::string& var = "x");

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_integral() const;

  Rat eval(const Rat& x) const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on division by zero.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);

  std::string format(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Integer coefficients of a monic integral polynomial (low degree first).
std::vector<Int> integer_coeffs(const UPoly& f);

}  // namespace lmat

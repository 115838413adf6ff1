#pragma once

#include "lmat/arith.hpp"
#include "lmat/upoly.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lmat {

/// A field element in the power basis of its field: one rational coordinate for
/// Q and F_p (an integer residue in [0, p) for the latter), deg(f) coordinates
/// for Q[t]/(f). Only meaningful together with the Field that produced it.
struct Elem {
  std::vector<Rat> c;

  friend bool operator==(const Elem& a, const Elem& b) { return a.c == b.c; }
  friend bool operator<(const Elem& a, const Elem& b) {
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
  }
};

enum class FieldKind { rational, prime, numberfield };

/// Computation context for one exact field: Q, F_p, or Q[t]/(f) with f monic,
/// integral and irreducible (machine-checked up to degree 4).
class Field {
 public:
  Field();  // Q

  static Field rational();
  static Field prime(std::uint64_t p);
  static Field number_field(const UPoly& modulus, std::string var = "t");

  /// "Q", "GF(p)", or "Q[t]/(poly in t)".
  static Field parse(const std::string& descriptor);
  std::string descriptor() const;

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return kind_ == FieldKind::prime ? p_ : 0; }
  std::uint64_t modulus_prime() const { return p_; }
  const UPoly& modulus() const { return modulus_; }
  const std::string& variable() const { return var_; }
  std::size_t degree() const { return degree_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  Elem zero() const;
  Elem one() const;
  Elem from_int(const Int& v) const;
  Elem from_int(long v) const { return from_int(Int(v)); }
  Elem from_rat(const Rat& v) const;
  /// The class of t in Q[t]/(f); throws for other kinds.
  Elem generator() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, unsigned e) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const { return a == one(); }

  /// True when the element is (the image of) an integer.
  bool is_integer(const Elem& a) const;
  /// Canonical form; validates coordinate count.
  Elem normalize(Elem a) const;

  Elem parse_elem(const std::string& text) const;
  std::string format(const Elem& a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  Rat reduce_prime(const Rat& v) const;

  FieldKind kind_ = FieldKind::rational;
  std::uint64_t p_ = 0;
  UPoly modulus_;
  std::string var_ = "t";
  std::size_t degree_ = 1;
  std::vector<std::string> warnings_;
};

/// Result of factor search for a monic integral polynomial of degree <= 4:
/// empty when irreducible over Q, otherwise one nontrivial monic factor.
std::optional<UPoly> find_factor_deg4(const UPoly& f);

}  // namespace lmat

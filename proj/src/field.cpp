#include "lmat/field.hpp"

#include "lmat/polyparse.hpp"

#include <stdexcept>

namespace lmat {

namespace {

constexpr long kDivisorSearchLimit = 1000000;  // trial division bound for |f(0)|

std::vector<Int> positive_divisors(const Int& n) {
  Int m = abs(n);
  std::vector<Int> small;
  std::vector<Int> large;
  for (Int d = 1; d * d <= m; ++d) {
    if (d > kDivisorSearchLimit) throw std::length_error("constant term too large for factor search");
    if (m % d == 0) {
      small.push_back(d);
      if (d * d != m) large.push_back(m / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

bool perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root * root == n;
}

// Extended Euclid in Q[t]: returns g = gcd and s with s*a = g (mod b).
UPoly ext_gcd_left(const UPoly& a, const UPoly& b, UPoly& s) {
  UPoly r0 = a, r1 = b, s0(std::vector<Rat>{Rat(1)}), s1;
  while (!r1.is_zero()) {
    UPoly q, r;
    UPoly::divmod(r0, r1, q, r);
    UPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  s = s0;
  return r0;
}

}  // namespace

std::optional<UPoly> find_factor_deg4(const UPoly& f) {
  if (!f.is_monic() || !f.is_integral()) throw std::invalid_argument("factor search needs a monic integral polynomial");
  long deg = f.degree();
  if (deg <= 1) return std::nullopt;
  if (deg > 4) throw std::invalid_argument("factor search limited to degree <= 4");
  auto c = integer_coeffs(f);
  if (c[0] == 0) return UPoly(std::vector<Rat>{Rat(0), Rat(1)});
  auto divisors = positive_divisors(c[0]);
  for (const auto& d : divisors) {
    for (int sign : {1, -1}) {
      Int root = d * sign;
      if (f.eval(Rat(root)) == 0) return UPoly(std::vector<Rat>{Rat(-root), Rat(1)});
    }
  }
  if (deg < 4) return std::nullopt;
  const Int &f0 = c[0], &f1 = c[1], &f2 = c[2], &f3 = c[3];
  for (const auto& dpos : divisors) {
    for (int sign : {1, -1}) {
      Int b = dpos * sign;
      Int d = f0 / b;
      std::vector<std::pair<Int, Int>> candidates;
      if (d != b) {
        Int num = f1 - b * f3;
        Int den = d - b;
        if (num % den != 0) continue;
        Int a = num / den;
        candidates.emplace_back(a, f3 - a);
      } else {
        if (b * f3 != f1) continue;
        Int disc = f3 * f3 - 4 * (f2 - 2 * b);
        Int root;
        if (!perfect_square(disc, root)) continue;
        for (const Int& s : {root, Int(-root)}) {
          Int twice = f3 + s;
          if (twice % 2 == 0) candidates.emplace_back(twice / 2, f3 - twice / 2);
        }
      }
      for (const auto& [a, cc] : candidates) {
        if (b + d + a * cc == f2 && a * d + b * cc == f1) {
          return UPoly(std::vector<Rat>{Rat(b), Rat(a), Rat(1)});
        }
      }
    }
  }
  return std::nullopt;
}

Field::Field() = default;

Field Field::rational() { return Field(); }

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 62)) throw std::invalid_argument("prime modulus too large");
  if (!is_prime(p)) throw std::invalid_argument("composite modulus " + std::to_string(p));
  Field f;
  f.kind_ = FieldKind::prime;
  f.p_ = p;
  return f;
}

Field Field::number_field(const UPoly& modulus, std::string var) {
  if (modulus.degree() < 1) throw std::invalid_argument("number field modulus must have degree >= 1");
  if (!modulus.is_monic()) throw std::invalid_argument("number field modulus " + modulus.format(var) + " is not monic");
  if (!modulus.is_integral()) {
    throw std::invalid_argument("number field modulus " + modulus.format(var) + " is not integral");
  }
  Field f;
  f.kind_ = FieldKind::numberfield;
  f.modulus_ = modulus;
  f.var_ = std::move(var);
  f.degree_ = static_cast<std::size_t>(modulus.degree());
  if (modulus.degree() <= 4) {
    std::optional<UPoly> factor;
    try {
      factor = find_factor_deg4(modulus);
    } catch (const std::length_error&) {
      f.warnings_.push_back("irreducibility of " + modulus.format(f.var_) + " not verified (constant term too large)");
    }
    if (factor) {
      throw std::invalid_argument("reducible modulus " + modulus.format(f.var_) + ": factor " + factor->format(f.var_));
    }
  } else {
    f.warnings_.push_back("irreducibility of " + modulus.format(f.var_) + " not verified (degree > 4)");
  }
  return f;
}

Field Field::parse(const std::string& descriptor) {
  std::string d;
  for (char c : descriptor) {
    if (c != ' ') d.push_back(c);
  }
  if (d == "Q" || d == "QQ") return rational();
  if ((d.rfind("GF(", 0) == 0 || d.rfind("F(", 0) == 0) && d.back() == ')') {
    std::string num = d.substr(d.find('(') + 1, d.size() - d.find('(') - 2);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed prime field descriptor '" + descriptor + "'");
    }
    return prime(std::stoull(num));
  }
  if (d.rfind("Q[", 0) == 0) {
    auto close = d.find(']');
    if (close == std::string::npos || d.compare(close + 1, 2, "/(") != 0 || d.back() != ')') {
      throw std::invalid_argument("malformed number field descriptor '" + descriptor + "'");
    }
    std::string var = d.substr(2, close - 2);
    std::string poly = d.substr(close + 3, d.size() - close - 4);
    return number_field(UPoly::parse(poly, var), var);
  }
  throw std::invalid_argument("unknown field descriptor '" + descriptor + "'");
}

std::string Field::descriptor() const {
  switch (kind_) {
    case FieldKind::rational:
      return "Q";
    case FieldKind::prime:
      return "GF(" + std::to_string(p_) + ")";
    case FieldKind::numberfield:
      return "Q[" + var_ + "]/(" + modulus_.format(var_) + ")";
  }
  return "";
}

Rat Field::reduce_prime(const Rat& v) const {
  auto r = reduce_mod(v, p_);
  if (!r) throw std::domain_error("denominator divisible by " + std::to_string(p_));
  return Rat(Int(static_cast<unsigned long>(*r)));
}

Elem Field::zero() const { return Elem{std::vector<Rat>(degree_, Rat(0))}; }

Elem Field::one() const { return from_int(Int(1)); }

Elem Field::from_int(const Int& v) const { return from_rat(Rat(v)); }

Elem Field::from_rat(const Rat& v) const {
  Elem e = zero();
  e.c[0] = kind_ == FieldKind::prime ? reduce_prime(v) : v;
  return e;
}

Elem Field::generator() const {
  if (kind_ != FieldKind::numberfield) throw std::logic_error("generator() needs a number field");
  Elem e = zero();
  if (degree_ == 1) {
    e.c[0] = -modulus_.coeff(0);
  } else {
    e.c[1] = 1;
  }
  return e;
}

Elem Field::normalize(Elem a) const {
  if (a.c.size() != degree_) throw std::invalid_argument("element has wrong number of coordinates for " + descriptor());
  for (auto& x : a.c) x.canonicalize();
  if (kind_ == FieldKind::prime) a.c[0] = reduce_prime(a.c[0]);
  return a;
}

Elem Field::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (std::size_t i = 0; i < degree_; ++i) r.c[i] += b.c[i];
  if (kind_ == FieldKind::prime && r.c[0] >= Rat(Int(static_cast<unsigned long>(p_)))) {
    r.c[0] -= Int(static_cast<unsigned long>(p_));
  }
  return r;
}

Elem Field::neg(const Elem& a) const {
  Elem r = a;
  if (kind_ == FieldKind::prime) {
    if (r.c[0] != 0) r.c[0] = Rat(Int(static_cast<unsigned long>(p_))) - r.c[0];
    return r;
  }
  for (auto& x : r.c) x = -x;
  return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::mul(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case FieldKind::rational:
      return Elem{{a.c[0] * b.c[0]}};
    case FieldKind::prime: {
      std::uint64_t x = a.c[0].get_num().get_ui();
      std::uint64_t y = b.c[0].get_num().get_ui();
      return Elem{{Rat(Int(static_cast<unsigned long>(mul_mod(x, y, p_))))}};
    }
    case FieldKind::numberfield: {
      std::vector<Rat> prod(2 * degree_ - 1, Rat(0));
      for (std::size_t i = 0; i < degree_; ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < degree_; ++j) prod[i + j] += a.c[i] * b.c[j];
      }
      const auto& f = modulus_.coeffs();
      for (std::size_t i = prod.size(); i-- > degree_;) {
        if (prod[i] == 0) continue;
        Rat lead = prod[i];
        for (std::size_t j = 0; j < degree_; ++j) prod[i - degree_ + j] -= lead * f[j];
        prod[i] = 0;
      }
      prod.resize(degree_);
      return Elem{std::move(prod)};
    }
  }
  return zero();
}

Elem Field::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  switch (kind_) {
    case FieldKind::rational:
      return Elem{{1 / a.c[0]}};
    case FieldKind::prime:
      return Elem{{Rat(Int(static_cast<unsigned long>(inv_mod(a.c[0].get_num().get_ui(), p_))))}};
    case FieldKind::numberfield: {
      UPoly s;
      UPoly g = ext_gcd_left(UPoly(a.c), modulus_, s);
      if (g.degree() != 0) throw std::domain_error("element not invertible: modulus is reducible");
      UPoly q, r;
      UPoly::divmod(s, modulus_, q, r);
      std::vector<Rat> out(degree_, Rat(0));
      for (std::size_t i = 0; i < r.coeffs().size(); ++i) out[i] = r.coeffs()[i] / g.leading();
      return Elem{std::move(out)};
    }
  }
  return zero();
}

Elem Field::pow(Elem a, unsigned e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

bool Field::is_zero(const Elem& a) const {
  for (const auto& x : a.c) {
    if (x != 0) return false;
  }
  return true;
}

bool Field::is_integer(const Elem& a) const {
  if (kind_ == FieldKind::prime) return true;
  if (a.c[0].get_den() != 1) return false;
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    if (a.c[i] != 0) return false;
  }
  return true;
}

Elem Field::parse_elem(const std::string& text) const {
  switch (kind_) {
    case FieldKind::rational:
      return from_rat(parse_rational(text));
    case FieldKind::prime: {
      Rat v = parse_rational(text);
      return from_rat(v);
    }
    case FieldKind::numberfield: {
      UPoly p = UPoly::parse(text, var_);
      UPoly q, r;
      UPoly::divmod(p, modulus_, q, r);
      std::vector<Rat> out(degree_, Rat(0));
      for (std::size_t i = 0; i < r.coeffs().size(); ++i) out[i] = r.coeffs()[i];
      return Elem{std::move(out)};
    }
  }
  return zero();
}

std::string Field::format(const Elem& a) const {
  switch (kind_) {
    case FieldKind::rational:
    case FieldKind::prime:
      return a.c[0].get_str();
    case FieldKind::numberfield:
      return UPoly(a.c).format(var_);
  }
  return "";
}

}  // namespace lmat

#include "lmat/upoly.hpp"

#include "lmat/polyparse.hpp"

#include <sstream>
#include <stdexcept>

namespace lmat {

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::monomial(const Rat& c, std::size_t degree) {
  std::vector<Rat> v(degree + 1, Rat(0));
  v[degree] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::parse(const std::string& text, const std::string& var) {
  std::vector<Rat> c;
  for (const auto& term : parse_terms(text, 1, single_variable(var))) {
    std::size_t e = term.exponents[0];
    if (c.size() <= e) c.resize(e + 1, Rat(0));
    c[e] += term.coeff;
  }
  return UPoly(std::move(c));
}

bool UPoly::is_integral() const {
  for (const auto& x : c_) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rat> v = c_;
  Rat lead = v.back();
  for (auto& x : v) x /= lead;
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> r = a.c_;
  long db = b.degree();
  std::vector<Rat> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, Rat(0));
  for (long i = a.degree(); i >= db; --i) {
    Rat factor = r[static_cast<std::size_t>(i)] / b.leading();
    if (factor == 0) continue;
    q[static_cast<std::size_t>(i - db)] = factor;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= factor * b.c_[static_cast<std::size_t>(j)];
  }
  quot = UPoly(std::move(q));
  rem = UPoly(std::move(r));
}

std::string UPoly::format(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? '-' : '+');
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << var;
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

std::vector<Int> integer_coeffs(const UPoly& f) {
  std::vector<Int> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    if (c.get_den() != 1) throw std::invalid_argument("polynomial " + f.format() + " is not integral");
    out.push_back(c.get_num());
  }
  return out;
}

}  // namespace lmat

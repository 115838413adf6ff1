#include "lmat/multipoly.hpp"

#include "lmat/polyparse.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lmat {

MultiPoly::MultiPoly(Field field, std::size_t k) : field_(std::move(field)), k_(k) {}

MultiPoly MultiPoly::constant(const Field& field, std::size_t k, const Elem& c) {
  MultiPoly p(field, k);
  p.add_term(Exponents(k, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const Field& field, std::size_t k, std::size_t i) {
  if (i >= k) throw std::invalid_argument("variable index out of range");
  MultiPoly p(field, k);
  Exponents e(k, 0);
  e[i] = 1;
  p.add_term(e, field.one());
  return p;
}

MultiPoly MultiPoly::parse(const std::string& text, const Field& field, std::size_t k) {
  MultiPoly p(field, k);
  for (const auto& t : parse_terms(text, k, indexed_variables("x", k))) p.add_term(t.exponents, field.from_rat(t.coeff));
  return p;
}

long MultiPoly::degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max<long>(d, std::accumulate(e.begin(), e.end(), 0L));
  return d;
}

long MultiPoly::low_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long t = std::accumulate(e.begin(), e.end(), 0L);
    if (d < 0 || t < d) d = t;
  }
  return d;
}

bool MultiPoly::is_homogeneous() const { return degree() == low_degree(); }

bool MultiPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return field_.is_integer(t.second); });
}

Elem MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Elem& c) {
  if (e.size() != k_) throw std::invalid_argument("exponent vector has wrong length");
  auto it = terms_.find(e);
  Elem v = it == terms_.end() ? field_.normalize(c) : field_.add(it->second, c);
  if (field_.is_zero(v)) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it != terms_.end()) {
    it->second = std::move(v);
  } else {
    terms_.emplace(e, std::move(v));
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (k_ != o.k_ || field_ != o.field_) throw std::invalid_argument("polynomials over different rings");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, field_.neg(c));
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(field_, k_);
  Exponents e(k_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < k_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, field_.mul(ca, cb));
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Elem& c) const {
  MultiPoly r(field_, k_);
  for (const auto& [e, v] : terms_) r.add_term(e, field_.mul(v, c));
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(field_, k_, field_.one());
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Elem MultiPoly::eval(std::span<const Elem> point) const {
  if (point.size() != k_) throw std::invalid_argument("evaluation point has wrong dimension");
  Elem sum = field_.zero();
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (std::size_t i = 0; i < k_; ++i) {
      if (e[i] > 0) t = field_.mul(t, field_.pow(point[i], e[i]));
    }
    sum = field_.add(sum, t);
  }
  return sum;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
  if (images.size() != k_) throw std::invalid_argument("compose needs one image per variable");
  if (images.empty()) return *this;
  const Field& f = images[0].field();
  const std::size_t k2 = images[0].num_vars();
  for (const auto& im : images) {
    if (im.field() != f || im.num_vars() != k2) throw std::invalid_argument("images over different rings");
  }
  if (f != field_) throw std::invalid_argument("images must share the polynomial's field");
  // powers[i][j] = images[i]^j, filled on demand
  std::vector<std::vector<MultiPoly>> powers(k_);
  auto power = [&](std::size_t i, unsigned j) -> const MultiPoly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(constant(f, k2, f.one()));
    while (v.size() <= j) v.push_back(v.back() * images[i]);
    return v[j];
  };
  MultiPoly r(f, k2);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(f, k2, c);
    for (std::size_t i = 0; i < k_; ++i) {
      if (e[i] > 0) t = t * power(i, e[i]);
    }
    r = r + t;
  }
  return r;
}

MultiPoly MultiPoly::translate(std::span<const Elem> a) const {
  if (a.size() != k_) throw std::invalid_argument("translation has wrong dimension");
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < k_; ++i) {
    images.push_back(variable(field_, k_, i) + constant(field_, k_, a[i]));
  }
  return compose(images);
}

MultiPoly MultiPoly::over(const Field& target) const {
  if (field_.kind() != FieldKind::rational) throw std::invalid_argument("only rational polynomials can change field");
  MultiPoly r(target, k_);
  for (const auto& [e, c] : terms_) r.add_term(e, target.from_rat(c.c[0]));
  return r;
}

std::string MultiPoly::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  const bool plain = field_.kind() != FieldKind::numberfield;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coef;
    bool negative = false;
    if (plain) {
      Rat v = c.c[0];
      negative = v < 0;
      if (negative) v = -v;
      coef = v.get_str();
    } else {
      coef = "(" + field_.format(c) + ")";
    }
    std::string mono;
    for (std::size_t i = 0; i < k_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty()) term = coef;
    else if (coef == "1") term = mono;
    else term = coef + "*" + mono;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

MultiPoly hasse_derivative(const MultiPoly& p, const Exponents& i) {
  if (i.size() != p.num_vars()) throw std::invalid_argument("multi-index has wrong length");
  const Field& f = p.field();
  MultiPoly r(f, p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    Int mult = 1;
    Exponents out(e.size());
    bool zero = false;
    for (std::size_t t = 0; t < e.size(); ++t) {
      if (e[t] < i[t]) {
        zero = true;
        break;
      }
      mult *= binomial(e[t], i[t]);
      out[t] = e[t] - i[t];
    }
    // the binomial is reduced in the field, so char-p cancellation happens here
    if (!zero) r.add_term(out, f.mul(c, f.from_int(mult)));
  }
  return r;
}

VanishingOrder vanishing_order(const MultiPoly& p, std::span<const Elem> point) {
  MultiPoly shifted = p.translate(point);
  if (shifted.is_zero()) return {0, true};
  return {static_cast<std::size_t>(shifted.low_degree()), false};
}

}  // namespace lmat

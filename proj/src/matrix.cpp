#include "lmat/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace lmat {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match rows*cols");
  for (auto& e : data_) e = field_.normalize(std::move(e));
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
  return m;
}

Matrix Matrix::constant(const Field& field, std::size_t rows, std::size_t cols, const Elem& value) {
  return Matrix(field, rows, cols, std::vector<Elem>(rows * cols, value));
}

Matrix Matrix::from_ints(const Field& field, const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  std::vector<Elem> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged integer matrix");
    for (long v : row) data.push_back(field.from_int(v));
  }
  return Matrix(field, r, c, std::move(data));
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

Matrix Matrix::leading_principal(std::size_t n) const {
  if (n > rows_ || n > cols_) throw std::out_of_range("principal submatrix larger than matrix");
  Matrix s(field_, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.at(i, j) = at(i, j);
  }
  return s;
}

bool Matrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!(at(i, j) == at(j, i))) return false;
    }
  }
  return true;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (field_ != other.field_ || rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix sum: shape or field mismatch");
  }
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], other.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (field_ != other.field_ || rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix difference: shape or field mismatch");
  }
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], other.data_[i]);
  return r;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (field_ != other.field_ || cols_ != other.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix r(field_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem& a = at(i, k);
      if (field_.is_zero(a)) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, other.at(k, j)));
      }
    }
  }
  return r;
}

Matrix Matrix::scaled(const Elem& s) const {
  Matrix r = *this;
  for (auto& e : r.data_) e = field_.mul(e, s);
  return r;
}

// ---------------------------------------------------------------------------
// Rank

std::size_t rank_mod_p(std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols, std::uint64_t p) {
  const bool small = p < (1ULL << 32);
  auto mulp = [small, p](std::uint64_t x, std::uint64_t y) { return small ? x * y % p : mul_mod(x, y, p); };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(a.begin() + static_cast<long>(piv * cols), a.begin() + static_cast<long>((piv + 1) * cols),
                       a.begin() + static_cast<long>(r * cols));
    }
    std::uint64_t inv = inv_mod(a[r * cols + c], p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t lead = a[i * cols + c];
      if (lead == 0) continue;
      std::uint64_t factor = mulp(lead, inv);
      std::uint64_t* row = &a[i * cols];
      const std::uint64_t* prow = &a[r * cols];
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] == 0) continue;
        std::uint64_t sub = mulp(factor, prow[j]);
        row[j] = row[j] >= sub ? row[j] - sub : row[j] + p - sub;
      }
    }
    ++r;
  }
  return r;
}

namespace {

// Bareiss over Z; rows are permuted in place.
std::size_t bareiss_rank_int(std::vector<Int>& a, std::size_t rows, std::size_t cols) {
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) swap(a[piv * cols + j], a[r * cols + j]);
    }
    const Int pivot = a[r * cols + c];
    Int tmp;
    for (std::size_t i = r + 1; i < rows; ++i) {
      Int lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int& x = a[i * cols + j];
        // x = (pivot*x - lead*a[r][j]) / prev
        mpz_mul(x.get_mpz_t(), x.get_mpz_t(), pivot.get_mpz_t());
        mpz_submul(x.get_mpz_t(), lead.get_mpz_t(), a[r * cols + j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

using ZPoly = std::vector<Int>;  // element of Z[t]/(f), deg(f) coordinates

ZPoly zmul(const ZPoly& a, const ZPoly& b, const std::vector<Int>& f) {
  std::size_t d = a.size();
  std::vector<Int> prod(2 * d - 1, Int(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  for (std::size_t i = prod.size(); i-- > d;) {
    if (prod[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) mpz_submul(prod[i - d + j].get_mpz_t(), prod[i].get_mpz_t(), f[j].get_mpz_t());
    prod[i] = 0;
  }
  prod.resize(d);
  return prod;
}

bool zis_zero(const ZPoly& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

// Bareiss over Z[t]/(f), f monic integral. Exact division by the previous pivot
// uses its inverse in Q(t) written as w/den with w integral.
std::size_t bareiss_rank_order(std::vector<ZPoly>& a, std::size_t rows, std::size_t cols, const Field& field) {
  const std::vector<Int> f = integer_coeffs(field.modulus());
  const std::size_t d = field.degree();
  std::optional<std::pair<ZPoly, Int>> prev_inv;  // nullopt means prev = 1
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && zis_zero(a[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const ZPoly pivot = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const ZPoly lead = a[i * cols + c];
      const bool lead_zero = zis_zero(lead);
      for (std::size_t j = c + 1; j < cols; ++j) {
        ZPoly x = zmul(a[i * cols + j], pivot, f);
        if (!lead_zero) {
          ZPoly y = zmul(lead, a[r * cols + j], f);
          for (std::size_t t = 0; t < d; ++t) x[t] -= y[t];
        }
        if (prev_inv) {
          x = zmul(x, prev_inv->first, f);
          for (auto& coef : x) {
            if (!mpz_divisible_p(coef.get_mpz_t(), prev_inv->second.get_mpz_t())) {
              throw std::logic_error("Bareiss division not exact over Z[t]/(f)");
            }
            mpz_divexact(coef.get_mpz_t(), coef.get_mpz_t(), prev_inv->second.get_mpz_t());
          }
        }
        a[i * cols + j] = std::move(x);
      }
      a[i * cols + c] = ZPoly(d, Int(0));
    }
    Elem pe{std::vector<Rat>(pivot.begin(), pivot.end())};
    Elem inv = field.inv(pe);
    Int den = 1;
    for (const auto& q : inv.c) den = lcm(den, q.get_den());
    ZPoly w(d);
    for (std::size_t t = 0; t < d; ++t) w[t] = Rat(inv.c[t] * den).get_num();
    prev_inv = std::make_pair(std::move(w), den);
    ++r;
  }
  return r;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> reduce_matrix(const Matrix& m, std::uint64_t p) {
  const Field& f = m.field();
  if (f.kind() == FieldKind::numberfield) {
    if (f.degree() != 1) throw std::invalid_argument("modular reduction of number-field matrices is not supported");
  }
  if (f.kind() == FieldKind::prime && f.modulus_prime() != p) {
    throw std::invalid_argument("cannot reduce a GF(q) matrix modulo a different prime");
  }
  std::vector<std::uint64_t> out(m.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto r = reduce_mod(m.entries()[i].c[0], p);
    if (!r) return std::nullopt;
    out[i] = *r;
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  if (f.kind() == FieldKind::prime) {
    return rank_mod_p(*reduce_matrix(m, f.modulus_prime()), rows, cols, f.modulus_prime());
  }
  if (rows * cols > kExactRankEntryLimit) {
    throw std::length_error("matrix has " + std::to_string(rows * cols) +
                            " entries; exact elimination refused, use rank_bounds_modular");
  }
  if (f.kind() == FieldKind::rational) {
    std::vector<Int> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
      Int scale = 1;
      for (std::size_t j = 0; j < cols; ++j) scale = lcm(scale, m.at(i, j).c[0].get_den());
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = Rat(m.at(i, j).c[0] * scale).get_num();
    }
    return bareiss_rank_int(a, rows, cols);
  }
  const std::size_t d = f.degree();
  std::vector<ZPoly> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Int scale = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      for (const auto& q : m.at(i, j).c) scale = lcm(scale, q.get_den());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      ZPoly z(d);
      for (std::size_t t = 0; t < d; ++t) z[t] = Rat(m.at(i, j).c[t] * scale).get_num();
      a[i * cols + j] = std::move(z);
    }
  }
  return bareiss_rank_order(a, rows, cols, f);
}

ModularRankBounds rank_bounds_modular(const Matrix& m, std::span<const std::uint64_t> primes, bool want_exact_upper) {
  ModularRankBounds out;
  out.upper = std::min(m.rows(), m.cols());
  for (std::uint64_t p : primes) {
    if (!is_prime(p)) {
      out.notices.push_back(std::to_string(p) + " is not prime; skipped");
      continue;
    }
    auto reduced = reduce_matrix(m, p);
    if (!reduced) {
      out.notices.push_back(std::to_string(p) + " divides a denominator; skipped");
      continue;
    }
    std::size_t r = rank_mod_p(std::move(*reduced), m.rows(), m.cols(), p);
    out.per_prime.emplace_back(p, r);
    out.lower = std::max(out.lower, r);
  }
  if (want_exact_upper && m.rows() * m.cols() <= kExactRankEntryLimit) {
    out.upper = rank(m);
    out.upper_exact = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entrywise polynomials

long FieldPoly::degree(const Field& f) const {
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (!f.is_zero(coeffs[i])) return static_cast<long>(i);
  }
  return -1;
}

Elem FieldPoly::eval(const Field& f, const Elem& x) const {
  Elem acc = f.zero();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

std::vector<std::size_t> FieldPoly::support(const Field& f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!f.is_zero(coeffs[i])) out.push_back(i);
  }
  return out;
}

Matrix entrywise_apply(const FieldPoly& poly, const Matrix& m) {
  std::vector<Elem> out;
  out.reserve(m.entries().size());
  for (const auto& e : m.entries()) out.push_back(poly.eval(m.field(), e));
  return Matrix(m.field(), m.rows(), m.cols(), std::move(out));
}

Int entrywise_dense_bound(std::size_t r, long degree) {
  if (degree < 0) return 0;
  return binomial(static_cast<long>(r) + degree, degree);
}

Int entrywise_sparse_bound(std::size_t r, const std::vector<std::size_t>& degrees) {
  Int total = 0;
  for (std::size_t d : degrees) total += binomial(static_cast<long>(r + d) - 1, static_cast<long>(d));
  return total;
}

EntrywiseResult entrywise_apply_checked(const FieldPoly& poly, const Matrix& m) {
  EntrywiseResult res;
  res.matrix = entrywise_apply(poly, m);
  res.rank_input = rank(m);
  res.rank_output = rank(res.matrix);
  res.dense_bound = entrywise_dense_bound(res.rank_input, poly.degree(m.field()));
  res.sparse_bound = entrywise_sparse_bound(res.rank_input, poly.support(m.field()));
  Int out(static_cast<unsigned long>(res.rank_output));
  res.bounds_hold = out <= res.dense_bound && out <= res.sparse_bound;
  return res;
}

std::size_t eigen_multiplicity(const Matrix& m, const Elem& lambda) {
  if (!m.square()) throw std::invalid_argument("eigen_multiplicity needs a square matrix");
  Matrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted.at(i, i) = m.field().sub(m.at(i, i), lambda);
  return m.rows() - rank(shifted);
}

std::size_t rank_with_ones(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("rank_with_ones needs a square matrix");
  const Field& f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = f.one();
  }
  return rank(aug);
}

Matrix block_compose(const Matrix& m1, const Matrix& m2, const Elem& alpha) {
  if (m1.field() != m2.field()) throw std::invalid_argument("block_compose: field mismatch");
  if (!m1.square() || !m2.square()) throw std::invalid_argument("block_compose needs square blocks");
  const std::size_t n1 = m1.rows(), n2 = m2.rows(), n = n1 + n2;
  Matrix out(m1.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i < n1 && j < n1) {
        out.at(i, j) = m1.at(i, j);
      } else if (i >= n1 && j >= n1) {
        out.at(i, j) = m2.at(i - n1, j - n1);
      } else {
        out.at(i, j) = alpha;
      }
    }
  }
  return out;
}

Elem determinant(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant needs a square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Elem> a = m.entries();
  Elem det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && f.is_zero(a[piv * n + c])) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = f.neg(det);
    }
    const Elem& p = a[c * n + c];
    det = f.mul(det, p);
    const Elem pinv = f.inv(p);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (f.is_zero(a[i * n + c])) continue;
      const Elem factor = f.mul(a[i * n + c], pinv);
      for (std::size_t j = c; j < n; ++j) a[i * n + j] = f.sub(a[i * n + j], f.mul(factor, a[c * n + j]));
    }
  }
  return det;
}

}  // namespace lmat

#include "lmat/smith.hpp"

#include <stdexcept>
#include <utility>

namespace lmat {

namespace {

IntMat identity(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void row_axpy(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += f * m[src][j];
}

void col_axpy(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
  if (f == 0) return;
  for (auto& row : m) row[dst] += f * row[src];
}

void col_swap(IntMat& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

void col_negate(IntMat& m, std::size_t c) {
  for (auto& row : m) row[c] = -row[c];
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rat row_dot(const RatVec& w, const RatMat& m, std::size_t col) {
  Rat acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * m[i][col];
  return acc;
}

}  // namespace

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMat c(a.size(), IntVec(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
  IntVec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

SmithForm smith_normal_form(const IntMat& a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("ragged matrix in smith_normal_form");
  }
  SmithForm s{identity(m), a, identity(n), 0};
  IntMat& d = s.D;

  std::size_t t = 0;
  while (t < m && t < n) {
    // Pivot: smallest nonzero |entry| in the trailing block.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (d[i][j] != 0 && (pi == m || abs(d[i][j]) < abs(d[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == m) break;
    std::swap(d[t], d[pi]);
    std::swap(s.U[t], s.U[pi]);
    col_swap(d, t, pj);
    col_swap(s.V, t, pj);

    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      Int f = -floor_div(d[i][t], d[t][t]);
      row_axpy(d, i, t, f);
      row_axpy(s.U, i, t, f);
      dirty = dirty || d[i][t] != 0;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      Int f = -floor_div(d[t][j], d[t][t]);
      col_axpy(d, j, t, f);
      col_axpy(s.V, j, t, f);
      dirty = dirty || d[t][j] != 0;
    }
    if (dirty) continue;  // a smaller remainder exists; pick it as the next pivot

    // Divisibility: fold an offending row into row t and retry.
    bool folded = false;
    for (std::size_t i = t + 1; i < m && !folded; ++i) {
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d[i][j] % d[t][t] != 0) {
          row_axpy(d, t, i, Int(1));
          row_axpy(s.U, t, i, Int(1));
          folded = true;
          break;
        }
      }
    }
    if (folded) continue;

    if (d[t][t] < 0) {
      col_negate(d, t);
      col_negate(s.V, t);
    }
    ++t;
  }
  s.rank = t;

  if (mat_mul(mat_mul(s.U, a), s.V) != d) throw std::logic_error("Smith form verification failed");
  return s;
}

std::vector<IntVec> integer_kernel(const IntMat& a) {
  if (a.empty()) return {};
  const std::size_t n = a[0].size();
  SmithForm s = smith_normal_form(a);
  std::vector<IntVec> basis;
  for (std::size_t j = s.rank; j < n; ++j) {
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = s.V[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntegerSolveResult integer_solvable(const RatMat& m, const RatVec& b) {
  const std::size_t rows = m.size();
  if (b.size() != rows) throw std::invalid_argument("integer_solvable: right-hand side length mismatch");
  const std::size_t n = rows ? m[0].size() : 0;

  // Clear denominators row by row: scale_i * (M_i | b_i) is integral.
  IntMat a(rows, IntVec(n));
  IntVec c(rows);
  std::vector<Int> scale(rows, 1);
  for (std::size_t i = 0; i < rows; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("ragged matrix in integer_solvable");
    Int l = b[i].get_den();
    for (const auto& x : m[i]) l = lcm(l, x.get_den());
    scale[i] = l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j] * l).get_num();
    c[i] = Rat(b[i] * l).get_num();
  }

  IntegerSolveResult out;
  if (n == 0) {
    // Solvable iff b = 0; otherwise w = e_i / (2 b_i) certifies.
    for (std::size_t i = 0; i < rows; ++i) {
      if (b[i] != 0) {
        RatVec w(rows, 0);
        w[i] = Rat(1) / (2 * b[i]);
        out.certificate = std::move(w);
        return out;
      }
    }
    out.solution = IntVec{};
    return out;
  }

  SmithForm s = smith_normal_form(a);
  IntVec uc = mat_vec(s.U, c);

  auto certificate_from_row = [&](std::size_t i, const Rat& divisor) {
    // w_int = U_i / divisor certifies the cleared system; undo the row scaling.
    RatVec w(rows);
    for (std::size_t r = 0; r < rows; ++r) w[r] = Rat(s.U[i][r] * scale[r]) / divisor;
    for (auto& x : w) x.canonicalize();
    return w;
  };

  for (std::size_t i = s.rank; i < rows; ++i) {
    if (uc[i] != 0) {
      out.certificate = certificate_from_row(i, Rat(2 * uc[i]));
      return out;
    }
  }
  IntVec y(n, 0);
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (uc[i] % s.D[i][i] != 0) {
      out.certificate = certificate_from_row(i, Rat(s.D[i][i]));
      return out;
    }
    y[i] = uc[i] / s.D[i][i];
  }
  out.solution = mat_vec(s.V, y);
  return out;
}

bool verify_solution(const RatMat& m, const RatVec& b, const IntVec& z) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rat acc = 0;
    for (std::size_t j = 0; j < z.size(); ++j) acc += m[i][j] * z[j];
    if (acc != b[i]) return false;
  }
  return true;
}

bool verify_certificate(const RatMat& m, const RatVec& b, const RatVec& w) {
  if (w.size() != m.size()) return false;
  const std::size_t n = m.empty() ? 0 : m[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    if (row_dot(w, m, j).get_den() != 1) return false;
  }
  Rat wb = 0;
  for (std::size_t i = 0; i < w.size(); ++i) wb += w[i] * b[i];
  return wb.get_den() != 1;
}

}  // namespace lmat

#include "sgen2/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace sgen2 {

RatMatrix identity_rat(size_t n) {
  RatMatrix m(n, RatVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix t(m[0].size(), RatVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.size(), RatVec(b.empty() ? 0 : b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec vec_mat(const RatVec& x, const RatMatrix& m) {
  RatVec out(m.empty() ? 0 : m[0].size(), 0);
  for (size_t k = 0; k < m.size(); ++k) {
    if (x[k] == 0) continue;
    for (size_t j = 0; j < out.size(); ++j) out[j] += x[k] * m[k][j];
  }
  return out;
}

namespace {

// Gaussian elimination in place; returns rank and the sign-tracked determinant
// multiplier for square inputs.
size_t eliminate(RatMatrix& m, Rat* det) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  if (det) *det = 1;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) {
      if (det) *det = 0;
      continue;
    }
    if (piv != r) {
      std::swap(m[piv], m[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= m[r][c];
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  if (det && r < rows) *det = 0;
  return r;
}

}  // namespace

size_t rank(RatMatrix m) { return eliminate(m, nullptr); }

Rat determinant(RatMatrix m) {
  Rat d;
  eliminate(m, &d);
  return d;
}

std::optional<RatVec> solve_left(const RatMatrix& m, const RatVec& b) {
  // x * M = b  <=>  M^T x^T = b^T; eliminate on the augmented transpose.
  size_t rows = m.size();
  size_t cols = b.size();
  RatMatrix a(cols, RatVec(rows + 1));
  for (size_t j = 0; j < cols; ++j) {
    for (size_t i = 0; i < rows; ++i) a[j][i] = m[i][j];
    a[j][rows] = b[j];
  }
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < rows && r < cols; ++c) {
    size_t piv = r;
    while (piv < cols && a[piv][c] == 0) ++piv;
    if (piv == cols) continue;
    std::swap(a[piv], a[r]);
    Rat inv = 1 / a[r][c];
    for (size_t j = c; j <= rows; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < cols; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j <= rows; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (size_t i = r; i < cols; ++i)
    if (a[i][rows] != 0) return std::nullopt;
  RatVec x(rows, 0);
  for (size_t i = 0; i < r; ++i) x[pivots[i]] = a[i][rows];
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  size_t n = m.size();
  RatMatrix inv(n);
  for (size_t i = 0; i < n; ++i) {
    RatVec e(n, 0);
    e[i] = 1;
    auto row = solve_left(m, e);
    if (!row) return std::nullopt;
    inv[i] = *row;
  }
  // Rows solved as x * M = e_i give M^{-1} directly.
  return inv;
}

namespace {

void row_axpy(IntVec& dst, const Int& q, const IntVec& src) {
  for (size_t j = 0; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] -= q * src[j];
}

// Echelonize in place; returns rank. Rows beyond rank are zero.
size_t echelonize(IntMatrix& m, size_t cols_to_pivot) {
  size_t rows = m.size();
  size_t r = 0;
  for (size_t c = 0; c < cols_to_pivot && r < rows; ++c) {
    for (;;) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        if (best == rows || abs(m[i][c]) < abs(m[best][c])) best = i;
      }
      if (best == rows) break;
      std::swap(m[best], m[r]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        row_axpy(m[i], q, m[r]);
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (size_t i = 0; i < r; ++i) {
      if (m[i][c] == 0) continue;
      Int q = floor_div(m[i][c], m[r][c]);
      if (q != 0) row_axpy(m[i], q, m[r]);
    }
    ++r;
  }
  return r;
}

}  // namespace

IntMatrix hnf(IntMatrix m) {
  if (m.empty()) return m;
  size_t cols = m[0].size();
  size_t r = echelonize(m, cols);
  m.resize(r);
  return m;
}

HnfTransform hnf_with_transform(const IntMatrix& m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  IntMatrix aug(rows, IntVec(cols + rows, 0));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
    aug[i][cols + i] = 1;
  }
  // Pivot only over the original columns so the transform part stays intact.
  size_t r = echelonize(aug, cols);
  HnfTransform out;
  out.rank = r;
  out.h.assign(rows, IntVec(cols));
  out.u.assign(rows, IntVec(rows));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) out.h[i][j] = aug[i][j];
    for (size_t j = 0; j < rows; ++j) out.u[i][j] = aug[i][cols + j];
  }
  return out;
}

IntMatrix left_kernel(const IntMatrix& m) {
  auto t = hnf_with_transform(m);
  IntMatrix k(t.u.begin() + static_cast<std::ptrdiff_t>(t.rank), t.u.end());
  return hnf(k);
}

std::vector<Int> smith_diagonal(IntMatrix m) {
  std::vector<Int> diag;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t t = 0;
  while (t < rows && t < cols) {
    // Locate the smallest nonzero entry of the trailing block.
    size_t bi = rows, bj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    std::swap(m[t], m[bi]);
    for (auto& row : m) std::swap(row[t], row[bj]);
    bool clean = true;
    for (size_t i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
      row_axpy(m[i], q, m[t]);
      if (m[i][t] != 0) clean = false;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (m[t][j] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
      for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // Enforce divisibility: fold an offending row into row t and retry.
    bool divides = true;
    for (size_t i = t + 1; i < rows && divides; ++i)
      for (size_t j = t + 1; j < cols; ++j)
        if (!mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
          for (size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          divides = false;
          break;
        }
    if (!divides) continue;
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

std::vector<size_t> pivot_columns(const IntMatrix& echelon) {
  std::vector<size_t> piv;
  for (const auto& row : echelon) {
    size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

std::optional<IntVec> echelon_coordinates(const IntMatrix& echelon, IntVec v) {
  auto piv = pivot_columns(echelon);
  IntVec coords(echelon.size(), 0);
  for (size_t i = 0; i < echelon.size(); ++i) {
    size_t c = piv[i];
    // Entries left of this pivot must already be cleared.
    for (size_t j = (i == 0 ? 0 : piv[i - 1] + 1); j < c; ++j)
      if (v[j] != 0) return std::nullopt;
    if (!mpz_divisible_p(v[c].get_mpz_t(), echelon[i][c].get_mpz_t())) return std::nullopt;
    Int q = v[c] / echelon[i][c];
    coords[i] = q;
    if (q != 0) row_axpy(v, q, echelon[i]);
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

}  // namespace sgen2

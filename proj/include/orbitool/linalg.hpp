#ifndef ORBITOOL_LINALG_HPP
#define ORBITOOL_LINALG_HPP

#include "orbitool/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace orbitool {

using Mat = std::vector<IVec>;
using QMat = std::vector<QVec>;

inline Mat identity(size_t n) {
  Mat m(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QMat to_qmat(const Mat& a) {
  QMat q(a.size());
  for (size_t i = 0; i < a.size(); ++i) q[i] = to_qvec(a[i]);
  return q;
}

inline QVec mul(const QVec& x, const QMat& a) {
  size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
  QVec r(n, Rat(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) r[j] += x[i] * a[i][j];
  return r;
}

inline Mat mul(const Mat& a, const Mat& b) {
  size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
  Mat r(m, IVec(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (size_t j = 0; j < n; ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

/// Rational Gaussian elimination; returns the rank, reducing `a` in place.
inline int row_reduce(QMat& a) {
  if (a.empty()) return 0;
  size_t m = a.size(), n = a[0].size();
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t p = row;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    Rat inv = Rat(1) / a[row][col];
    for (size_t j = col; j < n; ++j) a[row][j] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  return static_cast<int>(row);
}

inline int rank(QMat a) { return row_reduce(a); }

inline Rat det(QMat a) {
  size_t n = a.size();
  Rat d = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) { std::swap(a[p], a[col]); d = -d; }
    d *= a[col][col];
    Rat inv = Rat(1) / a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rat f = a[i][col] * inv;
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return d;
}

inline QMat inverse(const QMat& a) {
  size_t n = a.size();
  QMat aug(n, QVec(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  if (row_reduce(aug) != static_cast<int>(n))
    throw ValidationError("inverse: singular matrix");
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Basis of the right null space { x : a x^T = 0 }, as rows.
inline QMat nullspace(QMat a) {
  if (a.empty()) return {};
  size_t n = a[0].size();
  int r = row_reduce(a);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(n, false);
  for (int i = 0; i < r; ++i) {
    size_t c = 0;
    while (c < n && a[i][c] == 0) ++c;
    pivot_col.push_back(static_cast<int>(c));
    is_pivot[c] = true;
  }
  QMat basis;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    QVec x(n, Rat(0));
    x[free] = 1;
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = -a[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
/// Requires full column rank; returns a square upper-triangular basis with
/// positive diagonal and entries above each pivot reduced into [0, pivot).
inline Mat row_hnf(Mat a, size_t n) {
  for (auto& r : a) assert(r.size() == n);
  size_t row = 0;
  for (size_t col = 0; col < n; ++col) {
    // gcd out the column below `row`
    while (true) {
      size_t p = a.size();
      for (size_t i = row; i < a.size(); ++i)
        if (a[i][col] != 0 && (p == a.size() || boost::multiprecision::abs(a[i][col]) < boost::multiprecision::abs(a[p][col])))
          p = i;
      if (p == a.size()) throw ValidationError("row_hnf: rank deficient input");
      std::swap(a[p], a[row]);
      bool done = true;
      for (size_t i = row + 1; i < a.size(); ++i) {
        if (a[i][col] == 0) continue;
        Int q = a[i][col] / a[row][col];
        for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[row][j];
        if (a[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[row][col] < 0)
      for (size_t j = 0; j < n; ++j) a[row][j] = -a[row][j];
    // reduce the entries above the pivot
    for (size_t i = 0; i < row; ++i) {
      Int q = a[i][col] / a[row][col];
      if (a[i][col] - q * a[row][col] < 0) q -= 1;
      if (q != 0)
        for (size_t j = 0; j < n; ++j) a[i][j] -= q * a[row][j];
    }
    ++row;
  }
  a.resize(n);
  return a;
}

struct SmithResult {
  Mat s;  // diagonal, s[i][i] >= 0, each dividing the next
  Mat p;  // left unimodular transform
  Mat q;  // right unimodular transform;  p * a * q == s
};

/// Smith normal form with transforms.
inline SmithResult smith_normal_form(const Mat& a0) {
  size_t m = a0.size(), n = a0.empty() ? 0 : a0[0].size();
  Mat a = a0;
  Mat p = identity(m), q = identity(n);
  using boost::multiprecision::abs;

  auto swap_rows = [&](size_t i, size_t j) { std::swap(a[i], a[j]); std::swap(p[i], p[j]); };
  auto swap_cols = [&](size_t i, size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : q) std::swap(r[i], r[j]);
  };
  auto add_row = [&](size_t dst, size_t src, const Int& f) {
    for (size_t j = 0; j < n; ++j) a[dst][j] += f * a[src][j];
    for (size_t j = 0; j < m; ++j) p[dst][j] += f * p[src][j];
  };
  auto add_col = [&](size_t dst, size_t src, const Int& f) {
    for (size_t i = 0; i < m; ++i) a[i][dst] += f * a[i][src];
    for (size_t i = 0; i < n; ++i) q[i][dst] += f * q[i][src];
  };

  size_t k = 0;
  while (k < m && k < n) {
    // find a nonzero pivot of minimal absolute value
    size_t pi = m, pj = n;
    for (size_t i = k; i < m; ++i)
      for (size_t j = k; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
    if (pi == m) break;  // all zero
    swap_rows(k, pi);
    swap_cols(k, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = k + 1; i < m; ++i) {
        if (a[i][k] == 0) continue;
        Int f = -(a[i][k] / a[k][k]);
        add_row(i, k, f);
        if (a[i][k] != 0) { swap_rows(k, i); clean = false; }
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        Int f = -(a[k][j] / a[k][k]);
        add_col(j, k, f);
        if (a[k][j] != 0) { swap_cols(k, j); clean = false; }
      }
    }
    // enforce divisibility of the remaining block by a[k][k]
    bool redo = false;
    for (size_t i = k + 1; i < m && !redo; ++i)
      for (size_t j = k + 1; j < n && !redo; ++j)
        if (a[i][j] % a[k][k] != 0) { add_row(k, i, 1); redo = true; }
    if (redo) continue;
    if (a[k][k] < 0) {
      for (size_t j = 0; j < n; ++j) a[k][j] = -a[k][j];
      for (size_t j = 0; j < m; ++j) p[k][j] = -p[k][j];
    }
    ++k;
  }
  return {a, p, q};
}

inline Rat det_rows(const std::vector<QVec>& rows) { return det(QMat(rows)); }

}  // namespace orbitool

#endif

// fraquad — dense Gaussian elimination, inverses, and nullspaces, templated
// over the scalar (exact rationals or double).
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fraquad/rational.hpp"

namespace fraquad {

/// Dense row-major matrix over T (Rat for the exact path, double otherwise).
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, T(0)) {}

  T& at(int r, int c) { return a[(size_t)r * cols + c]; }
  const T& at(int r, int c) const { return a[(size_t)r * cols + c]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
  assert(x.cols == y.rows);
  Mat<T> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& v = x.at(i, k);
      if (is_zero(v)) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
  assert((int)v.size() == m.cols);
  std::vector<T> out(m.rows, T(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!is_zero(m.at(i, j))) out[i] += m.at(i, j) * v[j];
  return out;
}

namespace detail {

/// Pick a pivot row in column `col` at/below `row`. Exact scalars only need
/// any nonzero entry; doubles take the largest magnitude (partial pivoting).
template <class T>
int pivot_row(const Mat<T>& m, int row, int col) {
  if constexpr (std::is_same_v<T, double>) {
    int best = -1;
    double mag = 0.0;
    for (int r = row; r < m.rows; ++r) {
      double v = std::fabs(m.at(r, col));
      if (v > mag) {
        mag = v;
        best = r;
      }
    }
    return best;
  } else {
    for (int r = row; r < m.rows; ++r)
      if (!is_zero(m.at(r, col))) return r;
    return -1;
  }
}

template <class T>
void swap_rows(Mat<T>& m, int r1, int r2) {
  if (r1 == r2) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(r1, c), m.at(r2, c));
}

}  // namespace detail

/// Reduce [A | B] to reduced row echelon form in place. Returns the pivot
/// column of each pivot row (rank = result.size()). Only the first
/// `lead_cols` columns are eligible as pivots; the rest ride along as RHS.
template <class T>
std::vector<int> rref(Mat<T>& m, int lead_cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < lead_cols && row < m.rows; ++col) {
    int pr = detail::pivot_row(m, row, col);
    if (pr < 0) continue;
    detail::swap_rows(m, row, pr);
    T inv = T(1) / m.at(row, col);
    for (int c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    m.at(row, col) = T(1);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || is_zero(m.at(r, col))) continue;
      T f = m.at(r, col);
      for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
      m.at(r, col) = T(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Solve A X = B for X (A square). Throws on singular A.
template <class T>
Mat<T> solve_dense(Mat<T> a, const Mat<T>& b) {
  assert(a.rows == a.cols && a.rows == b.rows);
  int n = a.rows, k = b.cols;
  Mat<T> aug(n, n + k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    for (int j = 0; j < k; ++j) aug.at(i, n + j) = b.at(i, j);
  }
  std::vector<int> piv = rref(aug, n);
  if ((int)piv.size() != n) throw std::runtime_error("singular linear system");
  Mat<T> x(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) x.at(i, j) = aug.at(i, n + j);
  return x;
}

template <class T>
std::vector<T> solve_dense(const Mat<T>& a, const std::vector<T>& b) {
  Mat<T> bm((int)b.size(), 1);
  for (int i = 0; i < (int)b.size(); ++i) bm.at(i, 0) = b[i];
  Mat<T> x = solve_dense(a, bm);
  std::vector<T> out(a.rows);
  for (int i = 0; i < a.rows; ++i) out[i] = x.at(i, 0);
  return out;
}

template <class T>
Mat<T> inverse(const Mat<T>& a) {
  return solve_dense(a, Mat<T>::identity(a.rows));
}

template <class T>
int rank(Mat<T> m) {
  return (int)rref(m, m.cols).size();
}

/// Basis of the right nullspace of A (exact path; empty basis = trivial).
template <class T>
std::vector<std::vector<T>> nullspace(Mat<T> m) {
  int n = m.cols;
  std::vector<int> piv = rref(m, n);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<T>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::vector<T> v(n, T(0));
    v[free] = T(1);
    for (int r = 0; r < (int)piv.size(); ++r) v[piv[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve a (possibly overdetermined) system A x = b requiring consistency and
/// a unique solution; `ok=false` (with reason) otherwise.
template <class T>
std::vector<T> solve_overdetermined(const Mat<T>& a, const std::vector<T>& b,
                                    bool& ok, std::string* reason = nullptr) {
  assert(a.rows == (int)b.size());
  Mat<T> aug(a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[i];
  }
  std::vector<int> piv = rref(aug, a.cols);
  // consistency: no row of the form [0 ... 0 | nonzero]
  for (int r = (int)piv.size(); r < aug.rows; ++r) {
    if (!is_zero(aug.at(r, a.cols))) {
      ok = false;
      if (reason) *reason = "inconsistent system";
      return {};
    }
  }
  if ((int)piv.size() != a.cols) {
    ok = false;
    if (reason) *reason = "rank-deficient system (solution not unique)";
    return {};
  }
  ok = true;
  std::vector<T> x(a.cols);
  for (int r = 0; r < a.cols; ++r) x[piv[r]] = aug.at(r, a.cols);
  return x;
}

}  // namespace fraquad

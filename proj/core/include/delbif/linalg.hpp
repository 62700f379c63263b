#pragma once

// Small dense linear algebra over an exact field (mpq_class) or double.
// Everything here is sized by the ambient dimension, so O(n^3) solves and
// O(2^n n) determinant expansions are fine.

#include <cstddef>
#include <optional>
#include <vector>

namespace delbif::linalg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Determinant by Gaussian elimination with (for doubles) partial pivoting.
/// Exact when T is a rational type.
template <class T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      T f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return det;
}

/// Solve A x = b for square A.  Returns nullopt when A is singular.
template <class T>
std::optional<std::vector<T>> solve(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      T f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Solution set of a (possibly rectangular, possibly rank-deficient)
/// system A x = b: a particular solution plus a null-space basis.
template <class T>
struct AffineSolution {
  bool consistent = false;
  std::vector<T> particular;
  std::vector<std::vector<T>> null_basis;
};

template <class T>
AffineSolution<T> affine_solve(Matrix<T> a, std::vector<T> b,
                               std::size_t nvars) {
  AffineSolution<T> out;
  const std::size_t nrows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nvars && row < nrows; ++col) {
    std::size_t pr = row;
    while (pr < nrows && a[pr][col] == 0) ++pr;
    if (pr == nrows) continue;
    if (pr != row) {
      std::swap(a[pr], a[row]);
      std::swap(b[pr], b[row]);
    }
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      T f = a[r][col] / a[row][col];
      for (std::size_t k = col; k < nvars; ++k) a[r][k] -= f * a[row][k];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < nrows; ++r)
    if (b[r] != 0) return out;  // inconsistent
  out.consistent = true;
  out.particular.assign(nvars, T(0));
  std::vector<bool> is_pivot(nvars, false);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    is_pivot[pivot_col[i]] = true;
    out.particular[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  }
  for (std::size_t col = 0; col < nvars; ++col) {
    if (is_pivot[col]) continue;
    std::vector<T> v(nvars, T(0));
    v[col] = T(1);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -a[i][col] / a[i][pivot_col[i]];
    out.null_basis.push_back(std::move(v));
  }
  return out;
}

/// Determinant and permanent of a companion magnitude matrix computed
/// together by column-subset dynamic programming (Laplace expansion).
/// entry_mag[i][j] must bound both |m[i][j]| and the magnitudes of the
/// operands that produced the entry, so that the permanent dominates the
/// rounding already carried by the entries as well as the roundoff of the
/// expansion itself.
struct FilteredDet {
  double det;
  double magnitude;  // perm(entry_mag)
};

FilteredDet filtered_determinant(const Matrix<double>& m,
                                 const Matrix<double>& entry_mag);

}  // namespace delbif::linalg

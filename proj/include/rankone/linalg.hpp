#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rankone/matrix.hpp"

namespace rankone {

/// Reduced row echelon form plus pivot columns.
template <class S>
struct Echelon {
  Matrix<S> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

// Pivot choice: exact carriers take the first nonzero entry in the column
// (deterministic); float carriers take the largest magnitude.
template <class S>
std::size_t pick_pivot(const Matrix<S>& m, std::size_t col, std::size_t from) {
  using T = scalar_traits<S>;
  std::size_t best = m.rows();
  double best_mag = 0.0;
  for (std::size_t r = from; r < m.rows(); ++r) {
    if (T::is_zero(m(r, col))) continue;
    if constexpr (T::exact) {
      return r;
    } else {
      const double mag = T::magnitude(m(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
  }
  return best;
}

template <class S>
void swap_rows(Matrix<S>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

template <class S>
Echelon<S> row_reduce(Matrix<S> m) {
  using T = scalar_traits<S>;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    const std::size_t p = detail::pick_pivot(m, col, row);
    if (p == m.rows()) continue;
    detail::swap_rows(m, row, p);
    const S inv = T::one() / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || T::is_zero(m(r, col))) continue;
      const S factor = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
  return row_reduce(m).rank();
}

/// Determinant by Gaussian elimination.
template <class S>
S determinant(Matrix<S> m) {
  using T = scalar_traits<S>;
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  S det = T::one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t p = detail::pick_pivot(m, col, col);
    if (p == n) return T::zero();
    if (p != col) {
      detail::swap_rows(m, col, p);
      det = -det;
    }
    det = det * m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (T::is_zero(m(r, col))) continue;
      const S factor = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// Solves m x = rhs for square invertible m.
template <class S>
Vector<S> solve(const Matrix<S>& m, const Vector<S>& rhs) {
  if (!m.square() || m.rows() != rhs.size())
    throw Error(ErrorKind::DimensionMismatch, "solve shape");
  const std::size_t n = m.rows();
  Matrix<S> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivots.back() != n - 1)
    throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  return ech.reduced.column(n);
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = scalar_traits<S>::one();
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1)
    throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  Matrix<S> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
  return out;
}

}  // namespace rankone

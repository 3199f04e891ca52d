#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "rankone/error.hpp"
#include "rankone/scalar_traits.hpp"

namespace rankone {

template <class S>
using Vector = std::vector<S>;

/// Dense row-major matrix.
template <class S>
class Matrix {
  using T = scalar_traits<S>;

 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<S> column(std::size_t j) const {
    Vector<S> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// Converts entry-wise to another carrier (e.g. exact -> float mode).
  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = scalar_traits<U>::from((*this)(i, j));
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (T::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Vector<S> operator*(const Matrix& a, const Vector<S>& v) {
    if (a.cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape");
    Vector<S> out(a.rows_, T::zero());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (!T::is_zero(aik)) out[i] += aik * v[k];
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << T::str(m(i, j));
      os << "]\n";
    }
    return os;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::DimensionMismatch, "matrix sum shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

// Vector helpers. Vectors are plain std::vector so they interoperate with
// spans and ranges.

template <class S>
Vector<S> zero_vector(std::size_t n) {
  return Vector<S>(n, scalar_traits<S>::zero());
}

template <class S>
Vector<S> unit_vector(std::size_t n, std::size_t index) {
  Vector<S> v = zero_vector<S>(n);
  v[index] = scalar_traits<S>::one();
  return v;
}

template <class S>
bool is_zero_vector(const Vector<S>& v) {
  for (const S& x : v)
    if (!scalar_traits<S>::is_zero(x)) return false;
  return true;
}

template <class S>
Vector<S> add(const Vector<S>& a, const Vector<S>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum");
  Vector<S> out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class S>
Vector<S> subtract(const Vector<S>& a, const Vector<S>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference");
  Vector<S> out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class S>
Vector<S> scale(const Vector<S>& v, const S& s) {
  Vector<S> out = v;
  for (S& x : out) x = x * s;
  return out;
}

/// out += s * v
template <class S>
void axpy(Vector<S>& out, const S& s, const Vector<S>& v) {
  if (scalar_traits<S>::is_zero(s)) return;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] += s * v[i];
}

/// b* x = sum_i conj(b_i) x_i
template <class S>
S inner(const Vector<S>& b, const Vector<S>& x) {
  if (b.size() != x.size()) throw Error(ErrorKind::DimensionMismatch, "inner product");
  S acc = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < b.size(); ++i) acc += scalar_traits<S>::conj(b[i]) * x[i];
  return acc;
}

/// x b*, the rank-one matrix with entries x_i conj(b_j).
template <class S>
Matrix<S> outer(const Vector<S>& x, const Vector<S>& b) {
  Matrix<S> out(x.size(), b.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = x[i] * scalar_traits<S>::conj(b[j]);
  return out;
}

template <class S>
Matrix<S> shifted(const Matrix<S>& m, const S& shift) {
  Matrix<S> out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= shift;
  return out;
}

template <class S>
double norm2(const Vector<S>& v) {
  double acc = 0.0;
  for (const S& x : v) {
    const double a = scalar_traits<S>::magnitude(x);
    acc += a * a;
  }
  return std::sqrt(acc);
}

template <class S>
double frobenius_norm(const Matrix<S>& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double a = scalar_traits<S>::magnitude(m(i, j));
      acc += a * a;
    }
  return std::sqrt(acc);
}

template <class U, class S>
Vector<U> cast_vector(const Vector<S>& v) {
  Vector<U> out;
  out.reserve(v.size());
  for (const S& x : v) out.push_back(scalar_traits<U>::from(x));
  return out;
}

}  // namespace rankone

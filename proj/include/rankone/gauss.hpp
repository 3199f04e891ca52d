#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>

#include "rankone/rational.hpp"

namespace rankone {

/// Exact complex number with rational real and imaginary parts. This is the
/// field every exact computation in the library runs over.
class GaussScalar {
 public:
  GaussScalar() = default;
  GaussScalar(int re) : re_(re) {}   // NOLINT(google-explicit-constructor)
  GaussScalar(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussScalar(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussScalar i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussScalar conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussScalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    const Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  /// Exact square root in Q(i) when one exists. The returned root has
  /// nonnegative real part (nonnegative imaginary part when purely imaginary).
  std::optional<GaussScalar> sqrt() const {
    if (im_.is_zero()) {
      if (re_.sign() >= 0) {
        if (auto r = re_.sqrt()) return GaussScalar(*r);
        return std::nullopt;
      }
      if (auto r = (-re_).sqrt()) return GaussScalar(Rational(0), *r);
      return std::nullopt;
    }
    auto modulus = norm().sqrt();
    if (!modulus) return std::nullopt;
    auto x = ((re_ + *modulus) / Rational(2)).sqrt();
    if (!x || x->is_zero()) return std::nullopt;
    return GaussScalar(*x, im_ / (Rational(2) * *x));
  }

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  std::string to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string out = re_.is_zero() ? std::string() : re_.to_string();
    if (im_.sign() > 0 && !re_.is_zero()) out += "+";
    if (im_ == Rational(-1)) return out + "-i";
    if (im_ == Rational(1)) return out + "i";
    return out + im_.to_string() + "*i";
  }

  GaussScalar operator-() const { return {-re_, -im_}; }
  GaussScalar& operator+=(const GaussScalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussScalar& operator-=(const GaussScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussScalar& operator*=(const GaussScalar& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussScalar& operator/=(const GaussScalar& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    if (o.im_.is_zero()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
  friend GaussScalar operator-(GaussScalar a, const GaussScalar& b) { return a -= b; }
  friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
  friend GaussScalar operator/(GaussScalar a, const GaussScalar& b) { return a /= b; }

  friend bool operator==(const GaussScalar& a, const GaussScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Lexicographic (re, im); used only to give root lists a stable order.
  friend bool lex_less(const GaussScalar& a, const GaussScalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussScalar& z) { return os << z.to_string(); }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace rankone

#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rankone/error.hpp"
#include "rankone/scalar_traits.hpp"

namespace rankone {

/// Dense univariate polynomial, coefficient index = degree. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
template <class S>
class BasicPoly {
  using T = scalar_traits<S>;

 public:
  BasicPoly() = default;
  explicit BasicPoly(std::vector<S> coefficients) : c_(std::move(coefficients)) { trim(); }
  BasicPoly(std::initializer_list<S> coefficients) : c_(coefficients) { trim(); }

  static BasicPoly constant(S value) { return BasicPoly(std::vector<S>{std::move(value)}); }

  /// t - root
  static BasicPoly linear(const S& root) { return BasicPoly(std::vector<S>{-root, T::one()}); }

  /// (t - root)^k
  static BasicPoly linear_power(const S& root, int k) {
    BasicPoly out = constant(T::one());
    const BasicPoly factor = linear(root);
    for (int i = 0; i < k; ++i) out = out * factor;
    return out;
  }

  /// Expands sum_i shifted[i] * (t - center)^i into the monomial basis.
  static BasicPoly from_shifted(const std::vector<S>& shifted, const S& center) {
    BasicPoly out;
    BasicPoly power = constant(T::one());
    const BasicPoly factor = linear(center);
    for (const S& c : shifted) {
      out = out + power * c;
      power = power * factor;
    }
    return out;
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<S>& coefficients() const { return c_; }
  /// Coefficient of t^i; zero beyond the degree.
  S operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T::zero(); }
  const S& leading() const { return c_.back(); }

  S operator()(const S& v) const {
    S acc = T::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  BasicPoly derivative() const {
    std::vector<S> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * S(static_cast<int>(i)));
    return BasicPoly(std::move(d));
  }

  BasicPoly monic() const {
    if (is_zero()) return *this;
    const S lead = leading();
    std::vector<S> out = c_;
    for (S& c : out) c = c / lead;
    return BasicPoly(std::move(out));
  }

  /// Coefficients of p in powers of (t - center): p(t) = sum_i a_i (t-center)^i.
  std::vector<S> shifted_coefficients(const S& center) const {
    std::vector<S> work = c_, out;
    while (!work.empty()) {
      // One synthetic-division pass; the remainder is the next coefficient.
      S carry = T::zero();
      std::vector<S> quotient(work.size() - 1);
      for (std::size_t i = work.size(); i-- > 0;) {
        carry = carry * center + work[i];
        if (i > 0) quotient[i - 1] = carry;
      }
      out.push_back(carry);
      work = std::move(quotient);
    }
    return out;
  }

  friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) {
    std::vector<S> out(std::max(a.c_.size(), b.c_.size()), T::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return BasicPoly(std::move(out));
  }
  friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return a + b * S(-1); }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, T::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (T::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return BasicPoly(std::move(out));
  }
  friend BasicPoly operator*(const BasicPoly& a, const S& s) {
    std::vector<S> out = a.c_;
    for (S& c : out) c = c * s;
    return BasicPoly(std::move(out));
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const BasicPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.c_.size(); i-- > 0;) {
      if (T::is_zero(p.c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << T::str(p.c_[i]) << ")";
      if (i > 0) os << "t^" << i;
    }
    return os;
  }

 private:
  void trim() {
    while (!c_.empty() && T::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<S> c_;
};

/// p / (t - root)^k by k synthetic divisions; each remainder must vanish.
template <class S>
BasicPoly<S> poly_divide_linear(const BasicPoly<S>& p, const S& root, int k) {
  using T = scalar_traits<S>;
  std::vector<S> work = p.coefficients();
  for (int step = 0; step < k; ++step) {
    if (work.empty()) return {};
    S carry = T::zero();
    std::vector<S> quotient(work.size() - 1);
    for (std::size_t i = work.size(); i-- > 0;) {
      carry = carry * root + work[i];
      if (i > 0) quotient[i - 1] = carry;
    }
    if (!T::is_zero(carry))
      throw Error(ErrorKind::NotDivisible, "(t - " + T::str(root) + ") does not divide at step " +
                                               std::to_string(step + 1) + ", remainder " +
                                               T::str(carry));
    work = std::move(quotient);
  }
  return BasicPoly<S>(std::move(work));
}

/// Euclidean division over a field: returns {quotient, remainder}.
template <class S>
std::pair<BasicPoly<S>, BasicPoly<S>> poly_divmod(const BasicPoly<S>& a, const BasicPoly<S>& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  std::vector<S> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {BasicPoly<S>{}, a};
  std::vector<S> quot(static_cast<std::size_t>(a.degree() - db + 1), scalar_traits<S>::zero());
  for (int i = a.degree(); i >= db; --i) {
    const S factor = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = factor;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= factor * b[static_cast<std::size_t>(j)];
  }
  return {BasicPoly<S>(std::move(quot)), BasicPoly<S>(std::move(rem))};
}

/// Monic gcd (exact carriers only).
template <class S>
BasicPoly<S> poly_gcd(BasicPoly<S> a, BasicPoly<S> b) {
  static_assert(scalar_traits<S>::exact, "gcd is only meaningful in exact arithmetic");
  while (!b.is_zero()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using Poly = BasicPoly<GaussScalar>;

}  // namespace rankone

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "rankone/error.hpp"

namespace rankone {

/// Arbitrary-precision rational in canonical form (den > 0, gcd = 1).
/// Thin value wrapper around GMP's mpq_class; every mutating path
/// canonicalizes.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    value_.canonicalize();
  }
  Rational(const mpz_class& num, const mpz_class& den) : value_(num, den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p/q" or "p" (optional sign on p, q > 0 after canonicalization).
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return ParseError("rational", "cannot parse '" + s + "' as p/q"); };
    if (s.empty()) throw bad();
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& part, bool allow_sign) {
      if (part.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
      if (i == part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw bad();
    return Rational(n, d);
  }

  std::string to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  const mpz_class& num() const { return value_.get_num(); }
  const mpz_class& den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// Exact square root when num and den are both perfect squares.
  std::optional<Rational> sqrt() const {
    if (sign() < 0) return std::nullopt;
    if (!mpz_perfect_square_p(num().get_mpz_t()) || !mpz_perfect_square_p(den().get_mpz_t()))
      return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), den().get_mpz_t());
    return Rational(n, d);
  }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class value_;
};

}  // namespace rankone

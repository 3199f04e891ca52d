#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "rankone/gauss.hpp"

namespace rankone {

// Every templated algorithm in the library runs over one of two carriers:
// GaussScalar (exact) or std::complex<double> (float mode).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<GaussScalar> {
  static constexpr bool exact = true;
  static GaussScalar zero() { return {}; }
  static GaussScalar one() { return GaussScalar(1); }
  static GaussScalar from(const GaussScalar& z) { return z; }
  static GaussScalar conj(const GaussScalar& z) { return z.conj(); }
  static bool is_zero(const GaussScalar& z) { return z.is_zero(); }
  static double magnitude(const GaussScalar& z) { return std::abs(z.to_complex()); }
  static std::complex<double> to_complex(const GaussScalar& z) { return z.to_complex(); }
  static std::string str(const GaussScalar& z) { return z.to_string(); }
};

template <>
struct scalar_traits<std::complex<double>> {
  using S = std::complex<double>;
  static constexpr bool exact = false;
  static S zero() { return {}; }
  static S one() { return {1.0, 0.0}; }
  static S from(const GaussScalar& z) { return z.to_complex(); }
  static S conj(const S& z) { return std::conj(z); }
  // Float mode only treats an exactly vanishing denominator as degenerate.
  static bool is_zero(const S& z) { return z == S{}; }
  static double magnitude(const S& z) { return std::abs(z); }
  static S to_complex(const S& z) { return z; }
  static std::string str(const S& z) {
    return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
  }
};

template <class S>
concept Scalar = requires { scalar_traits<S>::exact; };

}  // namespace rankone

#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "rankone/poly.hpp"

namespace rankone {

enum class RootMode { exact, numeric };

/// One root of a polynomial. `exact` is set in exact mode; `value` is always
/// filled (the float image of the exact root in exact mode).
struct Root {
  std::optional<GaussScalar> exact;
  std::complex<double> value;
  int multiplicity = 1;

  friend bool operator==(const Root&, const Root&) = default;
};

namespace detail {

inline mpz_class lcm_of_denominators(const Poly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coefficients()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().den().get_mpz_t());
  }
  return l;
}

// Positive divisors by trial division; empty when |a| is too large to factor
// this way.
inline std::vector<mpz_class> small_divisors(mpz_class a) {
  a = abs(a);
  std::vector<mpz_class> out;
  if (a == 0 || a > mpz_class("1000000000000")) return out;
  const unsigned long long v = std::stoull(a.get_str());
  std::vector<mpz_class> high;
  for (unsigned long long d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.emplace_back(std::to_string(d));
    if (d * d != v) high.emplace_back(std::to_string(v / d));
  }
  out.insert(out.end(), high.rbegin(), high.rend());
  return out;
}

// Cheap float screen that can only reject candidates whose value is far from
// zero relative to the rounding budget of the evaluation.
inline bool plausibly_root(const Poly& p, double r) {
  double value = 0.0, budget = 0.0;
  for (std::size_t i = p.coefficients().size(); i-- > 0;) {
    const double c = p.coefficients()[i].re().to_double();
    value = value * r + c;
    budget = budget * std::abs(r) + std::abs(c);
  }
  return std::abs(value) <= 1e-9 * budget + 1e-300;
}

inline void take_root(std::vector<Root>& roots, Poly& work, const GaussScalar& root) {
  int mult = 0;
  while (work.degree() >= 1 && work(root).is_zero()) {
    work = poly_divide_linear(work, root, 1);
    ++mult;
  }
  if (mult == 0) return;
  for (auto& r : roots)
    if (*r.exact == root) {
      r.multiplicity += mult;
      return;
    }
  roots.push_back({root, root.to_complex(), mult});
}

// Rational-root search for polynomials with rational coefficients: every
// rational root is +-p/q with p | a0 and q | a_d of the integer-scaled poly.
inline void peel_rational_roots(std::vector<Root>& roots, Poly& work) {
  constexpr std::size_t kMaxCandidates = 100000;
  for (const auto& c : work.coefficients())
    if (!c.is_real()) return;
  take_root(roots, work, GaussScalar(0));
  if (work.degree() < 1) return;
  const mpz_class scale = lcm_of_denominators(work);
  const mpz_class a0 = (work[0].re() * Rational(scale, 1)).num();
  const mpz_class ad = (work.leading().re() * Rational(scale, 1)).num();
  const auto ps = small_divisors(a0);
  const auto qs = small_divisors(ad);
  if (ps.empty() || qs.empty() || ps.size() * qs.size() > kMaxCandidates) return;
  for (const auto& q : qs)
    for (const auto& p : ps) {
      if (work.degree() < 1) return;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      if (g != 1) continue;
      for (int sign : {1, -1}) {
        const Rational r(sign * p, q);
        if (!plausibly_root(work, r.to_double())) continue;
        take_root(roots, work, GaussScalar(r));
      }
    }
}

}  // namespace detail

/// Exact roots over the Gaussian rationals. `hints` are candidate roots tried
/// first (e.g. known eigenvalues). Throws ExactModeUnavailable when the part
/// left after hints and rational-root search has degree > 2 or an irrational
/// quadratic.
inline std::vector<Root> poly_roots_exact(const Poly& p, std::span<const GaussScalar> hints = {}) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<Root> roots;
  Poly work = p;
  for (const auto& h : hints) detail::take_root(roots, work, h);
  if (work.degree() > 2) detail::peel_rational_roots(roots, work);
  if (work.degree() == 1) {
    detail::take_root(roots, work, -work[0] / work[1]);
  } else if (work.degree() == 2) {
    const GaussScalar a = work[2], b = work[1], c = work[0];
    const auto s = (b * b - GaussScalar(4) * a * c).sqrt();
    if (!s)
      throw Error(ErrorKind::ExactModeUnavailable,
                  "quadratic factor " + [&] {
                    std::ostringstream os;
                    os << work;
                    return os.str();
                  }() + " has no Gaussian-rational roots");
    const GaussScalar two_a = GaussScalar(2) * a;
    detail::take_root(roots, work, (-b + *s) / two_a);
    detail::take_root(roots, work, (-b - *s) / two_a);
  } else if (work.degree() > 2) {
    throw Error(ErrorKind::ExactModeUnavailable,
                "degree " + std::to_string(work.degree()) + " factor left after rational-root search");
  }
  std::sort(roots.begin(), roots.end(),
            [](const Root& x, const Root& y) { return lex_less(*x.exact, *y.exact); });
  return roots;
}

/// Float roots as eigenvalues of the companion matrix, each reported with
/// multiplicity 1, followed by at most a few Newton steps that are kept only
/// if they shrink |p|. For monic p of degree <= 12 with coefficients bounded
/// by 1e3 the residual satisfies |p(root)| <= 1e-8 * max|c_i|.
template <class S>
std::vector<Root> poly_roots_numeric(const BasicPoly<S>& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  using C = std::complex<double>;
  std::vector<C> c;
  for (const auto& x : p.coefficients()) c.push_back(scalar_traits<S>::to_complex(x));
  const int d = p.degree();
  std::vector<Root> roots;
  if (d < 1) return roots;
  const C lead = c.back();
  for (C& x : c) x /= lead;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  auto eval = [&](C z, C& dz) {
    C v = 0.0;
    dz = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
      dz = dz * z + v;
      v = v * z + c[i];
    }
    return v;
  };
  for (int i = 0; i < d; ++i) {
    C z = solver.eigenvalues()[i];
    for (int step = 0; step < 3; ++step) {
      C dz;
      const C v = eval(z, dz);
      if (dz == C{}) break;
      const C next = z - v / dz;
      C unused;
      if (std::abs(eval(next, unused)) >= std::abs(v)) break;
      z = next;
    }
    roots.push_back({std::nullopt, z, 1});
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return roots;
}

inline std::vector<Root> poly_roots(const Poly& p, RootMode mode, std::span<const GaussScalar> hints = {}) {
  return mode == RootMode::exact ? poly_roots_exact(p, hints) : poly_roots_numeric(p);
}

}  // namespace rankone

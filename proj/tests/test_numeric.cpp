#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "rankone/roots.hpp"
#include "test_support.hpp"

using namespace rankone;
using namespace rankone::testing;

TEST(Rational, Canonicalizes) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(8, 4).to_string(), "2");
  EXPECT_EQ(Rational::parse("-10/5"), Rational(-2));
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.5", "1/-2", "--1"})
    EXPECT_THROW(Rational::parse(bad), ParseError) << bad;
  EXPECT_EQ(Rational::parse("+7/21"), Rational(1, 3));
  EXPECT_EQ(Rational::parse("-0/5"), Rational(0));
}

TEST(Rational, CanonicalFormHoldsAfterArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    for (const Rational& r : {a + b, a - b, a * b, b.is_zero() ? a : a / b}) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
      EXPECT_GT(r.den(), 0);
      EXPECT_EQ(g, 1);
      EXPECT_EQ(Rational::parse(r.to_string()), r);
    }
  }
}

TEST(GaussScalar, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const G a = random_entry(rng, true), b = random_entry(rng, true), c = random_entry(rng, true);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), G(1));
    }
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
  }
  EXPECT_THROW(G(0).inverse(), Error);
}

TEST(GaussScalar, ExactSquareRoots) {
  EXPECT_EQ(*q(9, 4).sqrt(), q(3, 2));
  EXPECT_EQ(*q(-4).sqrt(), gi(0, 2));
  EXPECT_EQ(*gi(3, 4).sqrt(), gi(2, 1));  // (2+i)^2 = 3+4i
  EXPECT_EQ(*gi(0, 2).sqrt(), gi(1, 1));
  EXPECT_FALSE(q(2).sqrt().has_value());
  EXPECT_FALSE(gi(1, 1).sqrt().has_value());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const G z = random_entry(rng, true);
    const auto root = (z * z).sqrt();
    ASSERT_TRUE(root.has_value());
    EXPECT_EQ(*root * *root, z * z);
  }
}

TEST(Poly, EvalExamples) {
  const Poly t2_minus_1{q(-1), q(0), q(1)};
  EXPECT_EQ(t2_minus_1(q(1)), q(0));
  const Poly f = Poly::from_shifted({q(-3), q(2), q(1)}, q(2));  // (t-2)^2 + 2(t-2) - 3
  EXPECT_EQ(f(q(3)), q(0));
  // Hand expansion: t^2 - 2t - 3.
  EXPECT_EQ(f, Poly({q(-3), q(-2), q(1)}));
  EXPECT_EQ(f(q(0)), q(-3));
}

TEST(Poly, DegreeIsAdditive) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    std::vector<G> a, b;
    const int da = static_cast<int>(rng() % 5), db = static_cast<int>(rng() % 5);
    for (int k = 0; k <= da; ++k) a.push_back(random_entry(rng, true));
    for (int k = 0; k <= db; ++k) b.push_back(random_entry(rng, true));
    const Poly p(a), r(b);
    if (p.is_zero() || r.is_zero()) continue;
    EXPECT_EQ((p * r).degree(), p.degree() + r.degree());
  }
}

TEST(Poly, ShiftedCoefficientsRoundTrip) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    std::vector<G> c;
    for (int k = 0; k < 5; ++k) c.push_back(random_entry(rng, true));
    const Poly p(c);
    const G center = random_entry(rng, true);
    EXPECT_EQ(Poly::from_shifted(p.shifted_coefficients(center), center), p);
  }
}

TEST(PolyDivideLinear, Examples) {
  const Poly cube = Poly::linear_power(q(2), 3);
  EXPECT_EQ(poly_divide_linear(cube, q(2), 2), Poly::linear(q(2)));

  // Both sides expanded by multiplication only.
  const Poly big = Poly::linear_power(q(2), 9) * Poly::linear_power(q(1), 2);
  const Poly expected = Poly::linear_power(q(2), 7) * Poly::linear_power(q(1), 2);
  EXPECT_EQ(poly_divide_linear(big, q(2), 2), expected);

  const Poly t2_plus_1{q(1), q(0), q(1)};
  try {
    poly_divide_linear(t2_plus_1, q(1), 1);
    FAIL() << "expected NotDivisible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDivisible);
  }
}

TEST(PolyDivideLinear, QuotientTimesFactorRestoresInput) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    std::vector<G> c;
    for (int k = 0; k < 4; ++k) c.push_back(random_entry(rng, true));
    const G root = random_entry(rng, true);
    const int k = static_cast<int>(rng() % 4);
    const Poly p = Poly(c) * Poly::linear_power(root, k);
    EXPECT_EQ(poly_divide_linear(p, root, k) * Poly::linear_power(root, k), p);
  }
}

TEST(PolyRoots, ExactExamples) {
  const auto f = poly_roots_exact(Poly::from_shifted({q(-3), q(2), q(1)}, q(2)));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(*f[0].exact, q(-1));
  EXPECT_EQ(*f[1].exact, q(3));
  EXPECT_EQ(f[0].multiplicity + f[1].multiplicity, 2);

  // (t - lambda) - c with lambda = 5, c = 2.
  const auto brauer = poly_roots_exact(Poly::linear(q(5)) - Poly::constant(q(2)));
  ASSERT_EQ(brauer.size(), 1u);
  EXPECT_EQ(*brauer[0].exact, q(7));

  const auto t2 = poly_roots_exact(Poly{q(0), q(0), q(1)});
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(*t2[0].exact, q(0));
  EXPECT_EQ(t2[0].multiplicity, 2);
}

TEST(PolyRoots, ErrorPaths) {
  try {
    poly_roots_exact(Poly{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
  }
  // t^3 - 2 has no rational roots.
  try {
    poly_roots_exact(Poly{q(-2), q(0), q(0), q(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ExactModeUnavailable);
  }
  // t^2 - 2: irrational quadratic.
  EXPECT_THROW(poly_roots_exact(Poly{q(-2), q(0), q(1)}), Error);
}

TEST(PolyRoots, ExactRootsEvaluateToZero) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    // Rational roots times a conjugate pair: real coefficients throughout.
    Poly p = Poly::constant(q(static_cast<long>(rng() % 5) + 1));
    const int count = static_cast<int>(rng() % 5);
    for (int k = 0; k < count; ++k)
      p = p * Poly::linear(G(Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1)));
    const G a = random_entry(rng, true);
    p = p * (Poly::linear(a) * Poly::linear(a.conj()));
    std::vector<Root> roots;
    ASSERT_NO_THROW(roots = poly_roots_exact(p)) << p;
    int total = 0;
    for (const auto& r : roots) {
      EXPECT_TRUE(p(*r.exact).is_zero());
      total += r.multiplicity;
    }
    EXPECT_EQ(total, p.degree());
  }
}

namespace {

using CPoly = BasicPoly<std::complex<double>>;

// Monic, degree 1..12, coefficients bounded by 1e3 in magnitude.
std::vector<CPoly> bounded_monic_polys() {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coeff(-1000, 1000), degree(1, 12);
  std::vector<CPoly> out;
  for (int i = 0; i < 200; ++i) {
    const int d = degree(rng);
    std::vector<std::complex<double>> c;
    for (int k = 0; k < d; ++k) c.emplace_back(coeff(rng), k % 3 == 0 ? coeff(rng) : 0);
    c.emplace_back(1.0, 0.0);
    out.emplace_back(c);
  }
  out.push_back(CPoly::linear_power({1.0, 0.0}, 12));
  return out;
}

double max_coefficient(const CPoly& p) {
  double m = 0.0;
  for (const auto& x : p.coefficients()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

// Absolute residual bound |p(root)| <= 1e-8 max|c|. Roots of magnitude near
// 1e3 put this below what even the correctly rounded root achieves, so the
// bound fails for such inputs; see the rounding-floor test below.
TEST(PolyRoots, NumericResidualBound) {
  int roots = 0, violations = 0;
  double worst = 0.0;
  for (const auto& p : bounded_monic_polys()) {
    const auto found = poly_roots_numeric(p);
    ASSERT_EQ(static_cast<int>(found.size()), p.degree());
    for (const auto& r : found) {
      ++roots;
      const double ratio = std::abs(p(r.value)) / (1e-8 * max_coefficient(p));
      worst = std::max(worst, ratio);
      if (ratio > 1.0) ++violations;
    }
  }
  EXPECT_EQ(violations, 0) << violations << " of " << roots << " roots exceed the bound; worst ratio " << worst;
}

// Each residual is within a small multiple of the residual that rounding the
// exact root to double precision forces, |p'(root)| |root| eps / 2, plus the
// Horner evaluation error.
TEST(PolyRoots, NumericResidualNearRoundingFloor) {
  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& p : bounded_monic_polys()) {
    const auto dp = p.derivative();
    for (const auto& r : poly_roots_numeric(p)) {
      const double z = std::abs(r.value);
      double horner = 0.0;
      for (std::size_t i = p.coefficients().size(); i-- > 0;) horner = horner * z + std::abs(p[i]);
      const double floor = std::abs(dp(r.value)) * z * eps / 2 + p.degree() * eps * horner;
      EXPECT_LE(std::abs(p(r.value)), 1e-8 * max_coefficient(p) + 64 * floor) << "degree " << p.degree();
    }
  }
}

TEST(PolyRoots, NumericAgreesWithExactOnExample) {
  const auto roots = poly_roots(Poly::from_shifted({q(-3), q(2), q(1)}, q(2)), RootMode::numeric);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0].value.real(), -1.0, 1e-12);
  EXPECT_NEAR(roots[1].value.real(), 3.0, 1e-12);
  EXPECT_FALSE(roots[0].exact.has_value());
}

TEST(PolyGcd, CommonFactor) {
  const Poly a = Poly::linear_power(q(2), 3) * Poly::linear(q(5));
  const Poly b = Poly::linear_power(q(2), 2) * Poly::linear(gi(0, 1));
  EXPECT_EQ(poly_gcd(a, b), Poly::linear_power(q(2), 2));
}

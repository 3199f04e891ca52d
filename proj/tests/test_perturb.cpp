#include <gtest/gtest.h>

#include "rankone/worked_example.hpp"
#include "test_support.hpp"

using namespace rankone;
using namespace rankone::testing;

namespace {

// Single Jordan block of size r at lambda, source rank m, given b.
PerturbationProblem single_block(G lambda, int r, int m, Vector<G> b) {
  PerturbationProblem p;
  p.spec.blocks = {{lambda, r}};
  p.source = {0, m};
  p.b = std::move(b);
  return p;
}

}  // namespace

TEST(DetRank1Update, Examples) {
  const auto i2 = Matrix<G>::identity(2);
  const auto e1 = unit_vector<G>(2, 0), e2 = unit_vector<G>(2, 1);
  EXPECT_EQ(det_rank1_update(i2, e1, e1), q(2));
  EXPECT_EQ(det_rank1_update(i2, vec({q(3, 2), gi(1, -4)}), zero_vector<G>(2)), q(1));
  const auto a = assemble_matrix(JordanSpec{{{q(2), 2}}, std::nullopt});
  EXPECT_EQ(det_rank1_update(a, e1, e2), q(4));
  try {
    det_rank1_update(Matrix<G>(2, 2), e1, e2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
}

TEST(DetRank1Update, AgreesWithDirectDeterminant) {
  std::mt19937_64 rng(211);
  int checked = 0;
  while (checked < 500) {
    const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 6)(rng));
    Matrix<G> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = random_entry(rng, true);
    if (determinant_direct(a).is_zero()) continue;
    Vector<G> x, b;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(random_entry(rng, true));
      b.push_back(random_entry(rng, true));
    }
    EXPECT_EQ(det_rank1_update(a, x, b), determinant_direct(a + outer(x, b))) << "case " << checked;
    ++checked;
  }
}

TEST(ResolventAction, Examples) {
  const auto one = single_block(q(2), 1, 1, vec({q(1)}));
  EXPECT_EQ(resolvent_action(one, q(3)), vec({q(1)}));

  const auto two = single_block(q(2), 2, 2, vec({q(0), q(1)}));
  const auto a = assemble_matrix(two.spec);
  const auto x1 = unit_vector<G>(2, 0), x2 = unit_vector<G>(2, 1);
  const auto at3 = resolvent_action(two, q(3));
  EXPECT_EQ(at3, add(x1, x2));
  EXPECT_EQ(shifted(a, q(3)) * at3, scale(x2, q(-1)));  // (A - 3I) r = -x_2

  const auto at4 = resolvent_action(two, q(4));
  EXPECT_EQ(at4, add(scale(x1, q(1, 4)), scale(x2, q(1, 2))));
  EXPECT_EQ(scale(shifted(a, q(4)) * at4, q(-1)), x2);
}

TEST(ResolventAction, SpectrumCollision) {
  const auto p = worked_example_problem();
  for (const G t : {q(2), q(1)}) {
    try {
      resolvent_action(p, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::SpectrumCollision);
    }
  }
}

TEST(ResolventAction, InvertsShiftedMatrix) {
  for_random_problems(223, 200, {}, [](const PerturbationProblem& p, std::mt19937_64& rng) {
    const auto inst = instantiate<G>(p);
    G t = random_entry(rng, true);
    for (const auto& e : inst.base.eigenvalues)
      if (t == e) t = t + q(1, 7);
    for (const auto& e : inst.base.eigenvalues)
      if (t == e) return;
    const auto r = resolvent_action(inst, t);
    // (tI - A) r = x_m
    EXPECT_EQ(scale(shifted(inst.matrix(), t) * r, q(-1)), inst.x(inst.m()));
  });
}

TEST(UpdateCharFactor, Examples) {
  const auto f = update_char_factor(worked_example_problem());
  EXPECT_EQ(f.f, Poly::from_shifted({q(-3), q(2), q(1)}, q(2)));
  EXPECT_EQ(f.moments, (std::vector<G>{q(3), q(-2)}));
  EXPECT_EQ(f.center, q(2));

  const auto m1 = update_char_factor(single_block(gi(1, 1), 2, 1, vec({q(5, 2), q(9)})));
  EXPECT_EQ(m1.f, Poly::linear(gi(1, 1)) - Poly::constant(q(5, 2)));

  const auto zero = update_char_factor(single_block(q(-3), 4, 3, zero_vector<G>(4)));
  EXPECT_EQ(zero.f, Poly::linear_power(q(-3), 3));
}

TEST(UpdateCharFactor, ShiftedCoefficientsAreNegatedMoments) {
  for_random_problems(227, 300, {}, [](const PerturbationProblem& p, std::mt19937_64&) {
    const auto inst = instantiate<G>(p);
    const auto factor = update_char_factor(inst);
    ASSERT_EQ(factor.f.degree(), inst.m());
    EXPECT_EQ(factor.f.leading(), q(1));
    const auto shifted_c = factor.f.shifted_coefficients(inst.lambda());
    for (int i = 0; i < inst.m(); ++i) EXPECT_EQ(shifted_c[static_cast<std::size_t>(i)], -inner(inst.b, inst.x(i + 1)));
  });
}

TEST(ChangedEigenvalueBound, Examples) {
  EXPECT_EQ(changed_eigenvalue_bound(worked_example_problem()), 2);
  // b orthogonal to x_1, x_2 (e_1, e_2) in J_3
  EXPECT_EQ(changed_eigenvalue_bound(single_block(q(1), 3, 2, vec({q(0), q(0), q(4)}))), 0);
  EXPECT_EQ(changed_eigenvalue_bound(single_block(q(1), 3, 2, vec({q(0), q(6), q(4)}))), 1);
}

TEST(NewEigenvalues, Examples) {
  const auto roots = new_eigenvalues(worked_example_problem(), RootMode::exact);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(*roots[0].exact, q(-1));
  EXPECT_EQ(*roots[1].exact, q(3));

  const auto brauer = new_eigenvalues(single_block(q(5), 1, 1, vec({q(2)})), RootMode::exact);
  ASSERT_EQ(brauer.size(), 1u);
  EXPECT_EQ(*brauer[0].exact, q(7));

  const G c = gi(3, -1);
  const auto pair = new_eigenvalues(single_block(q(2), 2, 2, vec({q(0), c.conj()})), RootMode::exact);
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_EQ(*pair[0].exact, q(2));
  EXPECT_EQ(*pair[1].exact, q(2) + c);

  const auto numeric = new_eigenvalues(worked_example_problem(), RootMode::numeric);
  ASSERT_EQ(numeric.size(), 2u);
  EXPECT_NEAR(numeric[0].value.real(), -1.0, 1e-12);
  EXPECT_NEAR(numeric[1].value.real(), 3.0, 1e-12);
}

TEST(UpdatedCharPoly, Examples) {
  const auto p = worked_example_problem();
  const Poly expected = Poly::linear(q(3)) * Poly::linear(q(-1)) * Poly::linear_power(q(2), 7) *
                        Poly::linear_power(q(1), 2);
  EXPECT_EQ(updated_char_poly(p), expected);
  EXPECT_EQ(char_poly_direct(apply_update(p)), expected);

  auto zero_b = p;
  zero_b.b = zero_vector<G>(11);
  EXPECT_EQ(updated_char_poly(zero_b), spec_char_poly(p.spec));

  EXPECT_EQ(updated_char_poly(single_block(q(4), 1, 1, vec({q(-1, 3)}))), Poly::linear(q(4) + q(-1, 3)));
}

TEST(UpdatedCharPoly, MatchesDirectCharacteristicPolynomial) {
  RandomProblemOptions opt;
  opt.n_max = 8;
  for_random_problems(229, 300, opt, [](const PerturbationProblem& p, std::mt19937_64&) {
    EXPECT_EQ(updated_char_poly(p), char_poly_direct(apply_update(p)));
  });
}

TEST(UpdatedCharPoly, OrthogonalUpdatePreservesSpectrumAndChain) {
  for_random_problems(233, 100, {}, [](PerturbationProblem p, std::mt19937_64& rng) {
    p.b = random_orthogonal_b(rng, p, true);
    const auto inst = instantiate<G>(p);
    for (int j = 1; j <= inst.m(); ++j) ASSERT_TRUE(inner(inst.b, inst.x(j)).is_zero());
    EXPECT_EQ(changed_eigenvalue_bound(inst), 0);
    EXPECT_EQ(updated_char_poly(p), spec_char_poly(p.spec));
    const auto updated = apply_update(inst);
    Vector<G> prev = zero_vector<G>(inst.dimension());
    for (int j = 1; j <= inst.m(); ++j) {
      EXPECT_EQ(updated * inst.x(j), add(scale(inst.x(j), inst.lambda()), prev));
      prev = inst.x(j);
    }
  });
}

TEST(ValidateProblem, FieldNames) {
  auto p = worked_example_problem();
  p.source.rank = 7;
  auto d = validate_problem(p);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].field, "source.rank");
  p.source = {5, 1};
  EXPECT_EQ(validate_problem(p)[0].field, "source.block");
  p = worked_example_problem();
  p.b.pop_back();
  EXPECT_EQ(validate_problem(p)[0].field, "b");
  EXPECT_THROW(instantiate<G>(p), Error);
}

#pragma once

#include <cstdint>
#include <random>

#include "rankone/oracle.hpp"

namespace rankone {

struct RandomProblemOptions {
  int n_max = 6;
  int eigenvalue_range = 2;      // integer parts drawn from [-range, range]
  bool complex_values = true;    // allow Gaussian (non-real) eigenvalues and b entries
  bool similarity = true;        // random unimodular similarity instead of I
  int similarity_ops = -1;       // elementary operations; -1 means 2n
  int similarity_multiplier = 2; // multipliers drawn from [-k, k] \ {0}
};

/// Deterministic per-(seed, index) generator so problems can be produced in
/// any order or in parallel.
inline std::mt19937_64 problem_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace detail {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Rational small_rational(std::mt19937_64& rng) {
  return Rational(uniform(rng, -4, 4), uniform(rng, 1, 3));
}

}  // namespace detail

/// Random Gaussian-rational vector entry.
inline GaussScalar random_entry(std::mt19937_64& rng, bool complex_values) {
  Rational re = detail::small_rational(rng);
  Rational im = complex_values && detail::coin(rng, 0.25) ? detail::small_rational(rng) : Rational(0);
  return {re, im};
}

/// Integer matrix with determinant 1: a product of row operations
/// row_i += c row_j.
inline Matrix<GaussScalar> random_unimodular(std::mt19937_64& rng, std::size_t n, int ops, int multiplier) {
  Matrix<GaussScalar> s = Matrix<GaussScalar>::identity(n);
  if (n < 2) return s;
  for (int k = 0; k < ops; ++k) {
    const auto i = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(n) - 1));
    auto j = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(n) - 2));
    if (j >= i) ++j;
    int c = detail::uniform(rng, -multiplier, multiplier - 1);
    if (c >= 0) ++c;
    for (std::size_t col = 0; col < n; ++col) s(i, col) += GaussScalar(c) * s(j, col);
  }
  return s;
}

inline PerturbationProblem random_problem(std::mt19937_64& rng, const RandomProblemOptions& opt) {
  PerturbationProblem p;
  const int n = detail::uniform(rng, 1, opt.n_max);
  int left = n;
  while (left > 0) {
    const int size = detail::uniform(rng, 1, std::min(left, 4));
    Rational re(detail::uniform(rng, -opt.eigenvalue_range, opt.eigenvalue_range));
    Rational im = opt.complex_values && detail::coin(rng, 0.15) ? Rational(detail::uniform(rng, -1, 1)) : Rational(0);
    p.spec.blocks.push_back({GaussScalar(re, im), size});
    left -= size;
  }
  if (opt.similarity) {
    const int ops = opt.similarity_ops >= 0 ? opt.similarity_ops : 2 * n;
    p.spec.similarity = random_unimodular(rng, static_cast<std::size_t>(n), ops, opt.similarity_multiplier);
  }
  const auto block = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(p.spec.blocks.size()) - 1));
  p.source = {block, detail::uniform(rng, 1, p.spec.blocks[block].size)};
  for (int i = 0; i < n; ++i) p.b.push_back(random_entry(rng, opt.complex_values));
  return p;
}

/// Random b with b* x_j = 0 for j = 1..m (falls back to b = 0 when the
/// source chain spans everything).
inline Vector<GaussScalar> random_orthogonal_b(std::mt19937_64& rng, const PerturbationProblem& problem,
                                               bool complex_values) {
  const auto inst = instantiate<GaussScalar>(problem);
  const std::size_t n = inst.dimension();
  // b* x_j = 0  <=>  x_j^T conj(b) = 0, so conj(b) lies in the kernel of X^T.
  Matrix<GaussScalar> xt(static_cast<std::size_t>(inst.m()), n);
  for (int j = 1; j <= inst.m(); ++j) {
    const auto xj = inst.x(j);
    for (std::size_t i = 0; i < n; ++i) xt(static_cast<std::size_t>(j - 1), i) = xj[i];
  }
  Vector<GaussScalar> c = zero_vector<GaussScalar>(n);
  for (const auto& v : nullspace(xt)) axpy(c, random_entry(rng, complex_values), v);
  for (auto& z : c) z = z.conj();
  return c;
}

}  // namespace rankone

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rankone/model.hpp"
#include "rankone/roots.hpp"

namespace rankone {

/// A + x_m b* where x_m is the chain vector named by `source`.
struct PerturbationProblem {
  JordanSpec spec;
  ChainLocator source;
  Vector<GaussScalar> b;

  friend bool operator==(const PerturbationProblem&, const PerturbationProblem&) = default;
};

inline std::vector<Diagnostic> validate_problem(const PerturbationProblem& problem) {
  auto out = validate_spec(problem.spec);
  const auto& blocks = problem.spec.blocks;
  if (problem.source.block_index >= blocks.size()) {
    out.push_back({ErrorKind::LocatorOutOfRange, "source.block",
                   "block " + std::to_string(problem.source.block_index) + " does not exist"});
  } else if (problem.source.rank < 1 || problem.source.rank > blocks[problem.source.block_index].size) {
    out.push_back({ErrorKind::LocatorOutOfRange, "source.rank",
                   "rank " + std::to_string(problem.source.rank) + " outside 1.." +
                       std::to_string(blocks[problem.source.block_index].size)});
  }
  if (problem.b.size() != problem.spec.dimension())
    out.push_back({ErrorKind::DimensionMismatch, "b",
                   "length " + std::to_string(problem.b.size()) + ", expected " +
                       std::to_string(problem.spec.dimension())});
  return out;
}

/// A problem materialized over carrier S. Moments b* x_j of every chain are
/// precomputed since all recurrences consume them.
template <class S>
struct Instance {
  RealizedSpec<S> base;
  ChainLocator source;
  Vector<S> b;
  std::vector<std::vector<S>> moments;  // moments[block][j-1] = b* x_j

  const Matrix<S>& matrix() const { return base.matrix; }
  std::size_t dimension() const { return base.matrix.rows(); }
  std::size_t source_block() const { return source.block_index; }
  const S& lambda() const { return base.eigenvalues[source.block_index]; }
  int m() const { return source.rank; }
  int r() const { return base.sizes[source.block_index]; }

  /// x_j of the source chain (zero for j = 0).
  Vector<S> x(int j) const { return base.chain(source.block_index, j); }
  /// b* x_j of `block` (zero for j = 0).
  S moment(std::size_t block, int j) const {
    if (j <= 0) return scalar_traits<S>::zero();
    return moments.at(block).at(static_cast<std::size_t>(j - 1));
  }
  S source_moment(int j) const { return moment(source.block_index, j); }
};

template <class S>
Instance<S> instantiate(const PerturbationProblem& problem) {
  const auto diags = validate_problem(problem);
  if (!diags.empty()) throw Error(diags.front().kind, diags.front().field + ": " + diags.front().message);
  Instance<S> inst{realize<S>(problem.spec), problem.source, cast_vector<S>(problem.b), {}};
  for (const auto& chain : inst.base.chains) {
    std::vector<S> row;
    for (const auto& v : chain) row.push_back(inner(inst.b, v));
    inst.moments.push_back(std::move(row));
  }
  return inst;
}

/// det(A + x b*) through (b* A^{-1} x + 1) det(A); requires A invertible.
template <class S>
S det_rank1_update(const Matrix<S>& a, const Vector<S>& x, const Vector<S>& b) {
  const S det_a = determinant(a);
  if (scalar_traits<S>::is_zero(det_a)) throw Error(ErrorKind::SingularMatrix, "A is singular");
  return (inner(b, solve(a, x)) + scalar_traits<S>::one()) * det_a;
}

/// (tI - A)^{-1} x_m expanded along the source chain:
/// sum_{i=0}^{m-1} x_{i+1} / (t - lambda)^{m-i}.
template <class S>
Vector<S> resolvent_action(const Instance<S>& inst, const S& t) {
  for (const auto& e : inst.base.eigenvalues)
    if (scalar_traits<S>::is_zero(t - e))
      throw Error(ErrorKind::SpectrumCollision, scalar_traits<S>::str(t) + " is an eigenvalue of A");
  const S step = scalar_traits<S>::one() / (t - inst.lambda());
  Vector<S> out = zero_vector<S>(inst.dimension());
  // Horner in 1/(t - lambda): the x_m term carries the lowest power.
  for (int j = 1; j <= inst.m(); ++j) {
    out = add(out, inst.x(j));
    out = scale(out, step);
  }
  return out;
}

inline Vector<GaussScalar> resolvent_action(const PerturbationProblem& problem, const GaussScalar& t) {
  return resolvent_action(instantiate<GaussScalar>(problem), t);
}

/// f(t) = (t - lambda)^m - sum_{i<m} (b* x_{i+1}) (t - lambda)^i, plus its
/// shifted-basis data (the moment list).
template <class S>
struct UpdateFactor {
  BasicPoly<S> f;
  std::vector<S> moments;  // b* x_1 .. b* x_m
  S center;                // lambda
};

template <class S>
UpdateFactor<S> update_char_factor(const Instance<S>& inst) {
  std::vector<S> shifted;
  std::vector<S> moments;
  for (int i = 0; i < inst.m(); ++i) {
    moments.push_back(inst.source_moment(i + 1));
    shifted.push_back(-moments.back());
  }
  shifted.push_back(scalar_traits<S>::one());
  return {BasicPoly<S>::from_shifted(shifted, inst.lambda()), std::move(moments), inst.lambda()};
}

inline UpdateFactor<GaussScalar> update_char_factor(const PerturbationProblem& problem) {
  return update_char_factor(instantiate<GaussScalar>(problem));
}

/// m - k, where k is the largest index with b* x_j = 0 for every j <= k.
template <class S>
int changed_eigenvalue_bound(const Instance<S>& inst) {
  int k = 0;
  while (k < inst.m() && scalar_traits<S>::is_zero(inst.source_moment(k + 1))) ++k;
  return inst.m() - k;
}

inline int changed_eigenvalue_bound(const PerturbationProblem& problem) {
  return changed_eigenvalue_bound(instantiate<GaussScalar>(problem));
}

/// Roots of f. Roots equal to lambda are reported, not dropped.
inline std::vector<Root> new_eigenvalues(const Instance<GaussScalar>& inst, RootMode mode) {
  const auto factor = update_char_factor(inst);
  const GaussScalar hints[] = {inst.lambda()};
  return poly_roots(factor.f, mode, hints);
}

inline std::vector<Root> new_eigenvalues(const PerturbationProblem& problem, RootMode mode) {
  return new_eigenvalues(instantiate<GaussScalar>(problem), mode);
}

/// det(tI - (A + x_m b*)) = f(t) * charpoly(A) / (t - lambda)^m.
inline Poly updated_char_poly(const PerturbationProblem& problem) {
  const auto inst = instantiate<GaussScalar>(problem);
  const Poly reduced = poly_divide_linear(spec_char_poly(problem.spec), inst.lambda(), inst.m());
  return update_char_factor(inst).f * reduced;
}

}  // namespace rankone

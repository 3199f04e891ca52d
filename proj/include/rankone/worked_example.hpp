#pragma once

#include "rankone/perturb.hpp"

namespace rankone {

/// The 11x11 worked example: A = J_6(2) (+) J_3(2) (+) J_2(1), source x_2 in
/// the first block, b = 3e_1 - 5e_2 + e_7 + e_10.
///
/// The similarity is block-diagonal with upper-triangular all-ones blocks, so
/// chain vectors come out as x_j = e_1 + ... + e_j (and likewise for y, z).
/// Each block is I + N + N^2 + ..., a polynomial in the block's nilpotent
/// part, so it commutes with J and the assembled A is J itself.
inline PerturbationProblem worked_example_problem() {
  PerturbationProblem p;
  p.spec.blocks = {{GaussScalar(2), 6}, {GaussScalar(2), 3}, {GaussScalar(1), 2}};
  const std::size_t n = p.spec.dimension();
  Matrix<GaussScalar> s(n, n);
  std::size_t off = 0;
  for (const auto& blk : p.spec.blocks) {
    for (int i = 0; i < blk.size; ++i)
      for (int j = i; j < blk.size; ++j) s(off + i, off + j) = GaussScalar(1);
    off += static_cast<std::size_t>(blk.size);
  }
  p.spec.similarity = std::move(s);
  p.source = {0, 2};
  p.b = zero_vector<GaussScalar>(n);
  p.b[0] = GaussScalar(3);
  p.b[1] = GaussScalar(-5);
  p.b[6] = GaussScalar(1);
  p.b[9] = GaussScalar(1);
  return p;
}

}  // namespace rankone

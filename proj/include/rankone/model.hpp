#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rankone/linalg.hpp"
#include "rankone/poly.hpp"

namespace rankone {

struct JordanBlock {
  GaussScalar eigenvalue;
  int size = 1;

  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// A = S J S^{-1} with J = blocks[0] (+) blocks[1] (+) ... in the given order.
/// Without a similarity, S = I. Column offset+j-1 of S is the rank-j vector
/// of the chain spanning block `index`.
struct JordanSpec {
  std::vector<JordanBlock> blocks;
  std::optional<Matrix<GaussScalar>> similarity;

  std::size_t dimension() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += static_cast<std::size_t>(b.size > 0 ? b.size : 0);
    return n;
  }

  std::size_t offset(std::size_t block_index) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < block_index; ++i) off += static_cast<std::size_t>(blocks[i].size);
    return off;
  }

  friend bool operator==(const JordanSpec&, const JordanSpec&) = default;
};

/// Identifies the rank-`rank` vector of the chain for block `block_index`.
struct ChainLocator {
  std::size_t block_index = 0;
  int rank = 1;

  friend bool operator==(const ChainLocator&, const ChainLocator&) = default;
};

struct Diagnostic {
  ErrorKind kind;
  std::string field;
  std::string message;
};

inline std::vector<Diagnostic> validate_spec(const JordanSpec& spec) {
  std::vector<Diagnostic> out;
  if (spec.blocks.empty()) out.push_back({ErrorKind::DimensionMismatch, "blocks", "empty block list"});
  for (std::size_t i = 0; i < spec.blocks.size(); ++i)
    if (spec.blocks[i].size < 1)
      out.push_back({ErrorKind::DimensionMismatch, "blocks[" + std::to_string(i) + "].size",
                     "block size must be >= 1"});
  if (spec.similarity) {
    const auto& s = *spec.similarity;
    const std::size_t n = spec.dimension();
    if (s.rows() != n || s.cols() != n) {
      out.push_back({ErrorKind::DimensionMismatch, "similarity",
                     "expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                         std::to_string(s.rows()) + "x" + std::to_string(s.cols())});
    } else if (n > 0 && rank(s) < n) {
      out.push_back({ErrorKind::SingularSimilarity, "similarity", "similarity matrix is singular"});
    }
  }
  return out;
}

namespace detail {

inline void require_valid(const JordanSpec& spec) {
  const auto diags = validate_spec(spec);
  if (!diags.empty()) throw Error(diags.front().kind, diags.front().field + ": " + diags.front().message);
}

}  // namespace detail

/// The block-diagonal Jordan matrix J (no similarity applied).
inline Matrix<GaussScalar> jordan_matrix(const std::vector<JordanBlock>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(b.size);
  Matrix<GaussScalar> j(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (int k = 0; k < b.size; ++k) {
      j(off + k, off + k) = b.eigenvalue;
      if (k + 1 < b.size) j(off + k, off + k + 1) = GaussScalar(1);
    }
    off += static_cast<std::size_t>(b.size);
  }
  return j;
}

inline Matrix<GaussScalar> assemble_matrix(const JordanSpec& spec) {
  detail::require_valid(spec);
  Matrix<GaussScalar> j = jordan_matrix(spec.blocks);
  if (!spec.similarity) return j;
  return *spec.similarity * j * inverse(*spec.similarity);
}

inline Vector<GaussScalar> chain_vector(const JordanSpec& spec, const ChainLocator& loc) {
  if (loc.block_index >= spec.blocks.size() || loc.rank < 1 ||
      loc.rank > spec.blocks[loc.block_index].size)
    throw Error(ErrorKind::LocatorOutOfRange, "block " + std::to_string(loc.block_index) + ", rank " +
                                                  std::to_string(loc.rank));
  const std::size_t col = spec.offset(loc.block_index) + static_cast<std::size_t>(loc.rank - 1);
  if (!spec.similarity) return unit_vector<GaussScalar>(spec.dimension(), col);
  return spec.similarity->column(col);
}

/// prod over blocks of (t - eigenvalue)^size
inline Poly spec_char_poly(const JordanSpec& spec) {
  Poly p = Poly::constant(GaussScalar(1));
  for (const auto& b : spec.blocks) p = p * Poly::linear_power(b.eigenvalue, b.size);
  return p;
}

/// Distinct eigenvalues in block order.
inline std::vector<GaussScalar> spec_eigenvalues(const JordanSpec& spec) {
  std::vector<GaussScalar> out;
  for (const auto& b : spec.blocks) {
    bool seen = false;
    for (const auto& e : out) seen = seen || e == b.eigenvalue;
    if (!seen) out.push_back(b.eigenvalue);
  }
  return out;
}

/// A JordanSpec materialized over carrier S: the matrix and every chain
/// vector, chains[block][j-1] = x_j. The exact assembly is done once and
/// converted, so float-mode inputs carry no assembly error.
template <class S>
struct RealizedSpec {
  Matrix<S> matrix;
  std::vector<S> eigenvalues;
  std::vector<int> sizes;
  std::vector<std::vector<Vector<S>>> chains;

  /// Chain vector x_rank of `block`, with the zero-vector convention for rank 0.
  Vector<S> chain(std::size_t block, int rank) const {
    if (rank <= 0) return zero_vector<S>(matrix.rows());
    return chains.at(block).at(static_cast<std::size_t>(rank - 1));
  }
};

template <class S>
RealizedSpec<S> realize(const JordanSpec& spec) {
  const Matrix<GaussScalar> a = assemble_matrix(spec);
  RealizedSpec<S> out;
  out.matrix = a.template cast<S>();
  const std::size_t n = spec.dimension();
  for (std::size_t bi = 0; bi < spec.blocks.size(); ++bi) {
    const auto& blk = spec.blocks[bi];
    out.eigenvalues.push_back(scalar_traits<S>::from(blk.eigenvalue));
    out.sizes.push_back(blk.size);
    std::vector<Vector<S>> chain;
    const std::size_t off = spec.offset(bi);
    for (int r = 1; r <= blk.size; ++r) {
      const std::size_t col = off + static_cast<std::size_t>(r - 1);
      chain.push_back(spec.similarity ? cast_vector<S>(spec.similarity->column(col))
                                      : unit_vector<S>(n, col));
    }
    out.chains.push_back(std::move(chain));
  }
  return out;
}

}  // namespace rankone

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rankone/perturb.hpp"

// Brute-force checks that never touch the closed-form recurrences: everything
// here works from an explicit matrix.

namespace rankone {

template <class S>
Matrix<S> apply_update(const Instance<S>& inst) {
  return inst.matrix() + outer(inst.x(inst.m()), inst.b);
}

inline Matrix<GaussScalar> apply_update(const PerturbationProblem& problem) {
  return apply_update(instantiate<GaussScalar>(problem));
}

struct ChainVerdict {
  bool pass = true;
  int failing_index = 0;  // 1-based; 0 when passing
  std::string reason;

  friend bool operator==(const ChainVerdict&, const ChainVerdict&) = default;
};

/// Exact check of M v_t = eigenvalue v_t + v_{t-1} (v_0 = 0) and v_1 != 0.
template <class S>
ChainVerdict verify_chain(const Matrix<S>& m, const S& eigenvalue, const std::vector<Vector<S>>& vectors) {
  if (vectors.empty()) return {false, 0, "no vectors"};
  if (is_zero_vector(vectors.front())) return {false, 1, "first vector is zero"};
  Vector<S> prev = zero_vector<S>(m.rows());
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    const auto& v = vectors[t];
    if (v.size() != m.rows()) return {false, static_cast<int>(t + 1), "dimension mismatch"};
    const Vector<S> residual = subtract(subtract(m * v, scale(v, eigenvalue)), prev);
    if (!is_zero_vector(residual)) return {false, static_cast<int>(t + 1), "chain relation fails"};
    prev = v;
  }
  return {};
}

/// Float-mode version: the residual of each link must satisfy
/// |M v_t - eigenvalue v_t - v_{t-1}| <= tolerance * scale * |v_t|.
template <class S>
ChainVerdict verify_chain_residual(const Matrix<S>& m, const S& eigenvalue, const std::vector<Vector<S>>& vectors,
                                   double tolerance, double scale_factor, double* worst_ratio = nullptr) {
  if (vectors.empty()) return {false, 0, "no vectors"};
  if (norm2(vectors.front()) == 0.0) return {false, 1, "first vector is zero"};
  Vector<S> prev = zero_vector<S>(m.rows());
  ChainVerdict verdict;
  double worst = 0.0;
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    const auto& v = vectors[t];
    const double res = norm2(subtract(subtract(m * v, scale(v, eigenvalue)), prev));
    const double bound = scale_factor * norm2(v);
    worst = std::max(worst, bound > 0 ? res / bound : res);
    if (verdict.pass && res > tolerance * bound)
      verdict = {false, static_cast<int>(t + 1), "residual " + std::to_string(res) + " exceeds bound"};
    prev = v;
  }
  if (worst_ratio) *worst_ratio = worst;
  return verdict;
}

/// Smallest k <= n with (M - eigenvalue I)^k v = 0, or nullopt.
template <class S>
std::optional<int> generalized_rank(const Matrix<S>& m, const S& eigenvalue, const Vector<S>& v) {
  if (is_zero_vector(v)) throw Error(ErrorKind::ZeroVector, "generalized rank of the zero vector");
  const Matrix<S> shifted_m = shifted(m, eigenvalue);
  Vector<S> w = v;
  for (int k = 1; k <= static_cast<int>(m.rows()); ++k) {
    w = shifted_m * w;
    if (is_zero_vector(w)) return k;
  }
  return std::nullopt;
}

/// det(tI - M) by the Faddeev-LeVerrier recursion.
template <class S>
BasicPoly<S> char_poly_direct(const Matrix<S>& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<S> c(n + 1, scalar_traits<S>::zero());
  c[n] = scalar_traits<S>::one();
  Matrix<S> mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = M M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(M M_k) / k
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    const Matrix<S> prod = m * mk;
    S trace = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
    c[n - k] = -trace / S(static_cast<int>(k));
  }
  return BasicPoly<S>(std::move(c));
}

/// det(M) read off the characteristic polynomial: det M = (-1)^n c_0.
template <class S>
S determinant_direct(const Matrix<S>& m) {
  const S c0 = char_poly_direct(m)[0];
  return m.rows() % 2 == 0 ? c0 : -c0;
}

template <class S>
std::vector<Vector<S>> nullspace(const Matrix<S>& m) {
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector<S>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<S> v = zero_vector<S>(m.cols());
    v[free] = scalar_traits<S>::one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Jordan block sizes per eigenvalue; sizes sorted descending, entries in
/// the order the eigenvalues were supplied.
struct JordanStructure {
  struct Entry {
    GaussScalar eigenvalue;
    std::vector<int> block_sizes;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  /// Multiset of (eigenvalue, size), order-independent comparison key.
  std::vector<std::pair<std::string, int>> blocks() const {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& e : entries)
      for (int s : e.block_sizes) out.emplace_back(e.eigenvalue.to_string(), s);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const JordanStructure&, const JordanStructure&) = default;
};

/// Rank sequence r_k = rank((M - lambda I)^k), k = 0.. until it stabilizes.
template <class S>
std::vector<std::size_t> weyr_ranks(const Matrix<S>& m, const S& eigenvalue) {
  const Matrix<S> shifted_m = shifted(m, eigenvalue);
  std::vector<std::size_t> ranks{m.rows()};
  Matrix<S> power = Matrix<S>::identity(m.rows());
  while (true) {
    power = power * shifted_m;
    const std::size_t r = rank(power);
    if (r == ranks.back()) break;
    ranks.push_back(r);
  }
  return ranks;
}

/// Block sizes as the conjugate partition of the rank drops.
inline std::vector<int> block_sizes_from_ranks(const std::vector<std::size_t>& ranks) {
  std::vector<int> at_least;  // at_least[k-1] = number of blocks of size >= k
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(static_cast<int>(ranks[k - 1] - ranks[k]));
  std::vector<int> sizes;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (int c = 0; c < at_least[k] - next; ++c) sizes.push_back(static_cast<int>(k + 1));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

inline JordanStructure jordan_structure(const Matrix<GaussScalar>& m, const std::vector<GaussScalar>& eigenvalues) {
  JordanStructure out;
  std::size_t total = 0;
  for (const auto& e : eigenvalues) {
    bool dup = false;
    for (const auto& seen : out.entries) dup = dup || seen.eigenvalue == e;
    if (dup) continue;
    auto sizes = block_sizes_from_ranks(weyr_ranks(m, e));
    for (int s : sizes) total += static_cast<std::size_t>(s);
    if (!sizes.empty()) out.entries.push_back({e, std::move(sizes)});
  }
  if (total != m.rows())
    throw Error(ErrorKind::IncompleteSpectrum, "supplied eigenvalues account for " + std::to_string(total) +
                                                   " of " + std::to_string(m.rows()) + " dimensions");
  return out;
}

/// Exact distinct eigenvalues of M via its characteristic polynomial.
inline std::vector<GaussScalar> exact_spectrum(const Matrix<GaussScalar>& m, std::span<const GaussScalar> hints = {}) {
  std::vector<GaussScalar> out;
  for (const auto& r : poly_roots_exact(char_poly_direct(m), hints)) out.push_back(*r.exact);
  return out;
}

/// Number of distinct roots of `p` that are not roots of `base`, computed
/// without locating them: deg(sqfree(p)) - deg(gcd(sqfree(p), base)).
inline int count_new_distinct_roots(const Poly& p, const Poly& base) {
  const Poly g = poly_gcd(p, p.derivative());
  const Poly squarefree = poly_divmod(p, g).first;
  return squarefree.degree() - poly_gcd(squarefree, base).degree();
}

}  // namespace rankone

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rankone/perturb.hpp"

namespace rankone {

/// Which preserved eigenvalue a chain of A + x_m b* belongs to:
/// lambda in the source block, lambda in another block, or mu != lambda.
enum class ChainCase { same_block, other_block, distinct_eigenvalue };

inline const char* to_string(ChainCase c) {
  switch (c) {
    case ChainCase::same_block: return "same_block";
    case ChainCase::other_block: return "other_block";
    case ChainCase::distinct_eigenvalue: return "distinct_eigenvalue";
  }
  return "unknown";
}

/// beta_j^(t) table, indexed table[t][j] for 0 <= t <= t_max, 0 <= j <= width.
/// Row 0 and column 0 are literal zeros.
template <class S>
struct ChainCoefficients {
  ChainCase tag = ChainCase::same_block;
  std::optional<S> beta;  // same_block only
  int width = 0;
  std::vector<std::vector<S>> table;

  const S& at(int t, int j) const {
    return table.at(static_cast<std::size_t>(t)).at(static_cast<std::size_t>(j));
  }
  int t_max() const { return static_cast<int>(table.size()) - 1; }

  friend bool operator==(const ChainCoefficients&, const ChainCoefficients&) = default;
};

template <class S>
struct UpdatedChainVector {
  int rank = 1;
  S eigenvalue;
  Vector<S> vector;
  std::vector<S> coefficients;  // beta_1^(t) .. beta_width^(t)
  std::optional<S> beta;

  friend bool operator==(const UpdatedChainVector&, const UpdatedChainVector&) = default;
};

/// One constructed chain of A + x_m b*: `block` is the block of A whose chain
/// (x, y or z) it is built from.
template <class S>
struct Chain {
  ChainCase tag = ChainCase::same_block;
  std::size_t block = 0;
  S eigenvalue;
  ChainCoefficients<S> coefficients;
  std::vector<UpdatedChainVector<S>> vectors;
};

namespace detail {

template <class S>
ChainCoefficients<S> empty_table(ChainCase tag, int width, int t_max) {
  ChainCoefficients<S> c;
  c.tag = tag;
  c.width = width;
  c.table.assign(static_cast<std::size_t>(t_max + 1),
                 std::vector<S>(static_cast<std::size_t>(width + 1), scalar_traits<S>::zero()));
  return c;
}

template <class S>
S& cell(ChainCoefficients<S>& c, int t, int j) {
  return c.table[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
}

template <class S>
Chain<S> assemble(const Instance<S>& inst, ChainCoefficients<S> coeffs, std::size_t block,
                  const S& eigenvalue, int beta_offset) {
  Chain<S> chain{coeffs.tag, block, eigenvalue, std::move(coeffs), {}};
  const auto& c = chain.coefficients;
  for (int t = 1; t <= c.t_max(); ++t) {
    Vector<S> v = inst.base.chain(block, t);
    std::vector<S> row;
    for (int j = 1; j <= c.width; ++j) {
      axpy(v, c.at(t, j), inst.x(j));
      row.push_back(c.at(t, j));
    }
    if (c.beta) axpy(v, *c.beta, inst.x(beta_offset + t));
    chain.vectors.push_back({t, eigenvalue, std::move(v), std::move(row), c.beta});
  }
  return chain;
}

}  // namespace detail

/// beta = -b*x_1 / (1 + b*x_{m+1}); needs m + 1 <= r.
template <class S>
S same_block_beta(const Instance<S>& inst) {
  using T = scalar_traits<S>;
  if (inst.m() + 1 > inst.r())
    throw Error(ErrorKind::RankOutOfRange, "same-block chain needs m + 1 <= r (m = " +
                                               std::to_string(inst.m()) + ", r = " + std::to_string(inst.r()) + ")");
  const S denom = T::one() + inst.source_moment(inst.m() + 1);
  if (T::is_zero(denom)) throw DegenerateDenominator("1 + b*x_{m+1}", 1, T::str(denom));
  return -inst.source_moment(1) / denom;
}

/// u_1 .. u_{t_max} for lambda in the source block. Default t_max = r - m.
template <class S>
Chain<S> same_block_chain(const Instance<S>& inst, std::optional<int> t_max = std::nullopt) {
  using T = scalar_traits<S>;
  const int m = inst.m();
  const int tm = t_max.value_or(inst.r() - m);
  if (tm < 0 || m + tm > inst.r())
    throw Error(ErrorKind::RankOutOfRange, "m + t_max = " + std::to_string(m + tm) + " exceeds r = " +
                                               std::to_string(inst.r()));
  auto coeffs = detail::empty_table<S>(ChainCase::same_block, m, tm);
  if (tm == 0) return detail::assemble(inst, std::move(coeffs), inst.source_block(), inst.lambda(), m);
  const S beta = same_block_beta(inst);
  coeffs.beta = beta;
  const S bx1 = inst.source_moment(1);
  if (tm >= 2 && T::is_zero(bx1)) throw DegenerateDenominator("b*x_1", 2, T::str(bx1));
  for (int t = 2; t <= tm; ++t) {
    const int upper = std::min(t - 1, m);
    for (int j = 2; j <= upper; ++j) detail::cell(coeffs, t, j) = coeffs.at(t - 1, j - 1);
    // Beyond t = m+1 the chain also absorbs beta_m^(t-1).
    S numer = t > m + 1 ? coeffs.at(t - 1, m) : T::zero();
    numer -= inst.source_moment(t);
    for (int j = 2; j <= upper; ++j) numer -= coeffs.at(t - 1, j - 1) * inst.source_moment(j);
    numer -= beta * inst.source_moment(m + t);
    detail::cell(coeffs, t, 1) = numer / bx1;
  }
  return detail::assemble(inst, std::move(coeffs), inst.source_block(), inst.lambda(), m);
}

/// v_1 .. v_{t_max} for lambda carried by another block of A. Default t_max = s.
template <class S>
Chain<S> other_block_chain(const Instance<S>& inst, std::size_t other_block,
                           std::optional<int> t_max = std::nullopt) {
  using T = scalar_traits<S>;
  if (other_block >= inst.base.sizes.size() || other_block == inst.source_block())
    throw Error(ErrorKind::LocatorOutOfRange, "other block " + std::to_string(other_block) +
                                                  " must exist and differ from the source block");
  if (!T::is_zero(inst.base.eigenvalues[other_block] - inst.lambda()))
    throw Error(ErrorKind::EigenvalueMismatch, "block " + std::to_string(other_block) +
                                                   " does not carry the source eigenvalue");
  const int m = inst.m();
  const int s = inst.base.sizes[other_block];
  const int tm = t_max.value_or(s);
  if (tm < 0 || tm > s)
    throw Error(ErrorKind::RankOutOfRange, "t_max = " + std::to_string(tm) + " exceeds s = " + std::to_string(s));
  auto coeffs = detail::empty_table<S>(ChainCase::other_block, m, tm);
  const S bx1 = inst.source_moment(1);
  if (tm >= 1 && T::is_zero(bx1)) throw DegenerateDenominator("b*x_1", 1, T::str(bx1));
  for (int t = 1; t <= tm; ++t) {
    const int upper = std::min(t, m);
    for (int j = 2; j <= upper; ++j) detail::cell(coeffs, t, j) = coeffs.at(t - 1, j - 1);
    S numer = t > m ? coeffs.at(t - 1, m) : T::zero();
    numer -= inst.moment(other_block, t);
    for (int j = 2; j <= upper; ++j) numer -= coeffs.at(t - 1, j - 1) * inst.source_moment(j);
    detail::cell(coeffs, t, 1) = numer / bx1;
  }
  return detail::assemble(inst, std::move(coeffs), other_block, inst.lambda(), 0);
}

/// D = (mu - lambda)^{m+1} - sum_{j=1}^m (mu - lambda)^j b*x_j, which equals
/// (mu - lambda) f(mu).
template <class S>
S distinct_denominator(const Instance<S>& inst, const S& mu) {
  const S d = mu - inst.lambda();
  S power = d;
  S sum = scalar_traits<S>::zero();
  for (int j = 1; j <= inst.m(); ++j) {
    sum += power * inst.source_moment(j);
    power = power * d;
  }
  return power - sum;
}

/// w_1 .. w_{t_max} for an eigenvalue mu != lambda. Default t_max = gamma.
template <class S>
Chain<S> distinct_eig_chain(const Instance<S>& inst, std::size_t mu_block,
                            std::optional<int> t_max = std::nullopt) {
  using T = scalar_traits<S>;
  if (mu_block >= inst.base.sizes.size())
    throw Error(ErrorKind::LocatorOutOfRange, "block " + std::to_string(mu_block) + " does not exist");
  const S mu = inst.base.eigenvalues[mu_block];
  const S d = mu - inst.lambda();
  if (T::is_zero(d))
    throw Error(ErrorKind::EigenvalueMismatch, "block " + std::to_string(mu_block) + " carries lambda itself");
  const int m = inst.m();
  const int gamma = inst.base.sizes[mu_block];
  const int tm = t_max.value_or(gamma);
  if (tm < 0 || tm > gamma)
    throw Error(ErrorKind::RankOutOfRange, "t_max = " + std::to_string(tm) + " exceeds gamma = " +
                                               std::to_string(gamma));
  auto coeffs = detail::empty_table<S>(ChainCase::distinct_eigenvalue, m, tm);
  if (tm == 0) return detail::assemble(inst, std::move(coeffs), mu_block, mu, 0);
  const S denom = distinct_denominator(inst, mu);
  if (T::is_zero(denom)) throw DegenerateDenominator("(mu-lambda)^{m+1} - sum (mu-lambda)^j b*x_j", 1, T::str(denom));

  // d_pow[k] = d^k for 0 <= k <= m + 1
  std::vector<S> d_pow{T::one()};
  for (int k = 1; k <= m + 1; ++k) d_pow.push_back(d_pow.back() * d);
  auto prev_tail = [&](int t, int j) {
    // sum_{i=0}^{m-1-j} d^i beta_{m-1-i}^(t-1)
    S acc = T::zero();
    for (int i = 0; i <= m - 1 - j; ++i) acc += d_pow[static_cast<std::size_t>(i)] * coeffs.at(t - 1, m - 1 - i);
    return acc;
  };

  for (int t = 1; t <= tm; ++t) {
    S numer = d_pow[static_cast<std::size_t>(m)] * (inst.moment(mu_block, t) - coeffs.at(t - 1, m));
    for (int j = 1; j <= m; ++j) {
      S inner_sum = T::zero();
      for (int i = 0; i <= m - 1 - j; ++i)
        inner_sum += d_pow[static_cast<std::size_t>(i + j)] * coeffs.at(t - 1, m - 1 - i);
      numer -= inst.source_moment(j) * inner_sum;
    }
    detail::cell(coeffs, t, m) = numer / denom;
    for (int j = m - 1; j >= 1; --j)
      detail::cell(coeffs, t, j) = (coeffs.at(t, m) - prev_tail(t, j)) / d_pow[static_cast<std::size_t>(m - j)];
  }
  return detail::assemble(inst, std::move(coeffs), mu_block, mu, 0);
}

// Closed forms for the first vector of each chain. They must agree with the
// t = 1 output of the recursions above.

template <class S>
Vector<S> same_block_eigenvector(const Instance<S>& inst) {
  using T = scalar_traits<S>;
  const S denom = T::one() + inst.source_moment(inst.m() + 1);
  if (T::is_zero(denom)) throw DegenerateDenominator("1 + b*x_{m+1}", 1, T::str(denom));
  Vector<S> u = inst.x(1);
  axpy(u, -(inst.source_moment(1) / denom), inst.x(inst.m() + 1));
  return u;
}

template <class S>
Vector<S> other_block_eigenvector(const Instance<S>& inst, std::size_t other_block) {
  using T = scalar_traits<S>;
  const S bx1 = inst.source_moment(1);
  if (T::is_zero(bx1)) throw DegenerateDenominator("b*x_1", 1, T::str(bx1));
  Vector<S> v = inst.base.chain(other_block, 1);
  axpy(v, -(inst.moment(other_block, 1) / bx1), inst.x(1));
  return v;
}

template <class S>
Vector<S> distinct_eigenvector(const Instance<S>& inst, std::size_t mu_block) {
  using T = scalar_traits<S>;
  const S mu = inst.base.eigenvalues[mu_block];
  const S denom = distinct_denominator(inst, mu);
  if (T::is_zero(denom)) throw DegenerateDenominator("(mu-lambda)^{m+1} - sum (mu-lambda)^j b*x_j", 1, T::str(denom));
  const S factor = inst.moment(mu_block, 1) / denom;
  const S d = mu - inst.lambda();
  Vector<S> w = inst.base.chain(mu_block, 1);
  S power = d;
  for (int j = 1; j <= inst.m(); ++j) {
    axpy(w, factor * power, inst.x(j));
    power = power * d;
  }
  return w;
}

}  // namespace rankone

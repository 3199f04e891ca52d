#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rankone/chains.hpp"
#include "rankone/io.hpp"
#include "rankone/worked_example.hpp"
#include "rankone/random_problem.hpp"

// The command layer behind the CLI: one call per subcommand, each returning a
// plain value that serializes to JSON.

namespace rankone::cli {

using io::json;

enum class Mode { exact, float_ };
enum class ChainSelection { all, same, other, distinct };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

struct ComputeOptions {
  ChainSelection chains = ChainSelection::all;
  double tolerance = 1e-9;  // float mode only, relative
};

struct Degeneracy {
  std::string formula;
  int rank = 0;
  std::string value;
  friend bool operator==(const Degeneracy&, const Degeneracy&) = default;
};

template <class S>
struct ChainReport {
  ChainCase tag = ChainCase::same_block;
  std::size_t block = 0;
  S eigenvalue;
  ChainCoefficients<S> coefficients;
  std::vector<UpdatedChainVector<S>> vectors;
  std::optional<Degeneracy> degenerate;
  ChainVerdict verdict;
  std::vector<std::optional<int>> ranks;  // exact mode: generalized rank of each vector

  bool passed() const {
    if (vectors.empty()) return true;
    if (!verdict.pass) return false;
    for (std::size_t i = 0; i < ranks.size(); ++i)
      if (ranks[i] != std::optional<int>(static_cast<int>(i + 1))) return false;
    return true;
  }

  friend bool operator==(const ChainReport&, const ChainReport&) = default;
};

template <class S>
struct UpdateReport {
  Mode mode = Mode::exact;
  std::size_t source_block = 0;
  int m = 1;
  S lambda;
  std::vector<S> moments;  // shifted-basis data: b* x_1 .. b* x_m
  BasicPoly<S> f;          // monomial basis
  std::vector<Root> new_eigenvalues;
  bool eigenvalues_exact = false;
  int bound = 0;
  std::vector<ChainReport<S>> chains;
  std::optional<bool> char_poly_identity;  // exact mode
  std::optional<JordanStructure> jordan;   // exact mode, when the spectrum is Gaussian-rational
  std::string jordan_note;
  std::optional<double> worst_residual_ratio;  // float mode
  bool passed = true;

  const ChainReport<S>* find_chain(ChainCase tag, std::size_t block) const {
    for (const auto& c : chains)
      if (c.tag == tag && c.block == block) return &c;
    return nullptr;
  }

  friend bool operator==(const UpdateReport&, const UpdateReport&) = default;
};

namespace detail {

template <class S, class Build>
ChainReport<S> build_chain(ChainCase tag, std::size_t block, const S& eigenvalue, Build build) {
  ChainReport<S> rep;
  rep.tag = tag;
  rep.block = block;
  rep.eigenvalue = eigenvalue;
  std::optional<int> limit;
  while (true) {
    try {
      Chain<S> chain = build(limit);
      rep.coefficients = std::move(chain.coefficients);
      rep.vectors = std::move(chain.vectors);
      return rep;
    } catch (const DegenerateDenominator& e) {
      // Keep the first degeneracy; retry for the prefix below it.
      if (!rep.degenerate) rep.degenerate = Degeneracy{e.formula(), e.rank(), e.value()};
      if (e.rank() <= 1) {
        rep.coefficients.tag = tag;
        return rep;
      }
      limit = e.rank() - 1;
    }
  }
}

inline ChainCase parse_case(const std::string& s) {
  if (s == "same_block") return ChainCase::same_block;
  if (s == "other_block") return ChainCase::other_block;
  if (s == "distinct_eigenvalue") return ChainCase::distinct_eigenvalue;
  throw ParseError("chains[].case", "unknown case '" + s + "'");
}

}  // namespace detail

/// compute: f, new eigenvalues, the change bound, every applicable chain, and
/// the oracle verdicts. Runs over GaussScalar (exact) or complex<double>.
template <class S>
UpdateReport<S> compute(const PerturbationProblem& problem, const ComputeOptions& options = {}) {
  using T = scalar_traits<S>;
  const Instance<S> inst = instantiate<S>(problem);
  UpdateReport<S> rep;
  rep.mode = T::exact ? Mode::exact : Mode::float_;
  rep.source_block = inst.source_block();
  rep.m = inst.m();
  rep.lambda = inst.lambda();
  const auto factor = update_char_factor(inst);
  rep.moments = factor.moments;
  rep.f = factor.f;
  rep.bound = changed_eigenvalue_bound(inst);

  if constexpr (T::exact) {
    try {
      const GaussScalar hints[] = {inst.lambda()};
      rep.new_eigenvalues = poly_roots_exact(factor.f, hints);
      rep.eigenvalues_exact = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ExactModeUnavailable) throw;
      rep.new_eigenvalues = poly_roots_numeric(factor.f);
    }
  } else {
    rep.new_eigenvalues = poly_roots_numeric(factor.f);
  }

  const auto want = [&](ChainSelection s) { return options.chains == ChainSelection::all || options.chains == s; };
  if (want(ChainSelection::same) && inst.m() < inst.r())
    rep.chains.push_back(detail::build_chain<S>(ChainCase::same_block, inst.source_block(), inst.lambda(),
                                                [&](std::optional<int> t) { return same_block_chain(inst, t); }));
  for (std::size_t blk = 0; blk < inst.base.sizes.size(); ++blk) {
    if (blk == inst.source_block()) continue;
    const S& ev = inst.base.eigenvalues[blk];
    if (T::is_zero(ev - inst.lambda())) {
      if (want(ChainSelection::other))
        rep.chains.push_back(detail::build_chain<S>(ChainCase::other_block, blk, ev, [&](std::optional<int> t) {
          return other_block_chain(inst, blk, t);
        }));
    } else if (want(ChainSelection::distinct)) {
      rep.chains.push_back(detail::build_chain<S>(ChainCase::distinct_eigenvalue, blk, ev, [&](std::optional<int> t) {
        return distinct_eig_chain(inst, blk, t);
      }));
    }
  }

  const Matrix<S> updated = apply_update(inst);
  const double scale_factor = frobenius_norm(inst.matrix()) + norm2(inst.x(inst.m())) * norm2(inst.b);
  double worst = 0.0;
  for (auto& chain : rep.chains) {
    if (chain.vectors.empty()) continue;
    std::vector<Vector<S>> vs;
    for (const auto& v : chain.vectors) vs.push_back(v.vector);
    if constexpr (T::exact) {
      chain.verdict = verify_chain(updated, chain.eigenvalue, vs);
      for (const auto& v : vs) chain.ranks.push_back(generalized_rank(updated, chain.eigenvalue, v));
    } else {
      double ratio = 0.0;
      chain.verdict = verify_chain_residual(updated, chain.eigenvalue, vs, options.tolerance, scale_factor, &ratio);
      worst = std::max(worst, ratio);
    }
    rep.passed = rep.passed && chain.passed();
  }

  if constexpr (T::exact) {
    const Poly direct = char_poly_direct(updated);
    rep.char_poly_identity = updated_char_poly(problem) == direct;
    rep.passed = rep.passed && *rep.char_poly_identity;
    std::vector<GaussScalar> hints = spec_eigenvalues(problem.spec);
    for (const auto& r : rep.new_eigenvalues)
      if (r.exact) hints.push_back(*r.exact);
    try {
      rep.jordan = jordan_structure(updated, exact_spectrum(updated, hints));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ExactModeUnavailable && e.kind() != ErrorKind::IncompleteSpectrum) throw;
      rep.jordan_note = e.what();
    }
  } else {
    rep.worst_residual_ratio = worst;
  }
  return rep;
}

// ---- report serialization ----

template <class S>
json encode_report(const UpdateReport<S>& r) {
  using io::codec;
  json chains = json::array();
  for (const auto& c : r.chains) {
    json table = json::array();
    for (const auto& row : c.coefficients.table) table.push_back(io::encode_vector<S>(row));
    json vectors = json::array();
    for (const auto& v : c.vectors)
      vectors.push_back({{"rank", v.rank}, {"vector", io::encode_vector(v.vector)},
                         {"coefficients", io::encode_vector(v.coefficients)}});
    json ranks = json::array();
    for (const auto& k : c.ranks) ranks.push_back(k ? json(*k) : json(nullptr));
    json entry = {{"case", to_string(c.tag)},
                  {"block", c.block},
                  {"eigenvalue", codec<S>::encode(c.eigenvalue)},
                  {"width", c.coefficients.width},
                  {"table", table},
                  {"vectors", vectors},
                  {"verdict", io::encode_verdict(c.verdict)},
                  {"ranks", ranks}};
    if (c.coefficients.beta) entry["beta"] = codec<S>::encode(*c.coefficients.beta);
    if (c.degenerate)
      entry["degenerate"] = {{"formula", c.degenerate->formula}, {"rank", c.degenerate->rank},
                             {"value", c.degenerate->value}};
    chains.push_back(std::move(entry));
  }
  json roots = json::array();
  for (const auto& root : r.new_eigenvalues) roots.push_back(io::encode_root(root));
  json oracle = json::object();
  oracle["char_poly_identity"] = r.char_poly_identity ? json(*r.char_poly_identity) : json(nullptr);
  oracle["jordan_structure"] = r.jordan ? io::encode_jordan(*r.jordan) : json(nullptr);
  oracle["jordan_note"] = r.jordan_note;
  oracle["worst_residual_ratio"] = r.worst_residual_ratio ? json(*r.worst_residual_ratio) : json(nullptr);
  return {{"mode", to_string(r.mode)},
          {"source", {{"block", r.source_block}, {"rank", r.m}}},
          {"lambda", codec<S>::encode(r.lambda)},
          {"f", {{"shifted", io::encode_vector(r.moments)}, {"monomial", io::encode_poly(r.f)}}},
          {"new_eigenvalues", roots},
          {"eigenvalues_exact", r.eigenvalues_exact},
          {"bound", r.bound},
          {"chains", chains},
          {"oracle", oracle},
          {"status", r.passed ? "PASSED" : "FAILED"}};
}

template <class S>
UpdateReport<S> decode_report(const json& j) {
  using io::codec;
  try {
    UpdateReport<S> r;
    r.mode = j.at("mode").get<std::string>() == "exact" ? Mode::exact : Mode::float_;
    r.source_block = j.at("source").at("block").get<std::size_t>();
    r.m = j.at("source").at("rank").get<int>();
    r.lambda = codec<S>::decode(j.at("lambda"), "lambda");
    r.moments = io::decode_vector<S>(j.at("f").at("shifted"), "f.shifted");
    r.f = io::decode_poly<S>(j.at("f").at("monomial"), "f.monomial");
    for (std::size_t i = 0; i < j.at("new_eigenvalues").size(); ++i)
      r.new_eigenvalues.push_back(io::decode_root(j.at("new_eigenvalues")[i], "new_eigenvalues[" + std::to_string(i) + "]"));
    r.eigenvalues_exact = j.at("eigenvalues_exact").get<bool>();
    r.bound = j.at("bound").get<int>();
    for (const auto& c : j.at("chains")) {
      ChainReport<S> rep;
      rep.tag = detail::parse_case(c.at("case").get<std::string>());
      rep.block = c.at("block").get<std::size_t>();
      rep.eigenvalue = codec<S>::decode(c.at("eigenvalue"), "chains[].eigenvalue");
      rep.coefficients.tag = rep.tag;
      rep.coefficients.width = c.at("width").get<int>();
      if (c.contains("beta")) rep.coefficients.beta = codec<S>::decode(c.at("beta"), "chains[].beta");
      for (const auto& row : c.at("table")) rep.coefficients.table.push_back(io::decode_vector<S>(row, "chains[].table"));
      for (const auto& v : c.at("vectors"))
        rep.vectors.push_back({v.at("rank").get<int>(), rep.eigenvalue, io::decode_vector<S>(v.at("vector"), "chains[].vector"),
                               io::decode_vector<S>(v.at("coefficients"), "chains[].coefficients"),
                               rep.coefficients.beta});
      rep.verdict = io::decode_verdict(c.at("verdict"));
      for (const auto& k : c.at("ranks")) rep.ranks.push_back(k.is_null() ? std::nullopt : std::optional<int>(k.get<int>()));
      if (c.contains("degenerate"))
        rep.degenerate = Degeneracy{c.at("degenerate").at("formula").get<std::string>(),
                                    c.at("degenerate").at("rank").get<int>(),
                                    c.at("degenerate").at("value").get<std::string>()};
      r.chains.push_back(std::move(rep));
    }
    const auto& o = j.at("oracle");
    if (!o.at("char_poly_identity").is_null()) r.char_poly_identity = o.at("char_poly_identity").get<bool>();
    if (!o.at("jordan_structure").is_null()) r.jordan = io::decode_jordan(o.at("jordan_structure"), "oracle.jordan_structure");
    r.jordan_note = o.at("jordan_note").get<std::string>();
    if (!o.at("worst_residual_ratio").is_null()) r.worst_residual_ratio = o.at("worst_residual_ratio").get<double>();
    r.passed = j.at("status").get<std::string>() == "PASSED";
    return r;
  } catch (const json::exception& e) {
    throw ParseError("report", e.what());
  }
}

// ---- the worked example ----

struct GoldenCheck {
  std::string name;
  bool pass = false;
};

/// Compares an exact report of `worked_example_problem()` with its known
/// golden values.
inline std::vector<GoldenCheck> worked_example_checks(const UpdateReport<GaussScalar>& r) {
  using G = GaussScalar;
  auto q = [](long p, long d = 1) { return G(Rational(p, d)); };
  std::vector<GoldenCheck> out;
  auto check = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };

  const Poly expected_f = Poly::from_shifted({q(-3), q(2), q(1)}, q(2));
  check("f(t) = (t-2)^2 + 2(t-2) - 3", r.f == expected_f && r.f == Poly({q(-3), q(-2), q(1)}));
  check("new eigenvalues {-1, 3}", r.eigenvalues_exact && r.new_eigenvalues.size() == 2 &&
                                       r.new_eigenvalues[0].exact == q(-1) && r.new_eigenvalues[1].exact == q(3) &&
                                       r.new_eigenvalues[0].multiplicity == 1 && r.new_eigenvalues[1].multiplicity == 1);
  check("bound = 2", r.bound == 2);

  const auto* same = r.find_chain(ChainCase::same_block, 0);
  const bool same_ok = same && same->vectors.size() == 4 && same->coefficients.beta;
  check("beta = 3", same_ok && *same->coefficients.beta == q(3));
  check("beta_1^(2) = 8/3", same_ok && same->coefficients.at(2, 1) == q(8, 3));
  check("beta_1^(3) = 40/9, beta_2^(3) = 8/3",
        same_ok && same->coefficients.at(3, 1) == q(40, 9) && same->coefficients.at(3, 2) == q(8, 3));
  check("beta_1^(4) = 176/27, beta_2^(4) = 40/9",
        same_ok && same->coefficients.at(4, 1) == q(176, 27) && same->coefficients.at(4, 2) == q(40, 9));

  // Chain vectors as coordinates: x_j = e_1 + ... + e_j, y_j = e_7 + ... + e_{6+j}, z_j = e_10 + ... + e_{9+j}.
  auto chain_x = [](int j) {
    Vector<G> v = zero_vector<G>(11);
    for (int i = 0; i < j; ++i) v[static_cast<std::size_t>(i)] = G(1);
    return v;
  };
  auto chain_at = [](int offset, int j) {
    Vector<G> v = zero_vector<G>(11);
    for (int i = 0; i < j; ++i) v[static_cast<std::size_t>(offset + i)] = G(1);
    return v;
  };
  auto combo = [](Vector<G> base, std::initializer_list<std::pair<G, Vector<G>>> terms) {
    for (const auto& [c, v] : terms) axpy(base, c, v);
    return base;
  };
  check("u_3 = x_3 + (40/9)x_1 + (8/3)x_2 + 3x_5",
        same_ok && same->vectors[2].vector ==
                       combo(chain_x(3), {{q(40, 9), chain_x(1)}, {q(8, 3), chain_x(2)}, {q(3), chain_x(5)}}));
  check("u_4 = x_4 + (176/27)x_1 + (40/9)x_2 + 3x_6",
        same_ok && same->vectors[3].vector ==
                       combo(chain_x(4), {{q(176, 27), chain_x(1)}, {q(40, 9), chain_x(2)}, {q(3), chain_x(6)}}));

  const auto* other = r.find_chain(ChainCase::other_block, 1);
  const bool other_ok = other && other->vectors.size() == 3;
  check("v_2 = y_2 - (5/9)x_1 - (1/3)x_2",
        other_ok && other->coefficients.at(2, 1) == q(-5, 9) && other->coefficients.at(2, 2) == q(-1, 3) &&
            other->vectors[1].vector == combo(chain_at(6, 2), {{q(-5, 9), chain_x(1)}, {q(-1, 3), chain_x(2)}}));
  check("v_3 = y_3 - (22/27)x_1 - (5/9)x_2",
        other_ok && other->coefficients.at(3, 1) == q(-22, 27) && other->coefficients.at(3, 2) == q(-5, 9) &&
            other->vectors[2].vector == combo(chain_at(6, 3), {{q(-22, 27), chain_x(1)}, {q(-5, 9), chain_x(2)}}));

  const auto* distinct = r.find_chain(ChainCase::distinct_eigenvalue, 2);
  const bool distinct_ok = distinct && distinct->vectors.size() == 2;
  check("distinct coefficients beta_2^(1)=1/4, beta_1^(1)=-1/4, beta_2^(2)=0, beta_1^(2)=-1/4",
        distinct_ok && distinct->coefficients.at(1, 2) == q(1, 4) && distinct->coefficients.at(1, 1) == q(-1, 4) &&
            distinct->coefficients.at(2, 2) == q(0) && distinct->coefficients.at(2, 1) == q(-1, 4));
  check("w_2 = z_2 - (1/4)x_1",
        distinct_ok && distinct->vectors[1].vector == combo(chain_at(9, 2), {{q(-1, 4), chain_x(1)}}));

  JordanStructure expected;
  expected.entries = {{q(2), {4, 3}}, {q(1), {2}}, {q(3), {1}}, {q(-1), {1}}};
  check("Jordan form J_4(2) + J_3(2) + J_2(1) + J_1(3) + J_1(-1)",
        r.jordan && r.jordan->blocks() == expected.blocks());
  check("all oracle verdicts pass", r.passed);
  return out;
}

// ---- fuzzing ----

struct FuzzOptions {
  std::uint64_t seed = 1;
  int count = 100;
  int n_max = 6;
  Mode mode = Mode::exact;
  ComputeOptions compute;
  unsigned threads = 1;
};

struct FuzzOutcome {
  bool failed = false;
  int degenerate_chains = 0;
  int chains = 0;
  int vectors = 0;
  std::string reason;
};

struct FuzzSummary {
  FuzzOptions options;
  int passed = 0;
  int failed = 0;
  int degenerate_problems = 0;
  int degenerate_chains = 0;
  int chains_checked = 0;
  int vectors_checked = 0;
  std::vector<std::pair<int, std::string>> failures;  // sorted by index
};

inline RandomProblemOptions fuzz_generator_options(const FuzzOptions& opt) {
  RandomProblemOptions gen;
  gen.n_max = opt.n_max;
  if (opt.mode == Mode::float_ && opt.n_max > 8) {
    // Keep large similarities well conditioned.
    gen.similarity_multiplier = 1;
    gen.similarity_ops = opt.n_max;
  }
  return gen;
}

inline FuzzOutcome fuzz_one(const FuzzOptions& opt, int index) {
  FuzzOutcome out;
  auto rng = problem_rng(opt.seed, static_cast<std::uint64_t>(index));
  const PerturbationProblem problem = random_problem(rng, fuzz_generator_options(opt));
  auto tally = [&](const auto& report) {
    for (const auto& c : report.chains) {
      ++out.chains;
      out.vectors += static_cast<int>(c.vectors.size());
      if (c.degenerate) ++out.degenerate_chains;
      if (!c.passed() && out.reason.empty())
        out.reason = std::string(to_string(c.tag)) + " chain from block " + std::to_string(c.block) + ": " + c.verdict.reason;
    }
    if (!report.passed) {
      out.failed = true;
      if (out.reason.empty()) out.reason = "characteristic polynomial identity failed";
    }
  };
  try {
    if (opt.mode == Mode::exact)
      tally(compute<GaussScalar>(problem, opt.compute));
    else
      tally(compute<std::complex<double>>(problem, opt.compute));
  } catch (const std::exception& e) {
    out.failed = true;
    out.reason = e.what();
  }
  return out;
}

inline FuzzSummary run_fuzz(const FuzzOptions& opt) {
  if (opt.mode == Mode::exact && opt.n_max > 8) throw Error(ErrorKind::DimensionMismatch, "n_max must be <= 8 in exact mode");
  if (opt.n_max < 1) throw Error(ErrorKind::DimensionMismatch, "n_max must be >= 1");
  std::vector<FuzzOutcome> outcomes(static_cast<std::size_t>(std::max(opt.count, 0)));
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(outcomes.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < outcomes.size(); i += workers) outcomes[i] = fuzz_one(opt, static_cast<int>(i));
    });
  for (auto& t : pool) t.join();

  FuzzSummary s;
  s.options = opt;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    s.chains_checked += o.chains;
    s.vectors_checked += o.vectors;
    s.degenerate_chains += o.degenerate_chains;
    if (o.degenerate_chains > 0) ++s.degenerate_problems;
    if (o.failed) {
      ++s.failed;
      s.failures.emplace_back(static_cast<int>(i), o.reason);
    } else {
      ++s.passed;
    }
  }
  return s;
}

inline json encode_summary(const FuzzSummary& s) {
  json failures = json::array();
  for (const auto& [index, reason] : s.failures) failures.push_back({{"index", index}, {"reason", reason}});
  return {{"seed", s.options.seed},
          {"count", s.options.count},
          {"n_max", s.options.n_max},
          {"mode", to_string(s.options.mode)},
          {"passed", s.passed},
          {"failed", s.failed},
          {"degenerate_problems", s.degenerate_problems},
          {"degenerate_chains", s.degenerate_chains},
          {"chains_checked", s.chains_checked},
          {"vectors_checked", s.vectors_checked},
          {"failures", failures}};
}

// ---- verify ----

struct VerifyResult {
  ChainVerdict verdict;
  std::vector<std::optional<int>> ranks;
};

inline VerifyResult verify_vectors(const Matrix<GaussScalar>& m, const GaussScalar& eigenvalue,
                                   const std::vector<Vector<GaussScalar>>& vectors) {
  if (!m.square()) throw ParseError("matrix", "not square");
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].size() != m.rows())
      throw ParseError("vectors[" + std::to_string(i) + "]", "length " + std::to_string(vectors[i].size()) +
                                                                  ", expected " + std::to_string(m.rows()));
  VerifyResult r{verify_chain(m, eigenvalue, vectors), {}};
  for (const auto& v : vectors) r.ranks.push_back(is_zero_vector(v) ? std::nullopt : generalized_rank(m, eigenvalue, v));
  return r;
}

inline json encode_verify(const VerifyResult& r) {
  json ranks = json::array();
  for (const auto& k : r.ranks) ranks.push_back(k ? json(*k) : json(nullptr));
  json out = io::encode_verdict(r.verdict);
  out["ranks"] = ranks;
  out["status"] = r.verdict.pass ? "PASSED" : "FAILED";
  return out;
}

}  // namespace rankone::cli

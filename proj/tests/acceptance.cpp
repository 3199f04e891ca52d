// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rankone/worked_example.hpp"
#include "rankone/report.hpp"

using namespace rankone;
using G = GaussScalar;
using C = std::complex<double>;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

G q(long p, long d = 1) { return G(Rational(p, d)); }

Vector<G> combo(const Instance<G>& inst, std::size_t block, int t, std::initializer_list<std::pair<int, G>> terms) {
  Vector<G> v = inst.base.chain(block, t);
  for (const auto& [j, c] : terms) axpy(v, c, inst.x(j));
  return v;
}

std::vector<PerturbationProblem> problems(std::uint64_t seed, int count, const RandomProblemOptions& opt) {
  std::vector<PerturbationProblem> out;
  for (int i = 0; i < count; ++i) {
    auto rng = problem_rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(random_problem(rng, opt));
  }
  return out;
}

template <class S>
std::vector<Chain<S>> build_chains(const Instance<S>& inst, int& degenerate) {
  std::vector<Chain<S>> out;
  auto attempt = [&](auto build) {
    try {
      out.push_back(build());
    } catch (const DegenerateDenominator&) {
      ++degenerate;
    }
  };
  if (inst.m() < inst.r()) attempt([&] { return same_block_chain(inst); });
  for (std::size_t b = 0; b < inst.base.sizes.size(); ++b) {
    if (b == inst.source_block()) continue;
    if (scalar_traits<S>::is_zero(inst.base.eigenvalues[b] - inst.lambda()))
      attempt([&] { return other_block_chain(inst, b); });
    else
      attempt([&] { return distinct_eig_chain(inst, b); });
  }
  return out;
}

Outcome golden_values() {
  const auto inst = instantiate<G>(worked_example_problem());
  std::vector<std::string> bad;
  auto check = [&](const char* name, bool ok) {
    if (!ok) bad.emplace_back(name);
  };
  const auto factor = update_char_factor(inst);
  check("f", factor.f == Poly::from_shifted({q(-3), q(2), q(1)}, q(2)));
  const auto roots = new_eigenvalues(inst, RootMode::exact);
  check("eigenvalues", roots.size() == 2 && *roots[0].exact == q(-1) && *roots[1].exact == q(3));
  check("beta", same_block_beta(inst) == q(3));

  const auto u = same_block_chain(inst);
  check("u chain length", u.vectors.size() == 4);
  if (u.vectors.size() == 4) {
    check("beta_1^(3)", u.coefficients.at(3, 1) == q(40, 9));
    check("beta_1^(4)", u.coefficients.at(4, 1) == q(176, 27));
    check("u_3", u.vectors[2].vector == combo(inst, 0, 3, {{1, q(40, 9)}, {2, q(8, 3)}, {5, q(3)}}));
    check("u_4", u.vectors[3].vector == combo(inst, 0, 4, {{1, q(176, 27)}, {2, q(40, 9)}, {6, q(3)}}));
  }
  const auto v = other_block_chain(inst, 1);
  check("v chain length", v.vectors.size() == 3);
  if (v.vectors.size() == 3) {
    check("v_2", v.vectors[1].vector == combo(inst, 1, 2, {{1, q(-5, 9)}, {2, q(-1, 3)}}));
    check("v_3", v.vectors[2].vector == combo(inst, 1, 3, {{1, q(-22, 27)}, {2, q(-5, 9)}}));
  }
  const auto w = distinct_eig_chain(inst, 2);
  check("w chain length", w.vectors.size() == 2);
  if (w.vectors.size() == 2) {
    check("w_2", w.vectors[1].vector == combo(inst, 2, 2, {{1, q(-1, 4)}}));
    const auto& c = w.coefficients;
    check("w coefficients", c.at(1, 2) == q(1, 4) && c.at(1, 1) == q(-1, 4) && c.at(2, 2) == q(0) &&
                                c.at(2, 1) == q(-1, 4));
  }
  std::string detail = bad.empty() ? "all values exact" : "mismatch:";
  for (const auto& b : bad) detail += " " + b;
  return {bad.empty(), detail};
}

Outcome jordan_after_update() {
  const Matrix<G> m = apply_update(worked_example_problem());
  const std::vector<G> hints{q(2), q(1), q(3), q(-1)};
  const auto js = jordan_structure(m, exact_spectrum(m, hints));
  JordanStructure expected;
  expected.entries = {{q(2), {4, 3}}, {q(1), {2}}, {q(3), {1}}, {q(-1), {1}}};
  std::string got;
  for (const auto& [e, s] : js.blocks()) got += " J" + std::to_string(s) + "(" + e + ")";
  return {js.blocks() == expected.blocks(), "recovered" + got};
}

std::vector<PerturbationProblem> shared_problems() {
  RandomProblemOptions opt;
  opt.n_max = 8;
  return problems(kSeed, 1000, opt);
}

Outcome char_poly_identity(const std::vector<PerturbationProblem>& ps) {
  int failures = 0;
  for (const auto& p : ps)
    if (updated_char_poly(p) != char_poly_direct(apply_update(p))) ++failures;
  return {failures == 0, std::to_string(ps.size()) + " problems, " + std::to_string(failures) + " failures"};
}

Outcome chain_suite(const std::vector<PerturbationProblem>& ps) {
  int failures = 0, degenerate = 0, chains = 0, vectors = 0;
  for (const auto& p : ps) {
    const auto inst = instantiate<G>(p);
    const auto updated = apply_update(inst);
    for (const auto& chain : build_chains(inst, degenerate)) {
      ++chains;
      std::vector<Vector<G>> vs;
      for (const auto& v : chain.vectors) vs.push_back(v.vector);
      if (vs.empty()) continue;
      vectors += static_cast<int>(vs.size());
      bool ok = verify_chain(updated, chain.eigenvalue, vs).pass;
      for (const auto& v : chain.vectors) ok = ok && generalized_rank(updated, chain.eigenvalue, v.vector) == v.rank;
      if (!ok) ++failures;
    }
  }
  return {failures == 0, std::to_string(chains) + " chains, " + std::to_string(vectors) + " vectors, " +
                             std::to_string(degenerate) + " degenerate excluded, " + std::to_string(failures) +
                             " failures"};
}

Outcome brauer_case() {
  int failures = 0;
  auto ps = problems(kSeed + 5, 100, {});
  for (auto& p : ps) {
    p.source.rank = 1;
    const auto inst = instantiate<G>(p);
    const auto roots = new_eigenvalues(inst, RootMode::exact);
    const G expected = inst.lambda() + inst.source_moment(1);
    const bool ok = roots.size() == 1 && roots[0].multiplicity == 1 && *roots[0].exact == expected &&
                    char_poly_direct(apply_update(inst))(expected).is_zero();
    if (!ok) ++failures;
  }
  return {failures == 0, "100 instances, " + std::to_string(failures) + " failures"};
}

Outcome preservation() {
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    auto rng = problem_rng(kSeed + 6, static_cast<std::uint64_t>(i));
    auto p = random_problem(rng, {});
    p.b = random_orthogonal_b(rng, p, true);
    const auto inst = instantiate<G>(p);
    bool ok = updated_char_poly(p) == spec_char_poly(p.spec) &&
              char_poly_direct(apply_update(inst)) == spec_char_poly(p.spec);
    std::vector<Vector<G>> xs;
    for (int j = 1; j <= inst.m(); ++j) xs.push_back(inst.x(j));
    ok = ok && verify_chain(apply_update(inst), inst.lambda(), xs).pass;
    if (!ok) ++failures;
  }
  return {failures == 0, "100 instances, " + std::to_string(failures) + " failures"};
}

Outcome bound_check(const std::vector<PerturbationProblem>& ps) {
  int violations = 0, tight = 0;
  for (const auto& p : ps) {
    const auto inst = instantiate<G>(p);
    const int changed = count_new_distinct_roots(char_poly_direct(apply_update(inst)), spec_char_poly(p.spec));
    const int bound = changed_eigenvalue_bound(inst);
    if (changed > bound) ++violations;
    if (changed == bound) ++tight;
  }
  return {violations == 0, std::to_string(ps.size()) + " instances, " + std::to_string(violations) +
                               " violations, bound attained in " + std::to_string(tight)};
}

Outcome determinant_lemma() {
  std::mt19937_64 rng(kSeed + 8);
  int checked = 0, failures = 0, singular_skipped = 0;
  while (checked < 500) {
    const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 6)(rng));
    Matrix<G> a(n, n);
    Vector<G> x, b;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = random_entry(rng, true);
      x.push_back(random_entry(rng, true));
      b.push_back(random_entry(rng, true));
    }
    if (determinant_direct(a).is_zero()) {
      ++singular_skipped;
      continue;
    }
    if (det_rank1_update(a, x, b) != determinant_direct(a + outer(x, b))) ++failures;
    ++checked;
  }
  return {failures == 0, "500 invertible matrices, " + std::to_string(failures) + " failures (" +
                             std::to_string(singular_skipped) + " singular draws skipped)"};
}

Outcome float_residuals() {
  cli::FuzzOptions fo;
  fo.mode = cli::Mode::float_;
  fo.n_max = 50;
  const RandomProblemOptions gen = cli::fuzz_generator_options(fo);
  int failures = 0, degenerate = 0, vectors = 0, largest = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto rng = problem_rng(kSeed + 9, static_cast<std::uint64_t>(i));
    const auto p = random_problem(rng, gen);
    const auto inst = instantiate<C>(p);
    largest = std::max(largest, static_cast<int>(inst.dimension()));
    const auto updated = apply_update(inst);
    const double scale_a = frobenius_norm(inst.matrix()) + norm2(inst.x(inst.m())) * norm2(inst.b);
    for (const auto& chain : build_chains(inst, degenerate)) {
      Vector<C> prev = zero_vector<C>(inst.dimension());
      for (const auto& v : chain.vectors) {
        const double res = norm2(subtract(subtract(updated * v.vector, scale(v.vector, chain.eigenvalue)), prev));
        const double bound = scale_a * norm2(v.vector);
        worst = std::max(worst, res / bound);
        if (res > 1e-9 * bound) ++failures;
        ++vectors;
        prev = v.vector;
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", worst);
  return {failures == 0, "200 problems (n up to " + std::to_string(largest) + "), " + std::to_string(vectors) +
                             " vectors, worst ratio " + buf + ", " + std::to_string(degenerate) +
                             " degenerate excluded, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failed = 0;
  auto run = [&](int index, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    if (!o.pass) ++failed;
    std::printf("%s  %d. %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  run(1, "worked example golden values", 1.0, golden_values);
  run(2, "worked example Jordan structure", 5.0, jordan_after_update);
  const auto shared = shared_problems();
  run(3, "characteristic polynomial identity", 120.0, [&] { return char_poly_identity(shared); });
  run(4, "chain relation and exact ranks", 0.0, [&] { return chain_suite(shared); });
  run(5, "eigenvector update moves one eigenvalue to lambda + b*x_1", 0.0, brauer_case);
  run(6, "orthogonal update preserves spectrum and chain", 0.0, preservation);
  run(7, "changed eigenvalue count within bound", 0.0, [&] { return bound_check(shared); });
  run(8, "determinant lemma", 0.0, determinant_lemma);
  run(9, "float mode residuals", 0.0, float_residuals);

  std::printf("%s: %d of 9 criteria failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
  return failed == 0 ? 0 : 1;
}

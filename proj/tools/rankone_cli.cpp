// rankone: command-line front end for rank-one updates A + x_m b*.
//
//   rankone compute problem.json [--mode exact|float] [--chains ...] [--output out.json]
//   rankone verify --matrix M.json --eigenvalue 2 --vectors V.json
//   rankone example [--output out.json]
//   rankone fuzz --seed 1 --count 100 --n-max 6 [--mode exact|float] [--threads N]
//
// Exit status: 0 when every verdict passes, 1 when a verdict fails, 2 on
// malformed input or usage errors.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "rankone/report.hpp"

namespace {

using namespace rankone;
using cli::json;

constexpr int kFailed = 1;
constexpr int kBadInput = 2;

void emit(const json& j, const std::string& output) {
  const std::string text = j.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    io::write_text(output, text);
}

GaussScalar parse_scalar_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return io::codec<GaussScalar>::decode(json::parse(text), "eigenvalue");
    } catch (const json::exception& e) {
      throw ParseError("eigenvalue", e.what());
    }
  }
  try {
    return GaussScalar(Rational::parse(text));
  } catch (const Error&) {
    throw ParseError("eigenvalue", "expected \"p/q\" or {\"re\": \"p/q\", \"im\": \"p/q\"}, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalues and generalized-eigenvector chains of rank-one updates A + x_m b*"};
  app.require_subcommand(1);

  const std::map<std::string, cli::Mode> modes{{"exact", cli::Mode::exact}, {"float", cli::Mode::float_}};
  const std::map<std::string, cli::ChainSelection> selections{{"all", cli::ChainSelection::all},
                                                              {"same", cli::ChainSelection::same},
                                                              {"other", cli::ChainSelection::other},
                                                              {"distinct", cli::ChainSelection::distinct}};

  cli::Mode mode = cli::Mode::exact;
  cli::ComputeOptions compute_opts;
  std::string output;

  auto* compute = app.add_subcommand("compute", "Compute the update report for a problem file");
  std::string problem_path;
  compute->add_option("problem", problem_path, "Problem file (JSON)")->required();
  compute->add_option("--mode", mode, "exact or float")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  compute->add_option("--tolerance", compute_opts.tolerance, "Relative residual tolerance (float mode)");
  compute->add_option("--chains", compute_opts.chains, "all, same, other or distinct")
      ->transform(CLI::CheckedTransformer(selections, CLI::ignore_case));
  compute->add_option("--output", output, "Write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Check user-supplied vectors for the chain relation");
  std::string matrix_path, vectors_path, eigenvalue_text;
  verify->add_option("--matrix", matrix_path, "Matrix file: array of rows")->required();
  verify->add_option("--vectors", vectors_path, "Vectors file: array of vectors, rank order")->required();
  verify->add_option("--eigenvalue", eigenvalue_text, "\"p/q\" or {\"re\":..,\"im\":..}")->required();
  verify->add_option("--output", output, "Write the verdict here instead of stdout");

  auto* example = app.add_subcommand("example", "Reproduce the built-in 11x11 worked example");
  example->add_option("--output", output, "Write the report here instead of stdout");

  auto* fuzz = app.add_subcommand("fuzz", "Differential-test random problems against the oracle");
  cli::FuzzOptions fuzz_opts;
  fuzz->add_option("--seed", fuzz_opts.seed, "Random seed");
  fuzz->add_option("--count", fuzz_opts.count, "Number of problems")->check(CLI::NonNegativeNumber);
  fuzz->add_option("--n-max", fuzz_opts.n_max, "Largest dimension (<= 8 in exact mode)")->check(CLI::PositiveNumber);
  fuzz->add_option("--mode", mode, "exact or float")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  fuzz->add_option("--tolerance", compute_opts.tolerance, "Relative residual tolerance (float mode)");
  fuzz->add_option("--chains", compute_opts.chains, "all, same, other or distinct")
      ->transform(CLI::CheckedTransformer(selections, CLI::ignore_case));
  fuzz->add_option("--threads", fuzz_opts.threads, "Worker threads")->check(CLI::PositiveNumber);
  fuzz->add_option("--output", output, "Write the summary here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (*compute) {
      const auto problem = io::decode_problem(io::read_json_file(problem_path));
      bool passed = false;
      if (mode == cli::Mode::exact) {
        const auto report = cli::compute<GaussScalar>(problem, compute_opts);
        emit(cli::encode_report(report), output);
        passed = report.passed;
      } else {
        const auto report = cli::compute<std::complex<double>>(problem, compute_opts);
        emit(cli::encode_report(report), output);
        passed = report.passed;
      }
      return passed ? 0 : kFailed;
    }
    if (*verify) {
      const auto m = io::decode_matrix<GaussScalar>(io::read_json_file(matrix_path), "matrix");
      const auto vj = io::read_json_file(vectors_path);
      if (!vj.is_array()) throw ParseError("vectors", "expected an array of vectors");
      std::vector<Vector<GaussScalar>> vectors;
      for (std::size_t i = 0; i < vj.size(); ++i)
        vectors.push_back(io::decode_vector<GaussScalar>(vj[i], "vectors[" + std::to_string(i) + "]"));
      if (vectors.empty()) throw ParseError("vectors", "no vectors supplied");
      const auto result = cli::verify_vectors(m, parse_scalar_arg(eigenvalue_text), vectors);
      emit(cli::encode_verify(result), output);
      return result.verdict.pass ? 0 : kFailed;
    }
    if (*example) {
      const auto report = cli::compute<GaussScalar>(worked_example_problem());
      json j = cli::encode_report(report);
      bool all = true;
      json golden = json::array();
      for (const auto& c : cli::worked_example_checks(report)) {
        golden.push_back({{"check", c.name}, {"pass", c.pass}});
        all = all && c.pass;
      }
      j["golden"] = golden;
      emit(j, output);
      return all ? 0 : kFailed;
    }
    if (*fuzz) {
      fuzz_opts.mode = mode;
      fuzz_opts.compute = compute_opts;
      const auto summary = cli::run_fuzz(fuzz_opts);
      emit(cli::encode_summary(summary), output);
      return summary.failed == 0 ? 0 : kFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::DimensionMismatch || e.kind() == ErrorKind::LocatorOutOfRange ? kBadInput : kFailed;
  }
  return 0;
}

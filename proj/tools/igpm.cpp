// igpm: command-line front end for the inexact gradient projection solvers.
//
//   igpm solve   one run, per-iteration trace CSV
//   igpm bench   averaged report CSV over runs, variants and gammas
//   igpm project one projection with its certificate
//   igpm gen     write instance files
//   igpm verify  reference-oracle suite
//
// Exit codes: 0 ok, 1 usage error, 2 a run did not converge, 3 internal or
// contract failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "igpm/errors.hpp"
#include "igpm/harness/experiment.hpp"
#include "igpm/harness/verify.hpp"
#include "igpm/io.hpp"
#include "igpm/l1_projection.hpp"

namespace {

using namespace igpm;
using namespace igpm::harness;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNotConverged = 2;
constexpr int kInternal = 3;

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes to --out when given, stdout otherwise.
template <class Fn>
void with_output(const std::optional<std::filesystem::path>& path, Fn&& fn) {
  if (!path) {
    fn(std::cout);
    return;
  }
  std::ofstream out(*path);
  if (!out) throw UsageError("out: cannot open '" + path->string() + "' for writing");
  fn(out);
  if (!out) throw UsageError("out: write to '" + path->string() + "' failed");
}

int run_solve(const ExperimentConfig& cfg) {
  if (cfg.variants.size() != 1) throw UsageError("algo: solve takes exactly one algorithm");
  const auto plan = pairings(cfg);
  if (plan.size() != 1) throw UsageError("gamma: solve takes exactly one gamma");
  const auto [variant, gamma] = plan.front();
  const auto inst = make_instance(cfg, 0);
  const LeastSquares objective(inst);
  const double lipschitz = uses_line_search(variant) ? 0.0 : lipschitz_estimate(inst);
  auto sc = solver_config_for(cfg, variant, gamma, lipschitz);
  sc.seed = cfg.seed;
  SolveResult result;
  try {
    result = solve(objective, inst.tau, sc);
  } catch (const std::exception& e) {
    throw ExperimentError(variant, gamma, cfg.seed, e.what());
  }
  with_output(cfg.out, [&](std::ostream& out) { emit_trace_csv(result.trace, out); });
  std::cerr << to_string(variant) << " gamma=" << gamma << " outer=" << result.outer_iterations
            << " inner=" << result.trace.total_inner << " f=" << result.f
            << " E=" << result.final_residual << (result.converged ? "" : " NOT CONVERGED")
            << '\n';
  return result.converged ? kOk : kNotConverged;
}

int run_bench(const ExperimentConfig& cfg) {
  const auto rows = run_experiment(cfg);
  with_output(cfg.out, [&](std::ostream& out) { emit_csv(rows, out); });
  for (const auto& r : rows) {
    if (r.nonconverged > 0) return kNotConverged;
  }
  return kOk;
}

int run_gen(const ExperimentConfig& cfg) {
  if (cfg.from_files()) throw UsageError("matrix: gen writes instances, it does not read them");
  if (!cfg.out) throw UsageError("out: gen needs an output prefix");
  write_instance(*cfg.out, make_instance(cfg, 0));
  return kOk;
}

struct ProjectOptions {
  std::string v;
  std::string v_file;
  double tau = 1.0;
  double gamma = 1.0;
  double omega = 0.0;
};

DenseVector parse_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::logic_error&) {
      throw UsageError("v: malformed value '" + piece + "'");
    }
  }
  if (values.empty()) throw UsageError("v: empty vector");
  return DenseVector(std::move(values));
}

int run_project(const ProjectOptions& opt) {
  if (opt.v.empty() == opt.v_file.empty()) throw UsageError("v: give exactly one of --v, --v-file");
  if (!(opt.tau > 0.0)) throw UsageError("tau: must be positive");
  if (!(opt.gamma > 0.0 && opt.gamma <= 1.0)) throw UsageError("gamma: must lie in (0, 1]");
  if (!(opt.omega >= 0.0)) throw UsageError("omega: must be >= 0");
  auto v = opt.v.empty() ? io::read_vector(opt.v_file) : parse_reals(opt.v);
  // x = 0, β = 1, g = −v gives the subproblem centred at v.
  DenseVector g(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) g[i] = -v[i];
  const SubproblemContext ctx(DenseVector(v.size()), std::move(g), 1.0, opt.tau, opt.omega);
  const auto result = project_l1_inexact(ctx, opt.gamma);
  std::cout << "# inner_iterations = " << result.inner_iterations << '\n'
            << "# exact = " << (result.exact ? "true" : "false") << '\n'
            << "# ratio = " << (result.ratio_final ? real(*result.ratio_final) : "n/a") << '\n'
            << "# p_z = " << real(result.certificate.p_z) << '\n'
            << "# q_u = " << real(result.certificate.q_u) << '\n'
            << "# l1_norm = " << real(norm1(result.z)) << '\n';
  io::write_vector(std::cout, result.z);
  return kOk;
}

int run_verify(std::uint64_t seed) {
  bool all = true;
  for (const auto& check : run_oracle_suite(seed)) {
    std::cout << (check.report.pass ? "PASS " : "FAIL ") << check.name
              << " max_dev=" << check.report.max_abs_deviation;
    if (check.report.tolerance > 0.0) std::cout << " tol=" << check.report.tolerance;
    if (!check.report.detail.empty()) std::cout << " (" << check.report.detail << ')';
    std::cout << '\n';
    all = all && check.report.pass;
  }
  return all ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inexact gradient projection onto the l1 ball"};
  app.require_subcommand(1);

  RawOptions solve_raw, bench_raw, gen_raw;
  auto* solve_cmd = app.add_subcommand("solve", "Single run; prints the iteration trace CSV");
  add_experiment_options(*solve_cmd, solve_raw);
  auto* bench_cmd = app.add_subcommand("bench", "Averaged report over runs, algorithms, gammas");
  add_experiment_options(*bench_cmd, bench_raw);
  auto* gen_cmd = app.add_subcommand("gen", "Write <out>.mtx, .b.txt, .xtrue.txt and .meta");
  add_experiment_options(*gen_cmd, gen_raw);

  ProjectOptions project_opt;
  auto* project_cmd = app.add_subcommand("project", "Project one vector onto the l1 ball");
  project_cmd->add_option("--v", project_opt.v, "Comma-separated entries");
  project_cmd->add_option("--v-file", project_opt.v_file, "Vector file, one value per line");
  project_cmd->add_option("--tau", project_opt.tau, "Ball radius");
  project_cmd->add_option("--gamma", project_opt.gamma, "Gate threshold; 1 projects exactly");
  project_cmd->add_option("--omega", project_opt.omega, "Gate relaxation");

  std::uint64_t verify_seed = 2024;
  auto* verify_cmd = app.add_subcommand("verify", "Run the reference-oracle suite");
  verify_cmd->add_option("--seed", verify_seed, "Seed for the random problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(finalize(solve_raw));
    if (*bench_cmd) return run_bench(finalize(bench_raw));
    if (*gen_cmd) return run_gen(finalize(gen_raw));
    if (*project_cmd) return run_project(project_opt);
    if (*verify_cmd) return run_verify(verify_seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ExperimentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

#include "igpm/harness/experiment.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "igpm/errors.hpp"
#include "igpm/io.hpp"

namespace igpm::harness {

ExperimentError::ExperimentError(Variant variant, double gamma, std::uint64_t seed,
                                 const std::string& what)
    : std::runtime_error("solve failed (alg=" + std::string(to_string(variant)) +
                         ", gamma=" + std::to_string(gamma) + ", seed=" + std::to_string(seed) +
                         "): " + what),
      variant(variant),
      gamma(gamma),
      seed(seed) {}

double ExperimentConfig::resolved_tau() const {
  if (tau) return *tau;
  if (!n || !s) throw UsageError("tau: need --tau, or --n and --s for a preset");
  return tau_for_preset(tau_preset, *n, *s);
}

std::vector<std::pair<Variant, double>> pairings(const ExperimentConfig& cfg) {
  std::vector<std::pair<Variant, double>> out;
  for (auto v : cfg.variants) {
    if (is_exact(v)) {
      out.emplace_back(v, 1.0);
      continue;
    }
    bool any = false;
    for (double g : cfg.gammas) {
      if (g < 1.0) {
        out.emplace_back(v, g);
        any = true;
      }
    }
    if (!any) {
      throw UsageError("gamma: inexact algorithm '" + std::string(to_string(v)) +
                       "' needs at least one gamma < 1");
    }
  }
  return out;
}

ProblemInstance make_instance(const ExperimentConfig& cfg, std::size_t run_index) {
  if (cfg.from_files()) {
    ProblemInstance inst;
    inst.a = io::read_matrix_market(*cfg.matrix);
    inst.b = io::read_vector(*cfg.rhs);
    if (inst.b.size() != inst.rows()) {
      throw UsageError("rhs: vector length " + std::to_string(inst.b.size()) +
                       " differs from matrix rows " + std::to_string(inst.rows()));
    }
    if (!cfg.tau) throw UsageError("tau: --tau is required with --matrix/--rhs");
    inst.tau = *cfg.tau;
    return inst;
  }
  InstanceSpec spec;
  spec.n = *cfg.n;
  spec.m = *cfg.m;
  spec.s = *cfg.s;
  spec.dense = !cfg.sparse;
  spec.density = cfg.density;
  spec.tau_preset = cfg.tau_preset;
  spec.tau = cfg.tau;
  spec.seed = cfg.seed + run_index;
  return generate_instance(spec);
}

SolverConfig solver_config_for(const ExperimentConfig& cfg, Variant variant, double gamma,
                               double lipschitz) {
  SolverConfig sc = cfg.solver;
  sc.variant = variant;
  sc.gamma = gamma;
  if (!uses_line_search(variant)) sc.beta = 0.8 / lipschitz;
  return sc;
}

namespace {

struct Accumulator {
  double time = 0.0, outer = 0.0, inner = 0.0, backtracks = 0.0, residual = 0.0, f = 0.0;
  std::size_t converged = 0;
  std::size_t nonconverged = 0;
};

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw UsageError("runs: must be >= 1");
  const auto plan = pairings(cfg);
  const bool needs_lipschitz = std::any_of(plan.begin(), plan.end(), [](const auto& p) {
    return !uses_line_search(p.first);
  });
  std::vector<Accumulator> acc(plan.size());

  for (std::size_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t seed = cfg.seed + run;
    const auto inst = make_instance(cfg, run);
    const LeastSquares objective(inst);
    const double lipschitz = needs_lipschitz ? lipschitz_estimate(inst) : 0.0;
    for (std::size_t p = 0; p < plan.size(); ++p) {
      const auto [variant, gamma] = plan[p];
      auto sc = solver_config_for(cfg, variant, gamma, lipschitz);
      sc.seed = seed;
      SolveResult result;
      const auto start = std::chrono::steady_clock::now();
      try {
        result = solve(objective, inst.tau, sc);
      } catch (const ContractViolation& e) {
        throw ExperimentError(variant, gamma, seed, e.what());
      } catch (const InternalError& e) {
        throw ExperimentError(variant, gamma, seed, e.what());
      } catch (const DegenerateDirection& e) {
        throw ExperimentError(variant, gamma, seed, e.what());
      }
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      auto& a = acc[p];
      if (!result.converged) {
        ++a.nonconverged;
        continue;
      }
      ++a.converged;
      a.time += cfg.timing ? elapsed : 0.0;
      a.outer += static_cast<double>(result.outer_iterations);
      a.inner += static_cast<double>(result.trace.total_inner);
      a.backtracks += static_cast<double>(result.trace.total_backtracks);
      a.residual += result.final_residual;
      a.f += result.f;
    }
  }

  std::vector<ReportRow> rows;
  for (std::size_t p = 0; p < plan.size(); ++p) {
    const auto& a = acc[p];
    const double count = a.converged > 0 ? static_cast<double>(a.converged) : std::nan("");
    ReportRow row;
    row.alg = std::string(to_string(plan[p].first));
    row.gamma = plan[p].second;
    row.time_s = a.time / count;
    row.outer_k = a.outer / count;
    row.inner_j = a.inner / count;
    row.backtracks = a.backtracks / count;
    row.final_residual = a.residual / count;
    row.f_final = a.f / count;
    row.nonconverged = a.nonconverged;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string six(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string ten(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  require(!rows.empty(), "emit_csv: no rows to write");
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << r.alg << ',' << six(r.gamma) << ',' << six(r.time_s) << ',' << six(r.outer_k) << ','
        << six(r.inner_j) << ',' << six(r.backtracks) << ',' << six(r.final_residual) << ','
        << six(r.f_final) << ',' << r.nonconverged << '\n';
  }
}

void emit_csv(const std::vector<ReportRow>& rows, const std::filesystem::path& path) {
  require(!rows.empty(), "emit_csv: no rows to write");
  std::ofstream out(path);
  if (!out) throw UsageError("out: cannot open '" + path.string() + "' for writing");
  emit_csv(rows, out);
  if (!out) throw UsageError("out: write to '" + path.string() + "' failed");
}

std::vector<ReportRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw UsageError("report CSV: unexpected header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw UsageError("report CSV: expected 9 fields, got " + line);
    ReportRow r;
    r.alg = fields[0];
    r.gamma = std::stod(fields[1]);
    r.time_s = std::stod(fields[2]);
    r.outer_k = std::stod(fields[3]);
    r.inner_j = std::stod(fields[4]);
    r.backtracks = std::stod(fields[5]);
    r.final_residual = std::stod(fields[6]);
    r.f_final = std::stod(fields[7]);
    r.nonconverged = std::stoull(fields[8]);
    rows.push_back(r);
  }
  return rows;
}

void emit_trace_csv(const SolverTrace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.iterations) {
    out << r.k << ',' << ten(r.f) << ',' << ten(r.resid) << ',' << r.inner << ',' << r.backtracks
        << ',' << ten(r.alpha) << ',' << ten(r.beta) << ',' << ten(r.omega) << ','
        << (r.ratio ? ten(*r.ratio) : std::string{}) << '\n';
  }
}

void add_experiment_options(CLI::App& app, RawOptions& raw) {
  app.set_config("--config", "", "Flat key = value file; flags on the command line win");
  app.allow_config_extras(false);
  app.add_option("--n", raw.n, "Signal dimension");
  app.add_option("--m", raw.m, "Number of measurements");
  app.add_option("--s", raw.s, "Nonzeros in the ground truth");
  app.add_flag("--sparse", raw.sparse, "Sparse Gaussian measurement matrix");
  app.add_option("--density", raw.density, "Sparse density (default n/(1000m))");
  app.add_option("--tau-preset", raw.tau_preset, "Radius preset: paper (n-s) or tight (s)")
      ->check(CLI::IsMember({"paper", "tight"}));
  app.add_option("--tau", raw.tau, "Explicit l1-ball radius");
  app.add_option("--algo", raw.algo, "Algorithms: gpm1,gpm2,igpm1,igpm2")->delimiter(',');
  app.add_option("--gamma", raw.gamma, "Gate thresholds in (0,1]")->delimiter(',');
  app.add_option("--runs", raw.runs, "Runs per (algorithm, gamma)");
  app.add_option("--seed", raw.seed, "Base seed; run r uses seed + r");
  app.add_option("--beta", raw.beta, "Projection stepsize for line-search variants");
  app.add_option("--eta", raw.eta, "Armijo slope fraction");
  app.add_option("--theta", raw.theta, "Backtracking shrink factor");
  app.add_option("--alpha0", raw.alpha0, "Initial trial step");
  app.add_option("--omega0", raw.omega0, "Initial gate relaxation");
  app.add_option("--eps", raw.eps, "Stopping tolerance on ||z - x||_inf");
  app.add_option("--max-outer", raw.max_outer, "Outer iteration cap");
  app.add_option("--bb", raw.bb, "Barzilai-Borwein stepsizes: off, bb1, bb2")
      ->check(CLI::IsMember({"off", "bb1", "bb2"}));
  app.add_option("--out", raw.out, "Output path");
  app.add_option("--matrix", raw.matrix, "Matrix Market file for A");
  app.add_option("--rhs", raw.rhs, "Plain-text vector file for b");
  app.add_flag("--no-timing", raw.no_timing, "Write time_s as 0 (reproducible reports)");
}

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      const auto b = piece.find_first_not_of(" \t[]\"'");
      const auto e = piece.find_last_not_of(" \t[]\"'");
      if (b != std::string::npos) out.push_back(piece.substr(b, e - b + 1));
    }
  }
  return out;
}

void check(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw UsageError(key + ": " + message);
}

}  // namespace

ExperimentConfig finalize(const RawOptions& raw) {
  ExperimentConfig cfg;
  cfg.n = raw.n;
  cfg.m = raw.m;
  cfg.s = raw.s;
  cfg.sparse = raw.sparse;
  cfg.density = raw.density;
  cfg.tau_preset = raw.tau_preset == "paper" ? TauPreset::paper : TauPreset::tight;
  cfg.tau = raw.tau;
  cfg.seed = raw.seed;
  cfg.runs = raw.runs;
  cfg.timing = !raw.no_timing;
  if (raw.out) cfg.out = *raw.out;
  if (raw.matrix) cfg.matrix = *raw.matrix;
  if (raw.rhs) cfg.rhs = *raw.rhs;

  if (cfg.matrix || cfg.rhs) {
    check(cfg.matrix && cfg.rhs, "matrix", "--matrix and --rhs must be given together");
    check(cfg.tau.has_value(), "tau", "required with --matrix/--rhs");
  } else {
    check(cfg.n.has_value(), "n", "required unless --matrix/--rhs are given");
    check(cfg.m.has_value(), "m", "required unless --matrix/--rhs are given");
    check(cfg.s.has_value(), "s", "required unless --matrix/--rhs are given");
    check(*cfg.n >= 1, "n", "must be >= 1");
    check(*cfg.m >= 1, "m", "must be >= 1");
    check(*cfg.s >= 1 && *cfg.s <= *cfg.n, "s", "must satisfy 1 <= s <= n");
    if (cfg.tau_preset == TauPreset::paper && !cfg.tau) {
      check(*cfg.s < *cfg.n, "tau-preset", "paper preset needs s < n (tau = n - s)");
    }
    if (!cfg.tau) cfg.tau = cfg.resolved_tau();
  }
  check(!cfg.tau || *cfg.tau > 0.0, "tau", "must be positive");
  if (cfg.density) check(*cfg.density > 0.0 && *cfg.density <= 1.0, "density", "must lie in (0, 1]");
  check(cfg.runs >= 1, "runs", "must be >= 1");

  if (!raw.algo.empty()) {
    cfg.variants.clear();
    for (const auto& name : split_list(raw.algo)) {
      const auto v = parse_variant(name);
      check(v.has_value(), "algo", "unknown algorithm '" + name + "'");
      cfg.variants.push_back(*v);
    }
    check(!cfg.variants.empty(), "algo", "empty list");
  }
  if (!raw.gamma.empty()) {
    cfg.gammas.clear();
    for (const auto& text : split_list(raw.gamma)) {
      double g = 0.0;
      try {
        std::size_t used = 0;
        g = std::stod(text, &used);
        check(used == text.size(), "gamma", "malformed value '" + text + "'");
      } catch (const std::logic_error&) {
        throw UsageError("gamma: malformed value '" + text + "'");
      }
      check(g > 0.0 && g <= 1.0, "gamma", "values must lie in (0, 1], got " + text);
      cfg.gammas.push_back(g);
    }
    check(!cfg.gammas.empty(), "gamma", "empty list");
  }

  auto& sc = cfg.solver;
  sc.beta = raw.beta;
  sc.eta = raw.eta;
  sc.theta = raw.theta;
  sc.alpha0 = raw.alpha0;
  sc.omega0 = raw.omega0;
  sc.eps = raw.eps;
  sc.max_outer = raw.max_outer;
  sc.bb_mode = *parse_bb_mode(raw.bb);
  check(sc.beta > 0.0, "beta", "must be positive");
  check(sc.eta > 0.0 && sc.eta < 1.0, "eta", "must lie in (0, 1)");
  check(sc.theta > 0.0 && sc.theta < 1.0, "theta", "must lie in (0, 1)");
  check(sc.alpha0 > 0.0 && sc.alpha0 <= 1.0, "alpha0", "must lie in (0, 1]");
  check(sc.omega0 >= 0.0, "omega0", "must be >= 0");
  check(sc.eps > 0.0, "eps", "must be positive");
  check(sc.max_outer >= 1, "max-outer", "must be >= 1");
  if (sc.bb_mode != BBMode::off) {
    check(sc.beta_min <= sc.beta && sc.beta <= sc.beta_max, "beta",
          "must lie in the BB truncation interval [1e-6, 1e6]");
  }
  pairings(cfg);
  return cfg;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"igpm experiment"};
  RawOptions raw;
  add_experiment_options(app, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return finalize(raw);
}

}  // namespace igpm::harness

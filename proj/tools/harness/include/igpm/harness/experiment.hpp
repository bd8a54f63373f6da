#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "igpm/objectives.hpp"
#include "igpm/solver.hpp"

namespace CLI {
class App;
}

namespace igpm::harness {

/// Malformed or missing command-line/config input. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solve failed on a contract or internal check. Carries the offending
/// (variant, γ, seed). Exit code 3.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(Variant variant, double gamma, std::uint64_t seed, const std::string& what);
  Variant variant;
  double gamma;
  std::uint64_t seed;
};

struct ExperimentConfig {
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> s;
  bool sparse = false;
  std::optional<double> density;
  TauPreset tau_preset = TauPreset::tight;
  /// Explicit radius; otherwise derived from the preset.
  std::optional<double> tau;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> matrix;
  std::optional<std::filesystem::path> rhs;

  std::vector<Variant> variants{Variant::gpm1, Variant::gpm2, Variant::igpm1, Variant::igpm2};
  std::vector<double> gammas{0.6, 0.7, 0.8, 0.9};
  std::size_t runs = 20;
  /// beta here is the line-search variants' β; fixed-step variants use
  /// 0.8/λ̂ per instance.
  SolverConfig solver;
  std::optional<std::filesystem::path> out;
  /// When false, time_s is written as 0 so reports are byte-reproducible.
  bool timing = true;

  bool from_files() const { return matrix.has_value(); }
  /// τ for generated instances: explicit value or preset.
  double resolved_tau() const;
};

/// (variant, γ) pairs in report order. Exact variants run once with γ = 1;
/// inexact variants run with every γ < 1 of the list.
std::vector<std::pair<Variant, double>> pairings(const ExperimentConfig& cfg);

struct ReportRow {
  std::string alg;
  double gamma = 1.0;
  double time_s = 0.0;
  double outer_k = 0.0;
  double inner_j = 0.0;
  double backtracks = 0.0;
  double final_residual = 0.0;
  double f_final = 0.0;
  std::size_t nonconverged = 0;
};

inline constexpr const char* kReportHeader =
    "alg,gamma,time_s,outer_k,inner_j,backtracks,final_residual,f_final,nonconverged";
inline constexpr const char* kTraceHeader = "k,f,resid_inf,inner,backtracks,alpha,beta,omega,ratio";

/// Instance for run `run_index` (seed = cfg.seed + run_index), or the
/// instance read from --matrix/--rhs.
ProblemInstance make_instance(const ExperimentConfig& cfg, std::size_t run_index);

/// Solver configuration for one (variant, γ) on one instance. Fixed-step
/// variants get β = 0.8/λ̂ where λ̂ = lipschitz_estimate(inst).
SolverConfig solver_config_for(const ExperimentConfig& cfg, Variant variant, double gamma,
                               double lipschitz);

/// Runs every pairing `runs` times and averages over converged runs.
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ReportRow>& rows, const std::filesystem::path& path);
std::vector<ReportRow> parse_csv(std::istream& in);

void emit_trace_csv(const SolverTrace& trace, std::ostream& out);

/// Raw option storage bound to CLI11; `finalize` validates and converts.
struct RawOptions {
  std::optional<std::size_t> n, m, s;
  bool sparse = false;
  std::optional<double> density;
  std::string tau_preset = "tight";
  std::optional<double> tau;
  std::vector<std::string> algo;
  std::vector<std::string> gamma;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  double beta = 0.01, eta = 0.01, theta = 0.7, alpha0 = 1.0, omega0 = 1e-3, eps = 1e-4;
  std::size_t max_outer = 10000;
  std::string bb = "off";
  std::optional<std::string> out, matrix, rhs;
  bool no_timing = false;
};

/// Registers the experiment flags (and --config) on a CLI11 app.
void add_experiment_options(CLI::App& app, RawOptions& raw);

/// Validates raw options. Throws UsageError naming the offending key.
ExperimentConfig finalize(const RawOptions& raw);

/// Parses flags (without program name or subcommand). Flags override values
/// from `--config <file>` (flat `key = value` lines, `#` comments); unknown
/// keys are rejected.
ExperimentConfig parse_config(const std::vector<std::string>& args);

}  // namespace igpm::harness

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "igpm/linalg.hpp"
#include "igpm/objectives.hpp"

namespace igpm {

/// gpm1/igpm1 take fixed steps x ← z; gpm2/igpm2 backtrack along z − x.
/// The gpm variants project exactly, the igpm variants stop the projection
/// through the duality gate.
enum class Variant { gpm1, gpm2, igpm1, igpm2 };

enum class BBMode { off, bb1, bb2 };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
std::string_view to_string(BBMode m);
std::optional<BBMode> parse_bb_mode(std::string_view name);

inline bool uses_line_search(Variant v) { return v == Variant::gpm2 || v == Variant::igpm2; }
inline bool is_exact(Variant v) { return v == Variant::gpm1 || v == Variant::gpm2; }

struct SolverConfig {
  Variant variant = Variant::igpm1;
  /// Gate threshold in (0, 1]. Exact variants always run with 1.
  double gamma = 0.8;
  double omega0 = 1e-3;
  /// Fixed stepsize (gpm1/igpm1, should satisfy β ≤ 1/L) or projection
  /// stepsize for the line-search variants.
  double beta = 0.01;
  double eta = 0.01;
  double theta = 0.7;
  double alpha0 = 1.0;
  double eps = 1e-4;
  NormKind stop_norm = NormKind::linf;
  std::size_t max_outer = 10000;
  /// Hyperplane-step cap per projection; n + 1 when unset.
  std::optional<std::size_t> max_inner;
  /// Line-search variants only.
  BBMode bb_mode = BBMode::off;
  double beta_min = 1e-6;
  double beta_max = 1e6;
  /// Not consumed by the solvers; carried so traces identify their instance.
  std::uint64_t seed = 0;
  /// Record E(x_k; β) every iteration (one extra exact projection each).
  bool track_residuals = false;

  double effective_gamma() const { return is_exact(variant) ? 1.0 : gamma; }
  /// Throws ContractViolation on out-of-range parameters.
  void validate() const;
};

inline constexpr std::size_t kMaxBacktracks = 100;

struct IterationRecord {
  std::size_t k = 0;
  double f = 0.0;
  double resid = 0.0;
  std::size_t inner = 0;
  std::size_t backtracks = 0;
  double alpha = 1.0;
  double beta = 0.0;
  double omega = 0.0;
  std::optional<double> ratio;
  /// Subproblem reduction Δp(z_k; x_k); vanishes along a convergent run.
  double delta_p = 0.0;
  /// g_kᵀd_k and ‖d_k‖₂² with d_k = z_k − x_k.
  double gtd = 0.0;
  double d_norm_sq = 0.0;
  /// E(x_k; β_k) when residual tracking is on.
  std::optional<double> residual;
};

struct SolverTrace {
  std::vector<IterationRecord> iterations;
  std::size_t total_inner = 0;
  std::size_t total_backtracks = 0;
  double wall_seconds = 0.0;
  /// Mean of the tracked residuals, when tracking is on.
  std::optional<double> ergodic_residual;
};

struct SolveResult {
  DenseVector x;
  double f = 0.0;
  bool converged = false;
  std::size_t outer_iterations = 0;
  /// E(x; β) at the returned point, exact projection.
  double final_residual = 0.0;
  SolverTrace trace;
};

/// Fixed-stepsize method: x_{k+1} = z_k, where z_k is the (in)exact
/// projection of x_k − β∇f(x_k). Stops when ‖z_k − x_k‖ ≤ ε or after
/// max_outer iterations. x0 defaults to the origin.
SolveResult solve_igpm(const Objective& f, double tau, const SolverConfig& config,
                       std::optional<DenseVector> x0 = std::nullopt);

/// Line-search method: d_k = z_k − x_k, α_k the largest θ^i·α₀ satisfying
/// f(x_k + αd_k) ≤ f(x_k) + ηα g_kᵀd_k, x_{k+1} = x_k + α_k d_k. Same
/// stopping rule. Throws DegenerateDirection after kMaxBacktracks reductions.
SolveResult solve_igpm_ls(const Objective& f, double tau, const SolverConfig& config,
                          std::optional<DenseVector> x0 = std::nullopt);

/// Dispatches on config.variant.
SolveResult solve(const Objective& f, double tau, const SolverConfig& config,
                  std::optional<DenseVector> x0 = std::nullopt);

/// Barzilai–Borwein stepsize from s = x_k − x_{k−1}, y = g_k − g_{k−1},
/// clamped to [beta_min, beta_max]; beta_max when sᵀy ≤ 0.
double bb_stepsize(std::span<const double> s, std::span<const double> y, BBMode mode,
                   double beta_min, double beta_max);

/// E(x; β) = ‖x − P(x − βg)‖₂² with the exact ℓ1-ball projection.
double optimality_residual(std::span<const double> x, std::span<const double> g, double beta,
                           double tau);

/// Arithmetic mean; empty input is a contract violation.
double ergodic_average(std::span<const double> residuals);

}  // namespace igpm

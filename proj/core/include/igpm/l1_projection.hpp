#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "igpm/duality_gate.hpp"
#include "igpm/linalg.hpp"

namespace igpm {

/// Primal and dual subproblem values of a returned projection, evaluated at
/// z and at the dual estimate u = v − z.
struct Certificate {
  double p_z = 0.0;
  double q_u = 0.0;
};

struct ProjectionResult {
  DenseVector z;
  std::size_t inner_iterations = 0;
  bool exact = false;
  /// Gate ratio at the returned point; 1 for exact results.
  std::optional<double> ratio_final;
  Certificate certificate;
  /// Ratio evaluated after each hyperplane step (inexact path only).
  std::vector<std::optional<double>> ratio_history;
};

/// Sign partition of a working vector.
struct SignPartition {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> zero;
  std::vector<std::size_t> minus;
};

/// Projects y onto {w : Σw = τ}: w = y − ((Σy − τ)/|S|)·e. y must be nonempty.
DenseVector hyperplane_step(std::span<const double> y, double tau);

/// Strict sign partition; I₀ holds exact zeros only.
SignPartition partition(std::span<const double> w);

/// Euclidean projection of a nonnegative vector onto the simplex
/// {w ≥ 0 : Σw = τ} by iterated hyperplane projection with active-set
/// elimination. Writes the hyperplane step count to `iterations` if given.
DenseVector project_simplex_exact(std::span<const double> v_abs, double tau,
                                  std::size_t* iterations = nullptr);

/// sign(v)∘reduced on `support`, zero elsewhere.
DenseVector embed(std::span<const double> reduced, std::span<const std::size_t> support,
                  std::span<const double> v, std::size_t n);

/// Exact Euclidean projection onto the ℓ1 ball of radius τ. Points inside the
/// ball are returned unchanged with zero inner iterations.
ProjectionResult project_l1_exact(std::span<const double> v, double tau);

/// Inexact projection of ctx.v() onto the ℓ1 ball.
///
/// Runs the same active-set iteration as project_l1_exact. After each
/// hyperplane step a feasible candidate is formed by clamping the working
/// vector at zero, rescaling it onto the ℓ1 sphere and restoring signs; the
/// dual estimate is v − candidate. The iteration stops as soon as the gate
/// ratio reaches γ and the candidate does not increase p, otherwise it runs to
/// the exact projection. γ = 1 takes the exact path directly.
///
/// More than `max_iterations` hyperplane steps throws InternalError.
ProjectionResult project_l1_inexact(const SubproblemContext& ctx, double gamma,
                                    std::optional<std::size_t> max_iterations = std::nullopt);

}  // namespace igpm

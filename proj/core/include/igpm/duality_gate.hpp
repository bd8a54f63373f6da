#pragma once

#include <optional>
#include <span>

#include "igpm/linalg.hpp"

namespace igpm {

/// Relative slack on ‖z‖₁ ≤ τ used for every feasibility check.
inline constexpr double kFeasibilitySlack = 1e-12;

/// True when ‖z‖₁ ≤ τ·(1 + kFeasibilitySlack).
bool in_l1_ball(std::span<const double> z, double tau);

/// The k-th projection subproblem: minimize ½‖z − v‖² over the ℓ1 ball of
/// radius τ, where v = x − β·g. The shifted point is computed once at
/// construction from the stored iterate and gradient.
class SubproblemContext {
 public:
  SubproblemContext(DenseVector x, DenseVector g, double beta, double tau, double omega);

  const DenseVector& x() const { return x_; }
  const DenseVector& g() const { return g_; }
  const DenseVector& v() const { return v_; }
  double beta() const { return beta_; }
  double tau() const { return tau_; }
  double omega() const { return omega_; }
  std::size_t dimension() const { return v_.size(); }

  /// p(x;x) = ½β²‖g‖², the value of the trivial candidate.
  double trivial_value() const { return trivial_value_; }
  /// ½‖v‖², the constant term of the dual objective.
  double half_v_norm_squared() const { return half_v_sq_; }

 private:
  DenseVector x_;
  DenseVector g_;
  DenseVector v_;
  double beta_;
  double tau_;
  double omega_;
  double trivial_value_;
  double half_v_sq_;
};

/// p(z;x) = ½‖z − v‖². Throws ContractViolation for z outside the ball.
double primal_value(const SubproblemContext& ctx, std::span<const double> z);

/// Δp(z;x) = p(x;x) − p(z;x). May be negative; such z must not reach the gate.
double delta_p(const SubproblemContext& ctx, std::span<const double> z);

/// q(u;x) = −½‖u − v‖² − τ‖u‖∞ + ½‖v‖², the Fenchel dual of the projection
/// subproblem (τ‖·‖∞ is the support function of the ℓ1 ball).
double dual_value(const SubproblemContext& ctx, std::span<const double> u);

/// Progress ratio (p_x − p_z + ω)/(p_x − q_u + ω).
///
/// Returns nullopt when the numerator is negative (the candidate is worse than
/// the trivial iterate) or when ω = 0 and the denominator is below 1e-300 (the
/// current iterate already solves the subproblem). Values within 1e-9 outside
/// [0, 1] are clamped.
std::optional<double> gate_ratio(double p_x, double p_z, double q_u, double omega);

/// True iff the ratio is applicable and ≥ γ. γ must lie in (0, 1].
bool should_terminate(std::optional<double> ratio, double gamma);

/// ω_{k+1} = ω_k / 2.
double next_omega(double omega);

struct GateDecision {
  std::optional<double> ratio;
  bool terminate = false;
  double p_x = 0.0;
  double p_z = 0.0;
  double q_u = 0.0;
};

/// Evaluates the full gate for a primal/dual pair (z, u).
GateDecision evaluate_gate(const SubproblemContext& ctx, std::span<const double> z,
                           std::span<const double> u, double gamma);

}  // namespace igpm

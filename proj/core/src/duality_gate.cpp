#include "igpm/duality_gate.hpp"

#include <algorithm>
#include <cmath>

#include "igpm/errors.hpp"

namespace igpm {

bool in_l1_ball(std::span<const double> z, double tau) {
  return norm1(z) <= tau * (1.0 + kFeasibilitySlack);
}

SubproblemContext::SubproblemContext(DenseVector x, DenseVector g, double beta, double tau,
                                     double omega)
    : x_(std::move(x)), g_(std::move(g)), beta_(beta), tau_(tau), omega_(omega) {
  require(x_.size() == g_.size(), "SubproblemContext: iterate and gradient lengths differ");
  require(beta_ > 0.0 && std::isfinite(beta_), "SubproblemContext: beta must be positive");
  require(tau_ > 0.0 && std::isfinite(tau_), "SubproblemContext: tau must be positive");
  require(omega_ >= 0.0 && std::isfinite(omega_), "SubproblemContext: omega must be >= 0");
  require(in_l1_ball(x_, tau_), "SubproblemContext: iterate lies outside the l1 ball");
  v_ = subtract_scaled(x_, beta_, g_);
  trivial_value_ = 0.5 * distance_squared(x_, v_);
  half_v_sq_ = 0.5 * dot(v_, v_);
}

double primal_value(const SubproblemContext& ctx, std::span<const double> z) {
  require(z.size() == ctx.dimension(), "primal_value: dimension mismatch");
  require(in_l1_ball(z, ctx.tau()), "primal_value: z lies outside the l1 ball");
  return 0.5 * distance_squared(z, ctx.v());
}

double delta_p(const SubproblemContext& ctx, std::span<const double> z) {
  return ctx.trivial_value() - primal_value(ctx, z);
}

double dual_value(const SubproblemContext& ctx, std::span<const double> u) {
  require(u.size() == ctx.dimension(), "dual_value: dimension mismatch");
  return -0.5 * distance_squared(u, ctx.v()) - ctx.tau() * norm_inf(u) +
         ctx.half_v_norm_squared();
}

std::optional<double> gate_ratio(double p_x, double p_z, double q_u, double omega) {
  const double numerator = p_x - p_z + omega;
  const double denominator = p_x - q_u + omega;
  if (numerator < 0.0) return std::nullopt;
  if (omega == 0.0 && denominator < 1e-300) return std::nullopt;
  if (denominator <= 0.0) return std::nullopt;
  double ratio = numerator / denominator;
  if (ratio > 1.0 && ratio <= 1.0 + 1e-9) ratio = 1.0;
  if (ratio < 0.0 && ratio >= -1e-9) ratio = 0.0;
  return ratio;
}

bool should_terminate(std::optional<double> ratio, double gamma) {
  require(gamma > 0.0 && gamma <= 1.0, "should_terminate: gamma must lie in (0, 1]");
  return ratio.has_value() && *ratio >= gamma;
}

double next_omega(double omega) {
  require(omega >= 0.0, "next_omega: omega must be nonnegative");
  return 0.5 * omega;
}

GateDecision evaluate_gate(const SubproblemContext& ctx, std::span<const double> z,
                           std::span<const double> u, double gamma) {
  GateDecision d;
  d.p_x = ctx.trivial_value();
  d.p_z = primal_value(ctx, z);
  d.q_u = dual_value(ctx, u);
  d.ratio = gate_ratio(d.p_x, d.p_z, d.q_u, ctx.omega());
  d.terminate = should_terminate(d.ratio, gamma);
  return d;
}

}  // namespace igpm

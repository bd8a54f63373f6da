#include "igpm/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "igpm/duality_gate.hpp"
#include "igpm/errors.hpp"
#include "igpm/l1_projection.hpp"

namespace igpm {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::gpm1: return "gpm1";
    case Variant::gpm2: return "gpm2";
    case Variant::igpm1: return "igpm1";
    case Variant::igpm2: return "igpm2";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (auto v : {Variant::gpm1, Variant::gpm2, Variant::igpm1, Variant::igpm2}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

std::string_view to_string(BBMode m) {
  switch (m) {
    case BBMode::off: return "off";
    case BBMode::bb1: return "bb1";
    case BBMode::bb2: return "bb2";
  }
  return "?";
}

std::optional<BBMode> parse_bb_mode(std::string_view name) {
  for (auto m : {BBMode::off, BBMode::bb1, BBMode::bb2}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void SolverConfig::validate() const {
  require(gamma > 0.0 && gamma <= 1.0, "SolverConfig: gamma must lie in (0, 1]");
  require(omega0 >= 0.0 && std::isfinite(omega0), "SolverConfig: omega0 must be >= 0");
  require(beta > 0.0 && std::isfinite(beta), "SolverConfig: beta must be positive");
  require(eta > 0.0 && eta < 1.0, "SolverConfig: eta must lie in (0, 1)");
  require(theta > 0.0 && theta < 1.0, "SolverConfig: theta must lie in (0, 1)");
  require(alpha0 > 0.0 && alpha0 <= 1.0, "SolverConfig: alpha0 must lie in (0, 1]");
  require(eps > 0.0, "SolverConfig: eps must be positive");
  require(max_outer > 0, "SolverConfig: max_outer must be positive");
  if (bb_mode != BBMode::off) {
    require(uses_line_search(variant), "SolverConfig: BB stepsizes need a line-search variant");
    require(beta_min > 0.0 && beta_min <= beta && beta <= beta_max,
            "SolverConfig: need 0 < beta_min <= beta <= beta_max");
  }
}

double bb_stepsize(std::span<const double> s, std::span<const double> y, BBMode mode,
                   double beta_min, double beta_max) {
  require(mode != BBMode::off, "bb_stepsize: mode must be bb1 or bb2");
  require(0.0 < beta_min && beta_min <= beta_max, "bb_stepsize: bad truncation bounds");
  const double sy = dot(s, y);
  if (!(sy > 0.0)) return beta_max;
  const double raw = mode == BBMode::bb1 ? dot(s, s) / sy : sy / dot(y, y);
  return std::clamp(raw, beta_min, beta_max);
}

double optimality_residual(std::span<const double> x, std::span<const double> g, double beta,
                           double tau) {
  require(in_l1_ball(x, tau), "optimality_residual: x lies outside the l1 ball");
  const auto v = subtract_scaled(x, beta, g);
  return distance_squared(x, project_l1_exact(v, tau).z);
}

double ergodic_average(std::span<const double> residuals) {
  require(!residuals.empty(), "ergodic_average: empty sequence");
  return std::accumulate(residuals.begin(), residuals.end(), 0.0) /
         static_cast<double>(residuals.size());
}

namespace {

using Clock = std::chrono::steady_clock;

struct ProjectionStep {
  DenseVector z;
  DenseVector d;
  IterationRecord record;
};

ProjectionStep projection_step(const DenseVector& x, const DenseVector& g, double f, double beta,
                               double tau, double omega, const SolverConfig& config,
                               std::size_t k) {
  const SubproblemContext ctx(x, g, beta, tau, omega);
  const std::size_t cap = config.max_inner.value_or(x.size() + 1);
  auto proj = project_l1_inexact(ctx, config.effective_gamma(), cap);

  ProjectionStep step;
  step.d = DenseVector(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) step.d[i] = proj.z[i] - x[i];
  auto& r = step.record;
  r.k = k;
  r.f = f;
  r.resid = norm(step.d, config.stop_norm);
  r.inner = proj.inner_iterations;
  r.beta = beta;
  r.omega = omega;
  r.ratio = proj.ratio_final;
  r.delta_p = ctx.trivial_value() - proj.certificate.p_z;
  r.gtd = dot(g, step.d);
  r.d_norm_sq = dot(step.d, step.d);
  if (config.track_residuals) r.residual = optimality_residual(x, g, beta, tau);
  step.z = std::move(proj.z);
  return step;
}

DenseVector initial_point(const Objective& f, double tau, std::optional<DenseVector> x0) {
  DenseVector x = x0 ? std::move(*x0) : DenseVector(f.dimension());
  require(x.size() == f.dimension(), "solver: x0 has the wrong dimension");
  require(in_l1_ball(x, tau), "solver: x0 lies outside the l1 ball");
  return x;
}

void finish(SolveResult& out, const DenseVector& g, const SolverConfig& config, double tau,
            Clock::time_point start) {
  auto& trace = out.trace;
  for (const auto& r : trace.iterations) {
    trace.total_inner += r.inner;
    trace.total_backtracks += r.backtracks;
  }
  if (config.track_residuals && !trace.iterations.empty()) {
    std::vector<double> residuals;
    residuals.reserve(trace.iterations.size());
    for (const auto& r : trace.iterations) residuals.push_back(*r.residual);
    trace.ergodic_residual = ergodic_average(residuals);
  }
  out.outer_iterations = trace.iterations.size();
  out.final_residual = optimality_residual(out.x, g, config.beta, tau);
  trace.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SolveResult solve_igpm(const Objective& f, double tau, const SolverConfig& config,
                       std::optional<DenseVector> x0) {
  config.validate();
  require(!uses_line_search(config.variant), "solve_igpm: variant must be gpm1 or igpm1");
  require(tau > 0.0, "solve_igpm: tau must be positive");
  const auto start = Clock::now();

  SolveResult out;
  DenseVector x = initial_point(f, tau, std::move(x0));
  DenseVector g;
  double fx = f.value_and_gradient(x, g);
  double omega = config.omega0;
  DenseVector best_x = x, best_g = g;
  double best_f = fx;

  for (std::size_t k = 0; k < config.max_outer; ++k) {
    auto step = projection_step(x, g, fx, config.beta, tau, omega, config, k);
    const double resid = step.record.resid;
    out.trace.iterations.push_back(step.record);

    x = std::move(step.z);
    fx = f.value_and_gradient(x, g);
    omega = next_omega(omega);
    if (fx <= best_f) {
      best_x = x;
      best_g = g;
      best_f = fx;
    }
    if (resid <= config.eps) {
      out.converged = true;
      break;
    }
  }

  if (out.converged) {
    best_x = std::move(x);
    best_g = std::move(g);
    best_f = fx;
  }
  out.x = std::move(best_x);
  out.f = best_f;
  finish(out, best_g, config, tau, start);
  return out;
}

SolveResult solve_igpm_ls(const Objective& f, double tau, const SolverConfig& config,
                          std::optional<DenseVector> x0) {
  config.validate();
  require(uses_line_search(config.variant), "solve_igpm_ls: variant must be gpm2 or igpm2");
  require(tau > 0.0, "solve_igpm_ls: tau must be positive");
  const auto start = Clock::now();

  SolveResult out;
  DenseVector x = initial_point(f, tau, std::move(x0));
  DenseVector g;
  double fx = f.value_and_gradient(x, g);
  double omega = config.omega0;
  double beta = config.beta;
  DenseVector best_x = x, best_g = g;
  double best_f = fx;

  for (std::size_t k = 0; k < config.max_outer; ++k) {
    auto step = projection_step(x, g, fx, beta, tau, omega, config, k);
    auto& rec = step.record;

    const auto phi = f.along_ray(x, step.d);
    double alpha = config.alpha0;
    double trial = phi(alpha);
    while (trial > fx + config.eta * alpha * rec.gtd) {
      if (rec.backtracks == kMaxBacktracks) {
        throw DegenerateDirection("Armijo backtracking failed after " +
                                  std::to_string(kMaxBacktracks) + " reductions at iteration " +
                                  std::to_string(k) + " (g'd = " + std::to_string(rec.gtd) + ")");
      }
      alpha *= config.theta;
      ++rec.backtracks;
      trial = phi(alpha);
    }
    rec.alpha = alpha;
    out.trace.iterations.push_back(rec);

    DenseVector x_next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) x_next[i] = x[i] + alpha * step.d[i];
    if (!in_l1_ball(x_next, tau)) {
      throw InternalError("solve_igpm_ls: line-search iterate left the l1 ball");
    }
    DenseVector g_next;
    const double f_next = f.value_and_gradient(x_next, g_next);
    if (config.bb_mode != BBMode::off) {
      const auto s = subtract_scaled(x_next, 1.0, x);
      const auto y = subtract_scaled(g_next, 1.0, g);
      beta = bb_stepsize(s, y, config.bb_mode, config.beta_min, config.beta_max);
    }
    x = std::move(x_next);
    g = std::move(g_next);
    fx = f_next;
    omega = next_omega(omega);
    if (fx <= best_f) {
      best_x = x;
      best_g = g;
      best_f = fx;
    }
    if (rec.resid <= config.eps) {
      out.converged = true;
      break;
    }
  }

  if (out.converged) {
    best_x = std::move(x);
    best_g = std::move(g);
    best_f = fx;
  }
  out.x = std::move(best_x);
  out.f = best_f;
  finish(out, best_g, config, tau, start);
  return out;
}

SolveResult solve(const Objective& f, double tau, const SolverConfig& config,
                  std::optional<DenseVector> x0) {
  return uses_line_search(config.variant) ? solve_igpm_ls(f, tau, config, std::move(x0))
                                          : solve_igpm(f, tau, config, std::move(x0));
}

}  // namespace igpm

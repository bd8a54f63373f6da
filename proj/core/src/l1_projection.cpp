#include "igpm/l1_projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "igpm/errors.hpp"

namespace igpm {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Working state of the active-set iteration over the reduced index set S.
// `abs_v` keeps |v_i| for i in S so candidate values can be evaluated
// without touching the eliminated coordinates again.
struct ActiveSet {
  std::vector<std::size_t> index;
  std::vector<double> abs_v;
  std::vector<double> y;
  // Σ|v_i|² and max |v_i| over eliminated coordinates.
  double removed_sq = 0.0;
  double removed_max = 0.0;
  // Σ max(y_i, 0) after the last step.
  double positive_sum = 0.0;
  std::size_t iterations = 0;

  static ActiveSet from(std::span<const double> v) {
    ActiveSet s;
    s.index.resize(v.size());
    s.abs_v.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      s.index[i] = i;
      s.abs_v[i] = std::abs(v[i]);
    }
    s.y = s.abs_v;
    return s;
  }

  // In-place hyperplane step on y; returns whether any entry went negative.
  bool step(double tau) {
    double sum = 0.0;
    for (double yi : y) sum += yi;
    const double shift = (sum - tau) / static_cast<double>(y.size());
    bool negative = false;
    positive_sum = 0.0;
    for (double& yi : y) {
      yi -= shift;
      negative |= (yi < 0.0);
      positive_sum += std::max(yi, 0.0);
    }
    ++iterations;
    return negative;
  }

  // Keeps the strictly positive coordinates of y.
  void eliminate_nonpositive() {
    std::size_t kept = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (y[k] > 0.0) {
        index[kept] = index[k];
        abs_v[kept] = abs_v[k];
        y[kept] = y[k];
        ++kept;
      } else {
        removed_sq += abs_v[k] * abs_v[k];
        removed_max = std::max(removed_max, abs_v[k]);
      }
    }
    index.resize(kept);
    abs_v.resize(kept);
    y.resize(kept);
  }
};

Certificate certificate_for(std::span<const double> v, std::span<const double> z, double tau) {
  Certificate c;
  c.p_z = 0.5 * distance_squared(z, v);
  c.q_u = -0.5 * dot(z, z) - tau * distance_inf(v, z) + 0.5 * dot(v, v);
  return c;
}

ProjectionResult exact_result(std::span<const double> v, const ActiveSet& s, double tau) {
  ProjectionResult r;
  r.z = embed(s.y, s.index, v, v.size());
  r.inner_iterations = s.iterations;
  r.exact = true;
  r.ratio_final = 1.0;
  r.certificate = certificate_for(v, r.z, tau);
  return r;
}

ProjectionResult interior_result(std::span<const double> v) {
  ProjectionResult r;
  r.z = DenseVector(std::vector<double>(v.begin(), v.end()));
  r.exact = true;
  r.ratio_final = 1.0;
  return r;
}

void check_iteration_cap(std::size_t iterations, std::size_t cap) {
  if (iterations > cap) {
    throw InternalError("l1 projection exceeded " + std::to_string(cap) +
                        " hyperplane steps; active-set bound violated");
  }
}

}  // namespace

DenseVector hyperplane_step(std::span<const double> y, double tau) {
  require(!y.empty(), "hyperplane_step: empty active set");
  double sum = 0.0;
  for (double yi : y) sum += yi;
  const double shift = (sum - tau) / static_cast<double>(y.size());
  DenseVector w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) w[i] = y[i] - shift;
  return w;
}

SignPartition partition(std::span<const double> w) {
  SignPartition p;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) {
      p.minus.push_back(i);
    } else if (w[i] == 0.0) {
      p.zero.push_back(i);
    } else {
      p.plus.push_back(i);
    }
  }
  return p;
}

DenseVector project_simplex_exact(std::span<const double> v_abs, double tau,
                                  std::size_t* iterations) {
  require(tau > 0.0, "project_simplex_exact: tau must be positive");
  require(!v_abs.empty(), "project_simplex_exact: empty input");
  require(std::all_of(v_abs.begin(), v_abs.end(), [](double x) { return x >= 0.0; }),
          "project_simplex_exact: input must be nonnegative");
  auto s = ActiveSet::from(v_abs);
  while (s.step(tau)) {
    check_iteration_cap(s.iterations, v_abs.size());
    s.eliminate_nonpositive();
  }
  DenseVector w(v_abs.size());
  for (std::size_t k = 0; k < s.index.size(); ++k) w[s.index[k]] = s.y[k];
  if (iterations) *iterations = s.iterations;
  return w;
}

DenseVector embed(std::span<const double> reduced, std::span<const std::size_t> support,
                  std::span<const double> v, std::size_t n) {
  require(reduced.size() == support.size(), "embed: support and values differ in length");
  require(v.size() == n, "embed: sign vector length differs from n");
  DenseVector z(n);
  for (std::size_t k = 0; k < support.size(); ++k) {
    require(support[k] < n, "embed: index out of range");
    z[support[k]] = sign_of(v[support[k]]) * reduced[k];
  }
  return z;
}

ProjectionResult project_l1_exact(std::span<const double> v, double tau) {
  require(tau > 0.0, "project_l1_exact: tau must be positive");
  if (norm1(v) <= tau) return interior_result(v);
  auto s = ActiveSet::from(v);
  while (s.step(tau)) {
    check_iteration_cap(s.iterations, v.size());
    s.eliminate_nonpositive();
  }
  return exact_result(v, s, tau);
}

ProjectionResult project_l1_inexact(const SubproblemContext& ctx, double gamma,
                                    std::optional<std::size_t> max_iterations) {
  require(gamma > 0.0 && gamma <= 1.0, "project_l1_inexact: gamma must lie in (0, 1]");
  const auto& v = ctx.v();
  const double tau = ctx.tau();
  const std::size_t cap = max_iterations.value_or(v.size());
  if (norm1(v) <= tau) return interior_result(v);
  if (gamma >= 1.0) {
    auto r = project_l1_exact(v, tau);
    check_iteration_cap(r.inner_iterations, cap);
    return r;
  }

  const double p_x = ctx.trivial_value();
  const double half_v_sq = ctx.half_v_norm_squared();
  std::vector<std::optional<double>> history;

  auto s = ActiveSet::from(v);
  for (;;) {
    const bool negative = s.step(tau);
    check_iteration_cap(s.iterations, cap);

    // Feasible candidate: clamp at zero, then scale onto the sphere ‖·‖₁ = τ.
    // Only its values are needed unless the gate fires.
    const double scale = s.positive_sum > tau ? tau / s.positive_sum : 1.0;
    double p_z = 0.5 * s.removed_sq;
    double z_sq = 0.0;
    double u_inf = s.removed_max;
    for (std::size_t k = 0; k < s.y.size(); ++k) {
      const double c = std::max(s.y[k], 0.0) * scale;
      const double diff = s.abs_v[k] - c;
      p_z += 0.5 * diff * diff;
      z_sq += c * c;
      u_inf = std::max(u_inf, std::abs(diff));
    }
    const double q_u = -0.5 * z_sq - tau * u_inf + half_v_sq;

    std::optional<double> ratio;
    if (p_x - p_z >= 0.0) ratio = gate_ratio(p_x, p_z, q_u, ctx.omega());
    history.push_back(ratio);

    if (!negative) {
      auto r = exact_result(v, s, tau);
      r.ratio_history = std::move(history);
      return r;
    }
    if (should_terminate(ratio, gamma)) {
      std::vector<double> candidate(s.y.size());
      for (std::size_t k = 0; k < s.y.size(); ++k) candidate[k] = std::max(s.y[k], 0.0) * scale;
      ProjectionResult r;
      r.z = embed(candidate, s.index, v, v.size());
      r.inner_iterations = s.iterations;
      r.exact = false;
      r.ratio_final = ratio;
      r.certificate = {p_z, q_u};
      r.ratio_history = std::move(history);
      return r;
    }
    s.eliminate_nonpositive();
  }
}

}  // namespace igpm

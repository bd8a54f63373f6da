#include "igpm/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "igpm/l1_projection.hpp"
#include "igpm/objectives.hpp"
#include "igpm/random.hpp"

namespace igpm::harness {

namespace {

DenseVector random_vector(Rng& rng, std::size_t n, double scale) {
  DenseVector v(n);
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

/// Feasible point: random direction scaled to a random fraction of τ.
DenseVector random_feasible(Rng& rng, std::size_t n, double tau) {
  auto x = random_vector(rng, n, 1.0);
  const double l1 = norm1(x);
  const double scale = l1 > 0.0 ? tau * rng.uniform01() / l1 : 0.0;
  for (auto& xi : x) xi *= scale;
  return x;
}

void fold(oracles::OracleReport& total, const oracles::OracleReport& one) {
  total.max_abs_deviation = std::max(total.max_abs_deviation, one.max_abs_deviation);
  total.pass = total.pass && one.pass;
}

CheckResult projection_equivalence(Rng& rng) {
  CheckResult out{"projection_vs_sorted_oracle", {}};
  out.report.tolerance = 1e-10;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.below(199);
    const auto v = random_vector(rng, n, 1.0 + 10.0 * rng.uniform01());
    const double tau = 0.01 + 5.0 * rng.uniform01();
    const auto expected = oracles::l1_projection_sorted(v, tau);
    fold(out.report, oracles::compare(expected, project_l1_exact(v, tau).z, 1e-10));
  }
  return out;
}

CheckResult duality_gap(Rng& rng) {
  CheckResult out{"moreau_gap_check", {}};
  std::size_t failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(100);
    const double tau = 0.1 + 3.0 * rng.uniform01();
    auto x = random_feasible(rng, n, tau);
    auto g = random_vector(rng, n, 1.0 + 5.0 * rng.uniform01());
    const double beta = 0.05 + rng.uniform01();
    const SubproblemContext ctx(std::move(x), std::move(g), beta, tau, 0.0);
    const auto report = oracles::gap_check(ctx, rng.next_u64());
    if (!report.pass) ++failures;
    fold(out.report, report);
  }
  std::ostringstream detail;
  detail << failures << " of 1000 contexts failed";
  out.report.detail = detail.str();
  return out;
}

CheckResult gradients(Rng& rng) {
  CheckResult out{"gradient_vs_finite_differences", {}};
  out.report.tolerance = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    InstanceSpec spec;
    spec.n = 5 + rng.below(56);
    spec.m = 5 + rng.below(56);
    spec.s = 1 + rng.below(spec.n);
    spec.seed = rng.next_u64();
    const auto inst = generate_instance(spec);
    const auto x = random_vector(rng, spec.n, 1.0);
    const auto analytic = objective_gradient(inst, x);
    const auto numeric = oracles::finite_difference_gradient(
        [&](std::span<const double> p) { return objective_value(inst, p); }, x);
    const double scale = std::max(1.0, norm_inf(analytic));
    double rel = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      rel = std::max(rel, std::abs(analytic[i] - numeric[i]) / scale);
    }
    out.report.max_abs_deviation = std::max(out.report.max_abs_deviation, rel);
  }
  out.report.pass = out.report.max_abs_deviation <= out.report.tolerance;
  return out;
}

CheckResult lipschitz(Rng& rng) {
  CheckResult out{"lipschitz_vs_eigensolver", {}};
  out.report.tolerance = 0.01;
  for (int trial = 0; trial < 20; ++trial) {
    InstanceSpec spec;
    spec.n = 30;
    spec.m = 50;
    spec.s = 3;
    spec.seed = rng.next_u64();
    const auto inst = generate_instance(spec);
    const double truth = oracles::dense_lambda_max(inst.a);
    const double rel = std::abs(lipschitz_estimate(inst) - truth) / truth;
    out.report.max_abs_deviation = std::max(out.report.max_abs_deviation, rel);
  }
  out.report.pass = out.report.max_abs_deviation <= out.report.tolerance;
  return out;
}

}  // namespace

std::vector<CheckResult> run_oracle_suite(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> results;
  results.push_back(projection_equivalence(rng));
  results.push_back(duality_gap(rng));
  results.push_back(gradients(rng));
  results.push_back(lipschitz(rng));
  return results;
}

}  // namespace igpm::harness

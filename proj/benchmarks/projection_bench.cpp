#include <benchmark/benchmark.h>

#include "igpm/l1_projection.hpp"
#include "igpm/objectives.hpp"
#include "igpm/random.hpp"
#include "igpm/solver.hpp"

namespace {

using namespace igpm;

// A subproblem shaped like a gradient step from the origin: v ~ N(0, 1)^n,
// radius n/20.
SubproblemContext make_context(std::size_t n) {
  Rng rng(n);
  DenseVector g(n);
  for (auto& gi : g) gi = rng.normal();
  return SubproblemContext(DenseVector(n), std::move(g), 1.0, static_cast<double>(n) / 20.0, 1e-3);
}

void BM_ExactProjection(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::size_t>(state.range(0)));
  std::size_t inner = 0;
  for (auto _ : state) {
    auto r = project_l1_exact(ctx.v(), ctx.tau());
    inner = r.inner_iterations;
    benchmark::DoNotOptimize(r.z.data());
  }
  state.counters["inner"] = static_cast<double>(inner);
}
BENCHMARK(BM_ExactProjection)->RangeMultiplier(10)->Range(100, 1000000);

void BM_InexactProjection(benchmark::State& state) {
  const auto ctx = make_context(static_cast<std::size_t>(state.range(0)));
  const double gamma = static_cast<double>(state.range(1)) / 10.0;
  std::size_t inner = 0;
  for (auto _ : state) {
    auto r = project_l1_inexact(ctx, gamma);
    inner = r.inner_iterations;
    benchmark::DoNotOptimize(r.z.data());
  }
  state.counters["inner"] = static_cast<double>(inner);
}
BENCHMARK(BM_InexactProjection)
    ->ArgsProduct({{1000, 100000, 1000000}, {6, 8, 9}});

void BM_Solve(benchmark::State& state) {
  InstanceSpec spec;
  spec.n = 1000;
  spec.m = 2000;
  spec.s = 50;
  spec.seed = 1;
  const auto inst = generate_instance(spec);
  const LeastSquares f(inst);
  SolverConfig cfg;
  cfg.variant = static_cast<Variant>(state.range(0));
  if (!uses_line_search(cfg.variant)) cfg.beta = 0.8 / lipschitz_estimate(inst);
  std::size_t inner = 0;
  for (auto _ : state) {
    auto r = solve(f, inst.tau, cfg);
    inner = r.trace.total_inner;
    benchmark::DoNotOptimize(r.x.data());
  }
  state.SetLabel(std::string(to_string(cfg.variant)));
  state.counters["inner"] = static_cast<double>(inner);
}
BENCHMARK(BM_Solve)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "igpm/errors.hpp"
#include "igpm/l1_projection.hpp"
#include "igpm/oracles/oracles.hpp"
#include "test_support.hpp"

namespace igpm {
namespace {

void expect_close(std::span<const double> a, std::span<const double> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "at " << i;
}

SubproblemContext centred_at(const DenseVector& v, double tau, double omega = 0.0) {
  DenseVector g(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) g[i] = -v[i];
  return SubproblemContext(DenseVector(v.size()), std::move(g), 1.0, tau, omega);
}

TEST(HyperplaneStep, Examples) {
  expect_close(hyperplane_step(DenseVector{3.0, 1.0}, 2.0), DenseVector{2.0, 0.0}, 1e-15);
  expect_close(hyperplane_step(DenseVector{2.0, 2.0}, 2.0), DenseVector{1.0, 1.0}, 1e-15);
  expect_close(hyperplane_step(DenseVector{0.4, 0.3}, 1.0), DenseVector{0.55, 0.45}, 1e-15);
  EXPECT_THROW(hyperplane_step(DenseVector{}, 1.0), ContractViolation);
}

TEST(HyperplaneStep, LandsOnHyperplane) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto y = test::gaussian(rng, 1 + rng.below(100), 5.0);
    const double tau = 0.1 + 10.0 * rng.uniform01();
    const auto w = hyperplane_step(y, tau);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), tau, 1e-10 * tau + 1e-12 * norm1(y));
  }
}

TEST(Partition, Examples) {
  auto p = partition(DenseVector{2.0, 0.0});
  EXPECT_EQ(p.plus, (std::vector<std::size_t>{0}));
  EXPECT_EQ(p.zero, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(p.minus.empty());
  p = partition(DenseVector{1.0, 1.0});
  EXPECT_EQ(p.plus, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(p.zero.empty() && p.minus.empty());
  p = partition(DenseVector{1.5, -0.5});
  EXPECT_EQ(p.plus, (std::vector<std::size_t>{0}));
  EXPECT_EQ(p.minus, (std::vector<std::size_t>{1}));
}

TEST(ProjectSimplexExact, Examples) {
  expect_close(project_simplex_exact(DenseVector{3.0, 1.0}, 2.0), DenseVector{2.0, 0.0}, 1e-15);
  expect_close(project_simplex_exact(DenseVector{2.0, 2.0}, 2.0), DenseVector{1.0, 1.0}, 1e-15);
  expect_close(project_simplex_exact(DenseVector{5.0, 1.0, 1.0}, 3.0), DenseVector{3.0, 0.0, 0.0},
               1e-15);
  EXPECT_THROW(project_simplex_exact(DenseVector{1.0}, 0.0), ContractViolation);
  EXPECT_THROW(project_simplex_exact(DenseVector{1.0, -1.0}, 1.0), ContractViolation);
}

TEST(ProjectSimplexExact, MatchesSortedOracle) {
  Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(150);
    DenseVector a(n);
    for (auto& x : a) x = std::abs(rng.normal()) * 4.0;
    const double tau = 0.05 + 5.0 * rng.uniform01();
    const auto oracle = oracles::simplex_projection_sorted(a, tau);
    expect_close(project_simplex_exact(a, tau), oracle.w, 1e-10);
  }
}

TEST(ProjectL1Exact, Examples) {
  auto r = project_l1_exact(DenseVector{0.3, -0.2}, 1.0);
  EXPECT_EQ(r.z, (DenseVector{0.3, -0.2}));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.inner_iterations, 0u);
  expect_close(project_l1_exact(DenseVector{-3.0, 1.0}, 2.0).z,
               oracles::l1_projection_sorted(DenseVector{-3.0, 1.0}, 2.0), 1e-15);
  expect_close(project_l1_exact(DenseVector{-3.0, 1.0}, 2.0).z, DenseVector{-2.0, 0.0}, 1e-15);
  expect_close(project_l1_exact(DenseVector{3.0, 1.0}, 2.0).z, DenseVector{2.0, 0.0}, 1e-15);
  EXPECT_THROW(project_l1_exact(DenseVector{1.0}, -1.0), ContractViolation);
}

TEST(Embed, Examples) {
  const std::vector<std::size_t> s0{0};
  EXPECT_EQ(embed(DenseVector{2.0}, s0, DenseVector{-3.0, 1.0}, 2), (DenseVector{-2.0, 0.0}));
  const std::vector<std::size_t> s01{0, 1};
  EXPECT_EQ(embed(DenseVector{1.0, 2.0}, s01, DenseVector{-1.0, 5.0}, 2), (DenseVector{-1.0, 2.0}));
  const std::vector<std::size_t> s02{0, 2};
  EXPECT_EQ(embed(DenseVector{1.0, 1.0}, s02, DenseVector{4.0, -9.0, 4.0}, 3),
            (DenseVector{1.0, 0.0, 1.0}));
  const std::vector<std::size_t> bad{3};
  EXPECT_THROW(embed(DenseVector{1.0}, bad, DenseVector{1.0, 1.0}, 2), ContractViolation);
}

class ProjectionProperties : public ::testing::Test {
 protected:
  Rng rng{43};
  std::pair<DenseVector, double> random_problem(std::size_t max_n = 120) {
    const std::size_t n = 1 + rng.below(max_n);
    return {test::gaussian(rng, n, 0.5 + 5.0 * rng.uniform01()), 0.05 + 4.0 * rng.uniform01()};
  }
};

TEST_F(ProjectionProperties, MatchesSortedOracle) {
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [v, tau] = random_problem();
    const auto r = project_l1_exact(v, tau);
    expect_close(r.z, oracles::l1_projection_sorted(v, tau), 1e-10);
    EXPECT_TRUE(in_l1_ball(r.z, tau));
  }
}

TEST_F(ProjectionProperties, Idempotent) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto [v, tau] = random_problem();
    const auto once = project_l1_exact(v, tau).z;
    expect_close(project_l1_exact(once, tau).z, once, 1e-12);
  }
}

TEST_F(ProjectionProperties, Nonexpansive) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto [a, tau] = random_problem();
    const auto b = test::gaussian(rng, a.size(), 3.0);
    const auto pa = project_l1_exact(a, tau).z;
    const auto pb = project_l1_exact(b, tau).z;
    EXPECT_LE(std::sqrt(distance_squared(pa, pb)), std::sqrt(distance_squared(a, b)) + 1e-10);
  }
}

TEST_F(ProjectionProperties, SignAndPermutationEquivariant) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto [v, tau] = random_problem();
    const std::size_t n = v.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<double> flips(n);
    for (auto& f : flips) f = rng.sign();

    DenseVector transformed(n);
    for (std::size_t i = 0; i < n; ++i) transformed[i] = flips[i] * v[perm[i]];
    const auto pv = project_l1_exact(v, tau).z;
    const auto pt = project_l1_exact(transformed, tau).z;
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(pt[i], flips[i] * pv[perm[i]], 1e-12);
  }
}

TEST_F(ProjectionProperties, IterationBound) {
  for (int trial = 0; trial < 500; ++trial) {
    const auto [v, tau] = random_problem();
    EXPECT_LE(project_l1_exact(v, tau).inner_iterations, v.size());
  }
  for (std::size_t n : {1u, 2u, 10u, 100u, 500u}) {
    DenseVector staircase(n);
    for (std::size_t i = 0; i < n; ++i) staircase[i] = static_cast<double>(n - i);
    EXPECT_LE(project_l1_exact(staircase, 1.0).inner_iterations, n);
  }
}

TEST_F(ProjectionProperties, InexactNeverTakesMoreStepsThanExact) {
  for (int trial = 0; trial < 500; ++trial) {
    const auto [v, tau] = random_problem();
    const auto ctx = centred_at(v, tau, rng.uniform01() < 0.5 ? 0.0 : 1e-3);
    const double gamma = 0.5 + 0.49 * rng.uniform01();
    const auto inexact = project_l1_inexact(ctx, gamma);
    const auto exact = project_l1_exact(v, tau);
    EXPECT_LE(inexact.inner_iterations, exact.inner_iterations);
    EXPECT_TRUE(in_l1_ball(inexact.z, tau));
  }
}

TEST_F(ProjectionProperties, EarlyTerminationCertificateReproducesRatio) {
  int early = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto [v, tau] = random_problem();
    const auto x = test::feasible_point(rng, v.size(), tau);
    DenseVector g(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) g[i] = x[i] - v[i];
    const SubproblemContext ctx(x, g, 1.0, tau, 1e-3);
    const double gamma = 0.6;
    const auto r = project_l1_inexact(ctx, gamma);
    if (r.exact) continue;
    ++early;
    DenseVector u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = ctx.v()[i] - r.z[i];
    const double p_z = primal_value(ctx, r.z);
    const double q_u = dual_value(ctx, u);
    EXPECT_NEAR(p_z, r.certificate.p_z, 1e-10 * std::max(1.0, p_z));
    EXPECT_NEAR(q_u, r.certificate.q_u, 1e-10 * std::max(1.0, std::abs(q_u)));
    const auto ratio = gate_ratio(ctx.trivial_value(), p_z, q_u, ctx.omega());
    ASSERT_TRUE(ratio.has_value());
    ASSERT_TRUE(r.ratio_final.has_value());
    EXPECT_NEAR(*ratio, *r.ratio_final, 1e-10);
    EXPECT_GE(*ratio, gamma - 1e-10);
  }
  EXPECT_GT(early, 0);
}

TEST(ProjectL1Inexact, InteriorPointReturnsImmediately) {
  const SubproblemContext ctx(DenseVector{0.1, 0.0}, DenseVector{0.1, -0.2}, 1.0, 1.0, 0.0);
  const auto r = project_l1_inexact(ctx, 0.8);
  EXPECT_EQ(r.z, ctx.v());
  EXPECT_EQ(r.inner_iterations, 0u);
  ASSERT_TRUE(r.ratio_final.has_value());
  EXPECT_EQ(*r.ratio_final, 1.0);
}

TEST(ProjectL1Inexact, GammaOneIsExact) {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = test::gaussian(rng, 1 + rng.below(80), 3.0);
    const double tau = 0.1 + 2.0 * rng.uniform01();
    const auto r = project_l1_inexact(centred_at(v, tau), 1.0);
    EXPECT_TRUE(r.exact);
    expect_close(r.z, project_l1_exact(v, tau).z, 1e-12);
  }
}

TEST(ProjectL1Inexact, IterationCapIsInternalError) {
  DenseVector staircase(50);
  for (std::size_t i = 0; i < 50; ++i) staircase[i] = static_cast<double>(50 - i);
  EXPECT_THROW(project_l1_inexact(centred_at(staircase, 1.0), 1.0, 1), InternalError);
}

}  // namespace
}  // namespace igpm

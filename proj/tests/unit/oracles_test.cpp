#include <gtest/gtest.h>

#include <numeric>

#include "igpm/errors.hpp"
#include "igpm/objectives.hpp"
#include "igpm/oracles/oracles.hpp"
#include "test_support.hpp"

namespace igpm {
namespace {

using oracles::simplex_projection_sorted;

TEST(SimplexProjectionSorted, Examples) {
  auto r = simplex_projection_sorted(std::vector<double>{3.0, 1.0}, 2.0);
  EXPECT_EQ(r.w, (std::vector<double>{2.0, 0.0}));
  EXPECT_EQ(r.nu, 1.0);
  EXPECT_EQ(simplex_projection_sorted(std::vector<double>{2.0, 2.0}, 2.0).w,
            (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(simplex_projection_sorted(std::vector<double>{1.0, 0.0, 0.0}, 1.0).w,
            (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_THROW(simplex_projection_sorted(std::vector<double>{1.0}, 0.0), ContractViolation);
}

TEST(SimplexProjectionSorted, ThresholdFormAndSum) {
  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(100);
    std::vector<double> a(n);
    for (auto& x : a) x = 3.0 * std::abs(rng.normal());
    const double l1 = std::accumulate(a.begin(), a.end(), 0.0);
    const double tau = 0.05 + l1 * rng.uniform01();
    const auto r = simplex_projection_sorted(a, tau);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(r.w[i], std::max(a[i] - r.nu, 0.0));
    EXPECT_NEAR(std::accumulate(r.w.begin(), r.w.end(), 0.0), tau, 1e-10 * std::max(1.0, tau));
  }
}

TEST(FiniteDifferenceGradient, Examples) {
  const auto half_sq = [](std::span<const double> x) { return 0.5 * dot(x, x); };
  const auto g = oracles::finite_difference_gradient(half_sq, std::vector<double>{1.0, 2.0});
  EXPECT_NEAR(g[0], 1.0, 1e-8);
  EXPECT_NEAR(g[1], 2.0, 1e-8);
  const auto c = oracles::finite_difference_gradient([](std::span<const double>) { return 3.0; },
                                                     std::vector<double>{1.0, -5.0});
  EXPECT_EQ(c, (std::vector<double>{0.0, 0.0}));
}

TEST(GapCheck, Examples) {
  // Interior: u* = 0.
  const SubproblemContext inside(DenseVector{0.0, 0.0}, DenseVector{-0.2, 0.1}, 1.0, 1.0, 0.0);
  EXPECT_TRUE(oracles::gap_check(inside).pass);
  const SubproblemContext outside(DenseVector{0.0, 0.0}, DenseVector{-2.0, 0.0}, 1.0, 1.0, 0.0);
  const auto report = oracles::gap_check(outside);
  EXPECT_TRUE(report.pass) << report.detail;
  EXPECT_LE(report.max_abs_deviation, 1e-15);
}

TEST(GapCheck, RandomSweepPasses) {
  Rng rng(72);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(100);
    const double tau = 0.1 + 3.0 * rng.uniform01();
    const SubproblemContext ctx(test::feasible_point(rng, n, tau), test::gaussian(rng, n, 4.0),
                                0.05 + rng.uniform01(), tau, 0.0);
    const auto report = oracles::gap_check(ctx, rng.next_u64());
    EXPECT_TRUE(report.pass) << report.detail;
  }
}

TEST(DenseLambdaMax, Examples) {
  EXPECT_NEAR(oracles::dense_lambda_max(Matrix(DenseMatrix(2, 2, {2.0, 0.0, 0.0, 1.0}))), 4.0, 1e-12);
  EXPECT_NEAR(oracles::dense_lambda_max(Matrix(DenseMatrix::identity(4))), 1.0, 1e-12);
  EXPECT_THROW(oracles::dense_lambda_max(Matrix(DenseMatrix::zeros(501, 2))), ContractViolation);
}

TEST(DenseLambdaMax, AgreesWithTightPowerMethod) {
  Rng rng(73);
  const Matrix a(test::gaussian_matrix(rng, 30, 20));
  const double oracle = oracles::dense_lambda_max(a);
  const double power = power_method_lambda_max(a, 1e-12, 100000);
  EXPECT_NEAR(power, oracle, 1e-8 * oracle);
}

TEST(Compare, ReportsWorstEntry) {
  const auto r = oracles::compare(std::vector<double>{1.0, 2.0, 3.0},
                                  std::vector<double>{1.0, 2.5, 3.1}, 0.2);
  EXPECT_FALSE(r.pass);
  EXPECT_DOUBLE_EQ(r.max_abs_deviation, 0.5);
  EXPECT_EQ(r.location, 1u);
}

}  // namespace
}  // namespace igpm

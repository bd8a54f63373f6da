#include "igpm/oracles/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "igpm/errors.hpp"
#include "igpm/l1_projection.hpp"

namespace igpm::oracles {

OracleReport compare(std::span<const double> expected, std::span<const double> actual,
                     double tolerance) {
  require(expected.size() == actual.size(), "compare: length mismatch");
  OracleReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double dev = std::abs(expected[i] - actual[i]);
    if (!(dev <= report.max_abs_deviation)) {
      report.max_abs_deviation = dev;
      report.location = i;
    }
  }
  report.pass = report.max_abs_deviation <= tolerance;
  return report;
}

SortedSimplexProjection simplex_projection_sorted(std::span<const double> v_abs, double tau) {
  require(tau > 0.0, "simplex_projection_sorted: tau must be positive");
  require(!v_abs.empty(), "simplex_projection_sorted: empty input");
  std::vector<double> sorted(v_abs.begin(), v_abs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double nu = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (prefix - tau) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) nu = candidate;
  }
  SortedSimplexProjection out;
  out.nu = nu;
  out.w.resize(v_abs.size());
  for (std::size_t i = 0; i < v_abs.size(); ++i) out.w[i] = std::max(v_abs[i] - nu, 0.0);
  return out;
}

std::vector<double> l1_projection_sorted(std::span<const double> v, double tau) {
  require(tau > 0.0, "l1_projection_sorted: tau must be positive");
  double l1 = 0.0;
  for (double x : v) l1 += std::abs(x);
  if (l1 <= tau) return {v.begin(), v.end()};
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  auto w = simplex_projection_sorted(a, tau).w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) w[i] = -w[i];
  }
  return w;
}

std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x) {
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-5 * (1.0 + std::abs(x[i]));
    point[i] = x[i] + h;
    const double up = f(point);
    point[i] = x[i] - h;
    const double down = f(point);
    point[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

OracleReport gap_check(const SubproblemContext& ctx, std::uint64_t seed) {
  const auto& v = ctx.v();
  const double tau = ctx.tau();
  const std::size_t n = v.size();
  const auto z = project_l1_exact(v, tau).z;

  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = v[i] - z[i];

  OracleReport report;
  std::ostringstream detail;

  // (i) decomposition, exact by construction up to one rounding per entry.
  double decomposition = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    decomposition = std::max(decomposition, std::abs(v[i] - (z[i] + u[i])));
  }
  const bool decomposition_ok = decomposition <= 1e-12 * std::max(1.0, norm_inf(v));

  // (ii) zero duality gap, values from their definitions.
  double p = 0.0, v_sq = 0.0, u_inf = 0.0, p_x = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p += 0.5 * (z[i] - v[i]) * (z[i] - v[i]);
    v_sq += v[i] * v[i];
    u_inf = std::max(u_inf, std::abs(u[i]));
    const double step = ctx.x()[i] - v[i];
    p_x += 0.5 * step * step;
  }
  double u_minus_v_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) u_minus_v_sq += (u[i] - v[i]) * (u[i] - v[i]);
  const double q = -0.5 * u_minus_v_sq - tau * u_inf + 0.5 * v_sq;
  const double gap = std::abs(p - q);
  const double gap_tol = 1e-8 * std::max(1.0, p_x);
  const bool gap_ok = gap <= gap_tol;

  // (iii) u* in the normal cone at z*: (x' − z*)ᵀu* ≤ 0 for feasible x'.
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  double worst_cone = -std::numeric_limits<double>::infinity();
  std::vector<double> point(n);
  for (int trial = 0; trial < 100; ++trial) {
    double l1 = 0.0;
    for (auto& xi : point) {
      xi = normal(engine);
      l1 += std::abs(xi);
    }
    const double scale = l1 > 0.0 ? tau * radius(engine) / l1 : 0.0;
    double inner = 0.0;
    for (std::size_t i = 0; i < n; ++i) inner += (point[i] * scale - z[i]) * u[i];
    worst_cone = std::max(worst_cone, inner);
  }
  const bool cone_ok = worst_cone <= 1e-8;

  report.max_abs_deviation = std::max({decomposition, gap, std::max(worst_cone, 0.0)});
  report.tolerance = gap_tol;
  report.pass = decomposition_ok && gap_ok && cone_ok;
  detail << "decomposition=" << decomposition << " gap=" << gap << " (tol " << gap_tol
         << ") normal_cone_max=" << worst_cone;
  report.detail = detail.str();
  return report;
}

double dense_lambda_max(const Matrix& a) {
  const std::size_t m = rows(a);
  const std::size_t n = cols(a);
  require(m <= 500 && n <= 500, "dense_lambda_max: matrix too large to densify (limit 500x500)");
  require(m > 0 && n > 0, "dense_lambda_max: empty matrix");
  const DenseMatrix dense = std::holds_alternative<DenseMatrix>(a)
                                ? std::get<DenseMatrix>(a)
                                : std::get<SparseMatrixCSR>(a).to_dense();
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dense(i, j);
    }
  }
  const Eigen::MatrixXd gram = mat.transpose() * mat;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("dense_lambda_max: eigensolve failed");
  return solver.eigenvalues().maxCoeff();
}

}  // namespace igpm::oracles

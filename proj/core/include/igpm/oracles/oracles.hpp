#pragma once

// Independent reference implementations for verifying the production code.
// None of these run inside a solve.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igpm/duality_gate.hpp"
#include "igpm/linalg.hpp"

namespace igpm::oracles {

struct OracleReport {
  double max_abs_deviation = 0.0;
  std::optional<std::size_t> location;
  double tolerance = 0.0;
  bool pass = true;
  std::string detail;
};

/// Compares two vectors entrywise against a tolerance.
OracleReport compare(std::span<const double> expected, std::span<const double> actual,
                     double tolerance);

/// Simplex projection by descending sort and prefix sums. Also returns the
/// threshold ν with outputᵢ = max(vᵢ − ν, 0).
struct SortedSimplexProjection {
  std::vector<double> w;
  double nu = 0.0;
};
SortedSimplexProjection simplex_projection_sorted(std::span<const double> v_abs, double tau);

/// ℓ1-ball projection through the sorted simplex oracle and sign restoration.
std::vector<double> l1_projection_sorted(std::span<const double> v, double tau);

/// Central differences with step 1e-5·(1 + |xᵢ|).
std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<const double> x);

/// Moreau-decomposition check on one projection subproblem: v = z* + u*,
/// |p(z*) − q(u*)| ≤ 1e-8·max(1, p(x;x)), and (x' − z*)ᵀu* ≤ 1e-8 for 100
/// random feasible x'. z* comes from the production exact projection; the
/// values are recomputed here from their definitions.
OracleReport gap_check(const SubproblemContext& ctx, std::uint64_t seed = 0);

/// Largest eigenvalue of AᵀA from a dense symmetric eigensolve. Both
/// dimensions must be at most 500.
double dense_lambda_max(const Matrix& a);

}  // namespace igpm::oracles

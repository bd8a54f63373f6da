#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>

#include "igpm/linalg.hpp"

namespace igpm {

/// Value/gradient provider consumed by the solvers.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  /// Returns f(x) and writes ∇f(x) to `gradient`.
  virtual double value_and_gradient(std::span<const double> x, DenseVector& gradient) const = 0;

  /// α ↦ f(x + α·d). The default evaluates value() on a fresh point each call;
  /// implementations may precompute along the ray.
  virtual std::function<double(double)> along_ray(std::span<const double> x,
                                                  std::span<const double> d) const;
};

/// Sparse-recovery instance: minimize ½‖Ax − b‖² subject to ‖x‖₁ ≤ τ.
struct ProblemInstance {
  Matrix a;
  DenseVector b;
  double tau = 1.0;
  std::optional<DenseVector> x_true;
  std::optional<std::size_t> sparsity;
  std::optional<std::uint64_t> seed;

  std::size_t rows() const { return igpm::rows(a); }
  std::size_t cols() const { return igpm::cols(a); }
  bool dense() const { return std::holds_alternative<DenseMatrix>(a); }
};

/// f(x) = ½‖Ax − b‖₂².
double objective_value(const ProblemInstance& inst, std::span<const double> x);

/// ∇f(x) = Aᵀ(Ax − b).
DenseVector objective_gradient(const ProblemInstance& inst, std::span<const double> x);

class LeastSquares final : public Objective {
 public:
  /// Keeps a reference; `inst` must outlive the objective.
  explicit LeastSquares(const ProblemInstance& inst);

  std::size_t dimension() const override;
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x, DenseVector& gradient) const override;
  /// Precomputes Ax − b and Ad so each trial step costs O(m).
  std::function<double(double)> along_ray(std::span<const double> x,
                                          std::span<const double> d) const override;

 private:
  const ProblemInstance* inst_;
};

/// Largest eigenvalue of AᵀA by power iteration on x ↦ Aᵀ(Ax), started from
/// the normalized all-ones vector. Stops when the Rayleigh quotient changes by
/// less than tol relative, or after max_iters products. No safety factor.
double power_method_lambda_max(const Matrix& a, double tol = 1e-8, std::size_t max_iters = 1000);

inline constexpr double kLipschitzSafetyFactor = 1.01;

/// Lipschitz constant of ∇f: power_method_lambda_max × 1.01.
double lipschitz_estimate(const ProblemInstance& inst, double tol = 1e-8,
                          std::size_t max_iters = 1000);

/// Ball radius choice for generated instances. `paper` uses τ = n − s,
/// `tight` uses τ = s, which places the ground truth on the boundary.
enum class TauPreset { paper, tight };

double tau_for_preset(TauPreset preset, std::size_t n, std::size_t s);

struct InstanceSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  bool dense = true;
  /// Sparse only; defaults to n/(1000m).
  std::optional<double> density;
  TauPreset tau_preset = TauPreset::tight;
  /// Overrides the preset when set.
  std::optional<double> tau;
  std::uint64_t seed = 0;
};

double default_density(std::size_t n, std::size_t m);

/// Draws a ground truth with s entries of ±1 at uniformly random positions,
/// a standard Gaussian A (dense, or sparse with i.i.d. Bernoulli(density)
/// support) and b = A·x_true. Draw order: support, signs, then A in row-major
/// order.
ProblemInstance generate_instance(const InstanceSpec& spec);

/// Writes `<prefix>.mtx`, `<prefix>.b.txt`, `<prefix>.meta` and, when a ground
/// truth is present, `<prefix>.xtrue.txt`.
void write_instance(const std::filesystem::path& prefix, const ProblemInstance& inst);

/// Reads the files written by write_instance.
ProblemInstance read_instance(const std::filesystem::path& prefix);

}  // namespace igpm

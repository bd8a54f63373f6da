#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace igpm {

/// Finite real vector. Construction rejects NaN/Inf; element access is
/// unchecked so kernels can write in place.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, double fill = 0.0);
  explicit DenseVector(std::vector<double> values);
  DenseVector(std::initializer_list<double> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  operator std::span<const double>() const { return values_; }
  operator std::span<double>() { return values_; }

  const std::vector<double>& values() const { return values_; }

  bool all_finite() const;

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t nrows, std::size_t ncols, std::vector<double> entries);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zeros(std::size_t nrows, std::size_t ncols);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * ncols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * ncols_, ncols_};
  }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<double> entries_;
};

/// Compressed sparse row matrix. Construction validates the layout: row
/// pointers start at 0 and are nondecreasing, column indices are strictly
/// increasing within a row (so duplicates are rejected), stored values are
/// finite and nonzero.
class SparseMatrixCSR {
 public:
  SparseMatrixCSR() = default;
  SparseMatrixCSR(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_starts,
                  std::vector<std::size_t> col_indices, std::vector<double> values);

  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };
  /// Builds from unordered triplets. Duplicate (row, col) pairs are a
  /// contract violation; explicit zeros are dropped.
  static SparseMatrixCSR from_triplets(std::size_t nrows, std::size_t ncols,
                                       std::vector<Triplet> triplets);
  static SparseMatrixCSR from_dense(const DenseMatrix& dense);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  std::size_t nonzeros() const { return values_.size(); }
  const std::vector<std::size_t>& row_starts() const { return row_starts_; }
  const std::vector<std::size_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  DenseMatrix to_dense() const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_starts_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

using Matrix = std::variant<DenseMatrix, SparseMatrixCSR>;

std::size_t rows(const Matrix& a);
std::size_t cols(const Matrix& a);

enum class NormKind { l1, l2, linf };

DenseVector matvec(const DenseMatrix& a, std::span<const double> x);
DenseVector matvec(const SparseMatrixCSR& a, std::span<const double> x);
DenseVector matvec(const Matrix& a, std::span<const double> x);

DenseVector matvec_transpose(const DenseMatrix& a, std::span<const double> y);
DenseVector matvec_transpose(const SparseMatrixCSR& a, std::span<const double> y);
DenseVector matvec_transpose(const Matrix& a, std::span<const double> y);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v, NormKind kind);
inline double norm1(std::span<const double> v) { return norm(v, NormKind::l1); }
inline double norm2(std::span<const double> v) { return norm(v, NormKind::l2); }
inline double norm_inf(std::span<const double> v) { return norm(v, NormKind::linf); }

/// Squared Euclidean distance ‖a − b‖₂².
double distance_squared(std::span<const double> a, std::span<const double> b);
/// ‖a − b‖∞.
double distance_inf(std::span<const double> a, std::span<const double> b);

/// Returns a − scale·b.
DenseVector subtract_scaled(std::span<const double> a, double scale, std::span<const double> b);

}  // namespace igpm

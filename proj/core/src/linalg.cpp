#include "igpm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "igpm/errors.hpp"

namespace igpm {

namespace {

bool finite_range(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t n, double fill) : values_(n, fill) {
  require(std::isfinite(fill), "DenseVector: non-finite fill value");
}

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
  require(finite_range(values_), "DenseVector: non-finite entry");
}

DenseVector::DenseVector(std::initializer_list<double> values) : values_(values) {
  require(finite_range(values_), "DenseVector: non-finite entry");
}

bool DenseVector::all_finite() const { return finite_range(values_); }

DenseMatrix::DenseMatrix(std::size_t nrows, std::size_t ncols, std::vector<double> entries)
    : nrows_(nrows), ncols_(ncols), entries_(std::move(entries)) {
  require(entries_.size() == nrows_ * ncols_, "DenseMatrix: entry count does not match shape");
  require(finite_range(entries_), "DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = 1.0;
  return DenseMatrix(n, n, std::move(entries));
}

DenseMatrix DenseMatrix::zeros(std::size_t nrows, std::size_t ncols) {
  return DenseMatrix(nrows, ncols, std::vector<double>(nrows * ncols, 0.0));
}

SparseMatrixCSR::SparseMatrixCSR(std::size_t nrows, std::size_t ncols,
                                 std::vector<std::size_t> row_starts,
                                 std::vector<std::size_t> col_indices, std::vector<double> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_starts_(std::move(row_starts)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  require(row_starts_.size() == nrows_ + 1, "CSR: row_starts must have nrows+1 entries");
  require(row_starts_.front() == 0, "CSR: row_starts[0] must be 0");
  require(col_indices_.size() == values_.size(), "CSR: col_indices/values length mismatch");
  require(row_starts_.back() == values_.size(), "CSR: row_starts[nrows] must equal nnz");
  for (std::size_t r = 0; r < nrows_; ++r) {
    require(row_starts_[r] <= row_starts_[r + 1], "CSR: row_starts must be nondecreasing");
    for (std::size_t k = row_starts_[r]; k < row_starts_[r + 1]; ++k) {
      require(col_indices_[k] < ncols_, "CSR: column index out of range");
      if (k > row_starts_[r]) {
        require(col_indices_[k - 1] < col_indices_[k],
                "CSR: column indices must be strictly increasing within a row");
      }
      require(std::isfinite(values_[k]) && values_[k] != 0.0,
              "CSR: stored values must be finite and nonzero");
    }
  }
}

SparseMatrixCSR SparseMatrixCSR::from_triplets(std::size_t nrows, std::size_t ncols,
                                               std::vector<Triplet> triplets) {
  std::erase_if(triplets, [](const Triplet& t) { return t.value == 0.0; });
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> row_starts(nrows + 1, 0);
  std::vector<std::size_t> col_indices;
  std::vector<double> values;
  col_indices.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const auto& t = triplets[k];
    require(t.row < nrows && t.col < ncols, "CSR: triplet index out of range");
    if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
      throw ContractViolation("CSR: duplicate entry at (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ")");
    }
    ++row_starts[t.row + 1];
    col_indices.push_back(t.col);
    values.push_back(t.value);
  }
  std::partial_sum(row_starts.begin(), row_starts.end(), row_starts.begin());
  return SparseMatrixCSR(nrows, ncols, std::move(row_starts), std::move(col_indices),
                         std::move(values));
}

SparseMatrixCSR SparseMatrixCSR::from_dense(const DenseMatrix& dense) {
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    for (std::size_t j = 0; j < dense.cols(); ++j) {
      if (dense(i, j) != 0.0) triplets.push_back({i, j, dense(i, j)});
    }
  }
  return from_triplets(dense.rows(), dense.cols(), std::move(triplets));
}

DenseMatrix SparseMatrixCSR::to_dense() const {
  std::vector<double> entries(nrows_ * ncols_, 0.0);
  for (std::size_t r = 0; r < nrows_; ++r) {
    for (std::size_t k = row_starts_[r]; k < row_starts_[r + 1]; ++k) {
      entries[r * ncols_ + col_indices_[k]] = values_[k];
    }
  }
  return DenseMatrix(nrows_, ncols_, std::move(entries));
}

std::size_t rows(const Matrix& a) {
  return std::visit([](const auto& m) { return m.rows(); }, a);
}

std::size_t cols(const Matrix& a) {
  return std::visit([](const auto& m) { return m.cols(); }, a);
}

DenseVector matvec(const DenseMatrix& a, std::span<const double> x) {
  require_same_length(x.size(), a.cols(), "matvec");
  DenseVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

DenseVector matvec(const SparseMatrixCSR& a, std::span<const double> x) {
  require_same_length(x.size(), a.cols(), "matvec");
  DenseVector out(a.rows());
  const auto& starts = a.row_starts();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t k = starts[r]; k < starts[r + 1]; ++k) acc += vals[k] * x[cols[k]];
    out[r] = acc;
  }
  return out;
}

DenseVector matvec(const Matrix& a, std::span<const double> x) {
  return std::visit([&](const auto& m) { return matvec(m, x); }, a);
}

DenseVector matvec_transpose(const DenseMatrix& a, std::span<const double> y) {
  require_same_length(y.size(), a.rows(), "matvec_transpose");
  DenseVector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    const auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * yi;
  }
  return out;
}

DenseVector matvec_transpose(const SparseMatrixCSR& a, std::span<const double> y) {
  require_same_length(y.size(), a.rows(), "matvec_transpose");
  DenseVector out(a.cols());
  const auto& starts = a.row_starts();
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double yr = y[r];
    for (std::size_t k = starts[r]; k < starts[r + 1]; ++k) out[cols[k]] += vals[k] * yr;
  }
  return out;
}

DenseVector matvec_transpose(const Matrix& a, std::span<const double> y) {
  return std::visit([&](const auto& m) { return matvec_transpose(m, y); }, a);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(std::span<const double> v, NormKind kind) {
  switch (kind) {
    case NormKind::l1: {
      double acc = 0.0;
      for (double x : v) acc += std::abs(x);
      return acc;
    }
    case NormKind::l2: {
      double acc = 0.0;
      for (double x : v) acc += x * x;
      return std::sqrt(acc);
    }
    case NormKind::linf: {
      double acc = 0.0;
      for (double x : v) acc = std::max(acc, std::abs(x));
      return acc;
    }
  }
  return 0.0;
}

double distance_squared(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "distance_squared");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double distance_inf(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "distance_inf");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
  return acc;
}

DenseVector subtract_scaled(std::span<const double> a, double scale, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "subtract_scaled");
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - scale * b[i];
  return out;
}

}  // namespace igpm

#pragma once

#include <filesystem>
#include <iosfwd>

#include "igpm/linalg.hpp"

namespace igpm::io {

// Matrix Market coordinate format, `real general`, 1-based indices.
SparseMatrixCSR read_matrix_market(std::istream& in);
SparseMatrixCSR read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(std::ostream& out, const Matrix& a);
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);

// Plain text vectors: one real per line. Blank lines are ignored.
DenseVector read_vector(std::istream& in);
DenseVector read_vector(const std::filesystem::path& path);
void write_vector(std::ostream& out, std::span<const double> v);
void write_vector(const std::filesystem::path& path, std::span<const double> v);

}  // namespace igpm::io

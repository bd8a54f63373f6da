#include "igpm/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "igpm/errors.hpp"

namespace igpm::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// 17 significant digits round-trip every double exactly.
std::string exact_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SparseMatrixCSR read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ContractViolation("Matrix Market: empty input");
  std::istringstream header(lowercase(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix" || format != "coordinate" ||
      field != "real" || symmetry != "general") {
    throw ContractViolation(
        "Matrix Market: expected header '%%MatrixMarket matrix coordinate real general'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> nrows >> ncols >> nnz)) {
      throw ContractViolation("Matrix Market: malformed size line");
    }
  }
  std::vector<SparseMatrixCSR::Triplet> triplets;
  triplets.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) {
      throw ContractViolation("Matrix Market: expected " + std::to_string(nnz) +
                              " entries, got " + std::to_string(k));
    }
    if (i == 0 || j == 0 || i > nrows || j > ncols) {
      throw ContractViolation("Matrix Market: index out of range at entry " +
                              std::to_string(k + 1));
    }
    if (!std::isfinite(v)) throw ContractViolation("Matrix Market: non-finite value");
    triplets.push_back({i - 1, j - 1, v});
  }
  return SparseMatrixCSR::from_triplets(nrows, ncols, std::move(triplets));
}

SparseMatrixCSR read_matrix_market(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  if (const auto* dense = std::get_if<DenseMatrix>(&a)) {
    std::size_t nnz = 0;
    for (double v : dense->entries()) nnz += (v != 0.0);
    out << dense->rows() << ' ' << dense->cols() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < dense->rows(); ++i) {
      for (std::size_t j = 0; j < dense->cols(); ++j) {
        const double v = (*dense)(i, j);
        if (v != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << exact_real(v) << '\n';
      }
    }
    return;
  }
  const auto& sparse = std::get<SparseMatrixCSR>(a);
  out << sparse.rows() << ' ' << sparse.cols() << ' ' << sparse.nonzeros() << '\n';
  for (std::size_t r = 0; r < sparse.rows(); ++r) {
    for (std::size_t k = sparse.row_starts()[r]; k < sparse.row_starts()[r + 1]; ++k) {
      out << r + 1 << ' ' << sparse.col_indices()[k] + 1 << ' ' << exact_real(sparse.values()[k])
          << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
  auto out = open_output(path);
  write_matrix_market(out, a);
}

DenseVector read_vector(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double v = 0.0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest)) {
      throw ContractViolation("vector file: malformed value on line " + std::to_string(line_no));
    }
    values.push_back(v);
  }
  return DenseVector(std::move(values));
}

DenseVector read_vector(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_vector(in);
}

void write_vector(std::ostream& out, std::span<const double> v) {
  for (double x : v) out << exact_real(x) << '\n';
}

void write_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_output(path);
  write_vector(out, v);
}

}  // namespace igpm::io

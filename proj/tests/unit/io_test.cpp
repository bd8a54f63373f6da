#include <gtest/gtest.h>

#include <sstream>

#include "igpm/errors.hpp"
#include "igpm/io.hpp"
#include "test_support.hpp"

namespace igpm {
namespace {

TEST(MatrixMarket, ReadsCoordinateFile) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n"
      "% a comment\n"
      "2 3 2\n"
      "1 2 2.5\n"
      "2 3 -1\n");
  const auto a = io::read_matrix_market(in);
  EXPECT_EQ(a.rows(), 2u);
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_EQ(matvec(a, DenseVector{1.0, 1.0, 1.0}), (DenseVector{2.5, -1.0}));
}

TEST(MatrixMarket, RejectsWrongHeaderAndIndices) {
  std::istringstream bad_header("%%MatrixMarket matrix array real general\n1 1\n1\n");
  EXPECT_THROW(io::read_matrix_market(bad_header), ContractViolation);
  std::istringstream zero_index("%%MatrixMarket matrix coordinate real general\n1 1 1\n0 1 1\n");
  EXPECT_THROW(io::read_matrix_market(zero_index), ContractViolation);
  std::istringstream short_body("%%MatrixMarket matrix coordinate real general\n1 1 2\n1 1 1\n");
  EXPECT_THROW(io::read_matrix_market(short_body), ContractViolation);
}

TEST(MatrixMarket, RoundTripIsExact) {
  Rng rng(21);
  const auto dense = test::gaussian_matrix(rng, 7, 4);
  std::stringstream buf;
  io::write_matrix_market(buf, Matrix(dense));
  const auto back = io::read_matrix_market(buf);
  EXPECT_EQ(back.to_dense().entries(), dense.entries());
}

TEST(VectorText, RoundTripIsExact) {
  Rng rng(22);
  const auto v = test::gaussian(rng, 13, 1e3);
  std::stringstream buf;
  io::write_vector(buf, v);
  EXPECT_EQ(io::read_vector(buf), v);
}

TEST(VectorText, SkipsBlankLinesAndRejectsGarbage) {
  std::istringstream ok("1\n\n2.5\n");
  EXPECT_EQ(io::read_vector(ok), (DenseVector{1.0, 2.5}));
  std::istringstream bad("1\nabc\n");
  EXPECT_THROW(io::read_vector(bad), ContractViolation);
}

}  // namespace
}  // namespace igpm

#include <doctest.h>

#include <sstream>

#include "polar/geometry.hpp"
#include "polar/incidence.hpp"

using namespace polar;

namespace {

std::size_t format_error_line(const std::string& text) {
  std::istringstream is(text);
  try {
    read_matrix(is);
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("W(3,3) line incidence is a 4-regular 40 x 40 matrix") {
  const SymplecticSpace V(2, make_field(3, 1));
  const auto M = build_incidence(V, 2);
  CHECK(M.rows == 40);
  CHECK(M.cols == 40);
  CHECK(M.modulus == 3);
  CHECK(M.nnz() == 160);
  for (auto& row : M.row_data) CHECK(row.size() == 4);
  for (auto c : M.column_sums()) CHECK(c == 4);
  M.validate();
  CHECK(transpose(transpose(M)).same_entries(M));
}

TEST_CASE("coisotropic incidence of W(3,3) has q^2+q+1 points per plane") {
  const SymplecticSpace V(2, make_field(3, 1));
  const auto M = build_incidence(V, 3);
  CHECK(M.rows == 40);
  for (auto& row : M.row_data) CHECK(row.size() == 13);
}

TEST_CASE("native and Matrix Market round trips are exact and deterministic") {
  const SymplecticSpace V(2, make_field(3, 1));
  const auto M = build_incidence(V, 2);
  std::ostringstream native, market;
  write_matrix(M, native);
  write_matrix_market(M, market);
  std::istringstream in1(native.str()), in2(market.str());
  CHECK(read_matrix(in1).same_entries(M));
  CHECK(read_matrix_market(in2).same_entries(M));
  CHECK(native.str().rfind("polar-rank-incidence v1\n40 40 3\n", 0) == 0);
  CHECK(matrix_checksum(M) == matrix_checksum(build_incidence(V, 2)));
  CHECK(matrix_checksum(M).size() == 16);
}

TEST_CASE("malformed matrix files report the offending line") {
  CHECK(format_error_line("not-a-matrix\n1 1 3\n0\n") == 1);
  CHECK(format_error_line("polar-rank-incidence v1\n1 x 3\n") == 2);
  CHECK(format_error_line("polar-rank-incidence v1\n2 3 3\n1 0\n2 2 1\n") == 4);
  CHECK(format_error_line("polar-rank-incidence v1\n1 3 3\n1 5\n") == 3);
  CHECK(format_error_line("polar-rank-incidence v1\n2 3 3\n1 0\n") == 3);
}

TEST_CASE("Matrix Market reader checks the modulus and entries") {
  std::istringstream no_modulus("%%MatrixMarket matrix coordinate integer general\n2 2 1\n1 1 1\n");
  CHECK_THROWS_AS(read_matrix_market(no_modulus), Error);
  std::istringstream with_param("%%MatrixMarket matrix coordinate integer general\n2 2 1\n1 1 1\n");
  CHECK(read_matrix_market(with_param, 5).modulus == 5);
  std::istringstream bad_entry("%%MatrixMarket matrix coordinate integer general\n% modulus 5\n2 2 1\n1 1 2\n");
  CHECK_THROWS_AS(read_matrix_market(bad_entry), FormatError);
}

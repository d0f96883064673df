#include <doctest.h>

#include "polar/dimensions.hpp"
#include "polar/types.hpp"

using namespace polar;

TEST_CASE("d_lambda for m=2, p=3") {
  const DimensionTable T(2, 3);
  const std::vector<int> want{1, 4, 10, 16, 19, 16, 10, 4, 1};
  REQUIRE(T.values().size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(T[i] == want[i]);
  const auto [plus, minus] = T.plus_minus();
  CHECK(plus == 14);
  CHECK(minus == 5);
  CHECK(T.at_or_zero(-1) == 0);
  CHECK(T.at_or_zero(9) == 0);
}

TEST_CASE("dimension table properties") {
  for (std::uint32_t m = 1; m <= 3; ++m) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const DimensionTable T(m, p);
      BigInt total = 0;
      const auto top = T.max_lambda();
      for (std::uint32_t l = 0; l <= top; ++l) {
        total += T[l];
        CHECK(T[l] == T[top - l]);
        CHECK(dim_S_lambda_alternating(m, p, l) == dim_S_lambda_count(m, p, l));
      }
      CHECK(T[0] == 1);
      CHECK(T[top] == 1);
      BigInt pm = 1;
      for (std::uint32_t i = 0; i < 2 * m; ++i) pm *= p;
      CHECK(total == pm);
    }
  }
  CHECK_THROWS_AS(dim_S_lambda(2, 3, 9), Error);
  CHECK_THROWS_AS(dim_S_plus_minus(2, 2), Error);
}

TEST_CASE("signed dimensions") {
  const auto ctx = make_context(2, 3, 2);
  CHECK(dim_Y_signed(ctx, {{{2, 2}, 0}, 0b11}) == 424);
  CHECK(dim_L_signed(ctx, {{{2, 2}, 0}, 0b11}) == 196);
  CHECK(dim_L_signed(ctx, {{{2, 2}, 0}, 0b01}) == 70);
  CHECK(dim_L_signed(ctx, {{{1, 1}, 0}, 0}) == 100);
}

TEST_CASE("rank formulas on known cases") {
  CHECK(rank_point_flat(2, 3, 1, 2) == 25);
  CHECK(rank_point_flat(2, 3, 2, 2) == 425);
  CHECK(rank_point_flat(2, 3, 3, 2) == 8353);
  CHECK(rank_point_flat(3, 3, 1, 3) == 196);
  CHECK(rank_point_flat(3, 3, 1, 2) == 343);
  CHECK(rank_point_flat(2, 3, 1, 3) == 11);
  CHECK(rank_point_flat(2, 3, 1, 1) == 40);
  CHECK(rank_point_flat(2, 5, 1, 2) == 91);
  const auto rep = rank_report(2, 3, 1, 3);
  CHECK(rep.needs_oracle_confirmation);
  CHECK_FALSE(rank_report(2, 3, 1, 2).needs_oracle_confirmation);
}

TEST_CASE("transfer matrix for m=3, p=3") {
  const auto D = build_D_matrix(3, 3);
  const BigMatrix want{{21, 126, 90}, {6, 90, 126}, {1, 50, 84}};
  CHECK(D == want);
  CHECK(trace(D) == 195);
  CHECK(determinant(D) == -2268);
  CHECK(rank_trace_formula(3, 3, 1) == 196);
  const auto powers = trace_powers(D, 3);
  CHECK(powers[1] == trace(multiply(D, D)));
}

TEST_CASE("closed forms agree with the trace formula") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    for (std::uint32_t t = 1; t <= 6; ++t) CHECK(rank_W3_closed_form(p, t) == rank_trace_formula(2, p, t));
  }
  const auto [A, B] = w3_roots(3);
  CHECK(A == 12);
  CHECK(B == 2);
  CHECK(rank_W3_char2(1) == 10);
  CHECK(rank_W3_char2(2) == 50);
}

TEST_CASE("big integers print exactly") {
  BigInt v = 1;
  for (int i = 0; i < 30; ++i) v *= 1000;
  CHECK(to_decimal(v) == "1" + std::string(90, '0'));
  CHECK(to_decimal(-v).front() == '-');
}

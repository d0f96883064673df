#include <doctest.h>

#include <set>
#include <tuple>

#include "polar/types.hpp"

using namespace polar;

namespace {

// All lambda tuples with entries in [0, 2m(p-1)].
std::vector<LambdaType> all_lambdas(const TypeContext& ctx) {
  std::vector<LambdaType> out;
  std::vector<std::uint32_t> cur(ctx.t, 0);
  const std::uint32_t top = ctx.max_lambda();
  while (true) {
    std::uint64_t total = 0, place = 1;
    for (auto l : cur) total += l * place, place *= ctx.p;
    out.push_back({cur, ctx.q() == 2 ? 0 : total % (ctx.q() - 1)});
    std::uint32_t j = 0;
    while (j < ctx.t && cur[j] == top) cur[j++] = 0;
    if (j == ctx.t) break;
    ++cur[j];
  }
  return out;
}

}  // namespace

TEST_CASE("lambda and H-type round trip") {
  for (auto [m, p, t] : {std::tuple{2u, 3u, 2u}, {3u, 3u, 2u}, {2u, 5u, 2u}, {2u, 3u, 3u}}) {
    const auto ctx = make_context(m, p, t);
    for (auto& lam : all_lambdas(ctx)) {
      const auto s = h_type_from_lambda(ctx, lam);
      CHECK(lambda_from_h_type(ctx, s) == lam);
      for (auto v : s.s) {
        CHECK(v >= 0);
        CHECK(v <= 2 * static_cast<std::int64_t>(m));
      }
    }
  }
}

TEST_CASE("a lambda with the wrong degree class has no integral H-type") {
  const auto ctx = make_context(2, 3, 2);
  try {
    h_type_from_lambda(ctx, {{1, 0}, 0});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegralSolution);
  }
}

TEST_CASE("type of a monomial") {
  const auto ctx = make_context(2, 3, 2);
  // x1^4 y1^5: digits (1,1) and (2,1), so lambda = (3, 2) and degree 9 = 1 mod 8.
  const auto lam = type_of(ctx, {{4, 0, 0, 5}});
  CHECK(lam.lambda == std::vector<std::uint32_t>{3, 2});
  CHECK(lam.d == 1);
}

TEST_CASE("H for t = 1 is the chain 1 < 2 < ... < 2m-1") {
  const auto ctx = make_context(3, 5, 1);
  const auto H = enumerate_H(ctx);
  REQUIRE(H.size() == 5);
  for (std::size_t i = 0; i < H.size(); ++i) CHECK(H[i].s == std::vector<std::int64_t>{std::int64_t(i) + 1});
  CHECK(enumerate_H0(ctx).size() == 7);
}

TEST_CASE("signed ideal below ((2,2),{0,1}) for m=2, q=9") {
  const auto ctx = make_context(2, 3, 2);
  const SignedHType top{{{2, 2}, 0}, 0b11};
  CHECK(label(top) == "((2,2),{0,1})");
  CHECK(J(ctx, top.s) == 0b11);
  const auto below = signed_ideal_below(ctx, top);
  CHECK(below.size() == 4);
  std::set<std::string> labels;
  for (auto& a : below) labels.insert(label(a));
  CHECK(labels.count("((1,1),{})") == 1);
  CHECK(labels.count("((2,2),{0,1})") == 1);
}

TEST_CASE("the signed order is a partial order") {
  for (auto [m, p, t] : {std::tuple{2u, 3u, 2u}, {2u, 3u, 3u}, {3u, 3u, 2u}}) {
    const auto ctx = make_context(m, p, t);
    const auto S = enumerate_S(ctx);
    for (auto& a : S) {
      CHECK(signed_leq(ctx, a, a));
      for (auto& b : S) {
        if (a != b && signed_leq(ctx, a, b)) CHECK_FALSE(signed_leq(ctx, b, a));
        if (!signed_leq(ctx, a, b)) continue;
        CHECK(leq(a.s, b.s));
        for (auto& c : S) {
          if (signed_leq(ctx, b, c)) CHECK(signed_leq(ctx, a, c));
        }
      }
    }
  }
}

TEST_CASE("Hasse diagram covers are not implied by transitivity") {
  const auto ctx = make_context(2, 3, 2);
  const auto S = enumerate_S(ctx);
  const auto edges = hasse_edges(ctx, S);
  std::set<std::pair<std::size_t, std::size_t>> E(edges.begin(), edges.end());
  for (auto [lo, hi] : edges) {
    CHECK(signed_leq(ctx, S[lo], S[hi]));
    for (std::size_t k = 0; k < S.size(); ++k) {
      if (k == lo || k == hi) continue;
      CHECK_FALSE((signed_leq(ctx, S[lo], S[k]) && signed_leq(ctx, S[k], S[hi])));
    }
  }
  const auto dot = hasse_dot(ctx, S);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
}

TEST_CASE("contexts are validated") {
  CHECK_THROWS_AS(make_context(1, 3, 1), Error);
  CHECK_THROWS_AS(make_context(2, 4, 1), Error);
  const auto ctx = make_context(2, 3, 2);
  CHECK_THROWS_AS(signed_leq(ctx, {{{1}, 0}, 0}, {{{1, 1}, 0}, 0}), Error);
}

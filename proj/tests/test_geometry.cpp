#include <doctest.h>

#include <set>
#include <tuple>

#include "polar/geometry.hpp"

using namespace polar;

TEST_CASE("gaussian binomials and isotropic counts") {
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(6, 2, 3) == 11011);
  CHECK(gaussian_binomial(5, 0, 7) == 1);
  CHECK(isotropic_count(2, 1, 3) == 40);
  CHECK(isotropic_count(2, 2, 3) == 40);
  CHECK(isotropic_count(2, 2, 9) == 820);
  CHECK(isotropic_count(2, 2, 27) == 20440);
  CHECK(isotropic_count(3, 2, 3) == 3640);
  CHECK(isotropic_count(3, 3, 3) == 1120);
}

TEST_CASE("the form is alternating and nondegenerate") {
  const SymplecticSpace V(2, make_field(3, 2));
  const auto pts = enumerate_points(V);
  for (auto& u : pts) CHECK(V.form(u, u) == 0);
  const auto G = V.gram();
  for (std::uint32_t k = 0; k < V.dim(); ++k) {
    for (std::uint32_t l = 0; l < V.dim(); ++l) {
      CHECK((G[k][l] != 0) == (l == V.partner(k)));
      CHECK(G[k][l] == V.F().neg(G[l][k]));
    }
  }
}

TEST_CASE("enumeration sizes match the counting formulas") {
  for (auto [m, p, t] : {std::tuple{2u, 3u, 1u}, {2u, 3u, 2u}, {2u, 5u, 1u}, {3u, 3u, 1u}}) {
    CAPTURE(m);
    CAPTURE(p);
    CAPTURE(t);
    const SymplecticSpace V(m, make_field(p, t));
    const std::uint64_t q = V.q();
    CHECK(enumerate_points(V).size() == (checked_pow(q, 2 * m) - 1) / (q - 1));
    for (std::uint32_t r = 1; r <= m; ++r) {
      const auto flats = enumerate_isotropic(V, r);
      CHECK(flats.size() == isotropic_count(m, r, q));
      for (auto& W : flats) CHECK(is_totally_isotropic(V, W));
    }
  }
  const SymplecticSpace V(3, make_field(3, 1));
  CHECK(enumerate_subspaces(V, 2).size() == 11011);
}

TEST_CASE("perp of an isotropic flat is a coisotropic flat containing it") {
  const SymplecticSpace V(3, make_field(3, 1));
  const auto lines = enumerate_isotropic(V, 2);
  std::set<Subspace> perps;
  for (std::size_t i = 0; i < lines.size(); i += 97) {
    const auto P = perp(V, lines[i]);
    CHECK(P.dim() == 4);
    CHECK(P.contains(V.F(), lines[i]));
    CHECK(perp(V, P) == lines[i]);
  }
  CHECK(enumerate_coisotropic(V, 4).size() == lines.size());
}

TEST_CASE("subspace canonical form and membership") {
  const auto F = make_field(5, 1);
  const auto W = Subspace::from_generators(*F, 4, {{1, 2, 0, 0}, {2, 4, 0, 0}, {0, 0, 1, 3}});
  CHECK(W.dim() == 2);
  CHECK(W.contains(*F, std::vector<GaloisField::Code>{3, 1, 2, 1}));
  CHECK_FALSE(W.contains(*F, std::vector<GaloisField::Code>{1, 0, 0, 0}));
  CHECK(W.points(*F).size() == 6);
  const auto N = null_space(*F, W.rows(), 4);
  CHECK(N.size() == 2);
  for (auto& x : N) {
    for (auto& row : W.rows()) {
      GaloisField::Code acc = 0;
      for (int k = 0; k < 4; ++k) acc = F->add(acc, F->mul(row[k], x[k]));
      CHECK(acc == 0);
    }
  }
}

TEST_CASE("geometry rejects characteristic 2 and small m") {
  CHECK_THROWS_AS(SymplecticSpace(1, make_field(3, 1)), Error);
  CHECK_THROWS_AS(make_field(2, 1), Error);
}

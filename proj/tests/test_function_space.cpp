#include <doctest.h>

#include <random>

#include "polar/dimensions.hpp"
#include "polar/function_space.hpp"

using namespace polar;
using Code = GaloisField::Code;

namespace {

FunctionOnV random_function(const SpacePtr& S, std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<std::uint64_t> key(0, S->size() - 1);
  std::uniform_int_distribution<Code> coeff(1, S->q() - 1);
  FunctionOnV f(S);
  for (int i = 0; i < terms; ++i) f.add_term(key(rng), coeff(rng));
  return f;
}

std::vector<Code> vector_at(const FunctionSpace& S, std::uint64_t index) {
  std::vector<Code> v(S.nvars());
  for (auto& c : v) {
    c = static_cast<Code>(index % S.q());
    index /= S.q();
  }
  return v;
}

// g^T v
std::vector<Code> transpose_apply(const GaloisField& F, const GroupElement& g, const std::vector<Code>& v) {
  std::vector<Code> out(v.size(), 0);
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    for (std::uint32_t k = 0; k < v.size(); ++k) out[i] = F.add(out[i], F.mul(g.at(k, i), v[k]));
  }
  return out;
}

}  // namespace

TEST_CASE("exponents fold back into [1, q-1]") {
  const auto S = make_function_space(2, 3, 2);
  CHECK(S->reduce_exponent(0) == 0);
  CHECK(S->reduce_exponent(8) == 8);
  CHECK(S->reduce_exponent(9) == 1);
  CHECK(S->reduce_exponent(16) == 8);
  CHECK(S->reduce_exponent(17) == 1);
}

TEST_CASE("evaluation, interpolation and multiplication are consistent") {
  std::mt19937_64 rng(3);
  for (auto [p, t] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}}) {
    const auto S = make_function_space(2, p, t);
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_function(S, rng, 25), g = random_function(S, rng, 25);
      const auto vf = evaluate_all(f), vg = evaluate_all(g);
      CHECK(interpolate(S, vf) == f);
      const auto vfg = evaluate_all(reduce_and_multiply(f, g));
      std::uint64_t bad = 0;
      for (std::uint64_t i = 0; i < S->size(); ++i) {
        if (vfg[i] != S->F().mul(vf[i], vg[i])) ++bad;
      }
      CHECK(bad == 0);
      for (std::uint64_t i = 0; i < S->size(); i += 37) CHECK(evaluate(f, vector_at(*S, i)) == vf[i]);
    }
  }
}

TEST_CASE("group action is substitution by the transpose and respects products") {
  std::mt19937_64 rng(5);
  const auto S = make_function_space(2, 3, 2);
  const auto gens = standard_generators(S);
  const auto f = random_function(S, rng, 12);
  for (std::size_t i = 0; i < gens.size(); i += 5) {
    const auto& g = gens[i];
    const auto moved = act(g, f);
    for (std::uint64_t idx = 0; idx < S->size(); idx += 41) {
      const auto v = vector_at(*S, idx);
      CHECK(evaluate(moved, v) == evaluate(f, transpose_apply(S->F(), g, v)));
    }
    const auto& h = gens[(i + 3) % gens.size()];
    CHECK(act(g, act(h, f)) == act(g.multiply(S->F(), h), f));
  }
}

TEST_CASE("non-symplectic matrices are rejected") {
  const auto S = make_function_space(2, 3, 1);
  auto e = GroupElement::identity(S).entries();
  e[0] = 2;
  CHECK_THROWS_AS(GroupElement(S, e), Error);
}

TEST_CASE("compiled plane operators match the group ring action") {
  std::mt19937_64 rng(9);
  const auto S = make_function_space(2, 3, 2);
  const auto E = shift_operator(S, 1, 1) * shift_operator(S, 2, 0, true) + GroupRingElement::scalar(S, 2);
  const PlaneOperator P(E);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_function(S, rng, 10);
    CHECK(P.apply(f) == E.apply(f));
  }
  CHECK_THROWS_AS(PlaneOperator(GroupRingElement::single(S, standard_generators(S)[2])), Error);
}

TEST_CASE("shift closed form matches direct summation") {
  const auto S = make_function_space(2, 5, 2);
  std::mt19937_64 rng(1);
  for (std::uint32_t ell = 1; ell < 5; ++ell) {
    for (std::uint32_t j = 0; j < 2; ++j) {
      const auto op = shift_operator(S, ell, j);
      for (int i = 0; i < 10; ++i) {
        const auto f = random_function(S, rng, 1);
        CHECK(op.apply(f) == shift_closed_form(f, ell, j));
      }
    }
  }
  CHECK(shift_operator(S, 0, 0).size() == 1);
}

TEST_CASE("at t = 1 the top shift picks up an extra term, so the closed form is refused") {
  const auto S = make_function_space(2, 3, 1);
  const auto f = FunctionOnV::monomial(S, std::vector<std::uint64_t>{2, 0, 0, 0});
  const auto direct = shift_operator(S, 2, 0).apply(f);
  CHECK(direct.size() == 2);
  CHECK_THROWS_AS(shift_closed_form(f, 2, 0), Error);
}

TEST_CASE("group ring elements cannot separate the constants from the point indicator") {
  // Every element acts on 1 and on the indicator of the origin by the same scalar,
  // which is why no projector can select monomials with an exponent q-1 exactly.
  const auto S = make_function_space(2, 3, 2);
  const Subspace origin = Subspace::from_generators(S->F(), 4, {});
  const auto delta = char_function(S, origin);
  const auto one = FunctionOnV::constant(S, 1);
  const DigitProjectors proj(S, 0);
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) {
      const auto& E = proj.element(a, b);
      Code total = 0;
      for (auto& [g, c] : E.terms()) total = S->F().add(total, c);
      CHECK(E.apply(one) == one.scaled(total));
      CHECK(proj.compiled(a, b).apply(delta) == delta.scaled(total));
    }
  }
}

TEST_CASE("digit projectors select correctly away from the top exponent") {
  const auto S = make_function_space(2, 3, 2);
  const auto q = S->q();
  for (std::uint32_t j = 0; j < 2; ++j) {
    const DigitProjectors proj(S, j);
    std::uint64_t bad = 0, checked = 0;
    for (std::uint32_t a = 0; a < 3; ++a) {
      for (std::uint32_t b = 0; b < 3; ++b) {
        for (std::uint64_t x = 0; x + 1 < q; ++x) {
          for (std::uint64_t y = 0; y + 1 < q; ++y) {
            const auto key = S->encode(std::vector<std::uint64_t>{x, 1, 2, y});
            const auto got = proj.compiled(a, b).apply_monomial(key);
            const bool keep = projector_selects(*S, a, b, j, key);
            ++checked;
            if (!(got == (keep ? FunctionOnV::from_key(S, key) : FunctionOnV(S)))) ++bad;
          }
        }
      }
    }
    CHECK(checked == 9 * 64);
    CHECK(bad == 0);
  }
}

TEST_CASE("tau is an involution and splits the middle degree") {
  for (auto [m, p] : {std::pair{2u, 3u}, {2u, 5u}, {3u, 3u}, {2u, 7u}}) {
    const auto split = classify_S_plus_minus(m, p);
    const auto [plus, minus] = dim_S_plus_minus(m, p);
    CHECK(split.tau_square_failures == 0);
    CHECK(BigInt(split.plus) == plus);
    CHECK(BigInt(split.minus) == minus);
  }
  const auto split = classify_S_plus_minus(2, 3);
  CHECK(split.plus == 14);
  CHECK(split.minus == 5);
  CHECK_THROWS_AS(tau(2, 3, {{1, 1}, {1, 0}}), Error);
}

TEST_CASE("digit functions are counted by d_lambda") {
  for (auto [m, p] : {std::pair{2u, 3u}, {2u, 5u}, {3u, 3u}}) {
    const DimensionTable T(m, p);
    for (std::uint32_t l = 0; l <= T.max_lambda(); ++l) CHECK(BigInt(digit_functions(m, p, l).size()) == T[l]);
  }
}

TEST_CASE("symplectic basis suite passes exhaustively for q = 9") {
  const auto r = verify_symplectic_basis(make_function_space(2, 3, 2));
  CHECK(r.failures == 0);
  CHECK(r.checked > 0);
}

TEST_CASE("characteristic function of a Lagrangian and its top types") {
  for (std::uint32_t t : {1u, 2u}) {
    const auto S = make_function_space(2, 3, t);
    const auto L = Subspace::from_generators(S->F(), 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});  // x1 = x2 = 0
    const auto chi = char_function(S, L);
    const auto values = evaluate_all(chi);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < S->size(); ++i) {
      const auto v = vector_at(*S, i);
      if (values[i] != (L.contains(S->F(), v) ? 1u : 0u)) ++bad;
    }
    CHECK(bad == 0);
    const auto expansion = expand_in_symplectic_basis(chi - FunctionOnV::constant(S, 1));
    REQUIRE(expansion.maximal.size() == 1);
    CHECK(label(expansion.maximal[0]) == (t == 1 ? "((2),{0})" : "((2,2),{0,1})"));
    CHECK(verify_sp_invariance(S, expansion.maximal[0]).failures == 0);
  }
}

TEST_CASE("functions on different spaces do not mix") {
  const auto A = make_function_space(2, 3, 1), B = make_function_space(2, 5, 1);
  CHECK_THROWS_AS(FunctionOnV::constant(A, 1) + FunctionOnV::constant(B, 1), Error);
}

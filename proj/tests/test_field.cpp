#include <doctest.h>

#include "polar/field.hpp"

using namespace polar;

namespace {

// Schoolbook product of coefficient vectors reduced by a monic modulus.
std::vector<std::uint32_t> naive_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                     const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
  const std::size_t t = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t k = 2 * t - 1; k >= t; --k) {
    const auto c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= t; ++i) prod[k - t + i] = (prod[k - t + i] + (p - c) * modulus[i]) % p;
  }
  return {prod.begin(), prod.begin() + t};
}

std::uint32_t pascal_mod(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
  std::vector<std::uint32_t> row{1};
  for (std::uint32_t i = 1; i <= n; ++i) {
    std::vector<std::uint32_t> next(i + 1, 1);
    for (std::uint32_t j = 1; j < i; ++j) next[j] = (row[j - 1] + row[j]) % p;
    row = std::move(next);
  }
  return k <= n ? row[k] : 0;
}

}  // namespace

TEST_CASE("primality and binomials mod p") {
  CHECK(is_prime(2));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(25));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t n = 0; n < 40; ++n) {
      for (std::uint32_t k = 0; k <= n + 1; ++k) CHECK(binomial_mod_p(n, k, p) == pascal_mod(n, k, p));
    }
  }
}

TEST_CASE("checked_pow detects overflow") {
  CHECK(checked_pow(3, 4) == 81);
  CHECK(checked_pow(2, 63) == (std::uint64_t{1} << 63));
  CHECK_THROWS_AS(checked_pow(2, 64), Error);
}

TEST_CASE("modulus is the smallest-code monic irreducible") {
  CHECK(build_field(3, 1).modulus == std::vector<std::uint32_t>{0, 1});
  CHECK(build_field(3, 2).modulus == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(build_field(5, 2).modulus == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(build_field(3, 3).modulus == std::vector<std::uint32_t>{1, 2, 0, 1});
  CHECK(is_irreducible({1, 0, 1}, 3));
  CHECK_FALSE(is_irreducible({2, 0, 1}, 3));
  CHECK_FALSE(is_irreducible({1, 0, 1}, 5));
}

TEST_CASE("invalid field requests") {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::RangeError;
  };
  CHECK(kind([] { make_field(9, 1); }) == ErrorKind::CompositeP);
  CHECK(kind([] { make_field(2, 2); }) == ErrorKind::UnsupportedCharacteristic);
  CHECK(make_field(2, 3, FieldMode::Arithmetic)->q() == 8);
}

TEST_CASE("field axioms and multiplication against naive polynomial arithmetic") {
  for (auto [p, t] : {std::pair{3u, 2u}, {5u, 2u}, {3u, 3u}, {7u, 1u}, {2u, 4u}}) {
    CAPTURE(p);
    CAPTURE(t);
    const auto F = make_field(p, t, FieldMode::Arithmetic);
    const auto q = F->q();
    std::uint64_t bad = 0;
    for (GaloisField::Code a = 0; a < q; ++a) {
      if (F->from_coefficients(F->coefficients(a)) != a) ++bad;
      if (F->add(a, F->neg(a)) != 0) ++bad;
      if (a != 0 && F->mul(a, F->inv(a)) != 1) ++bad;
      for (GaloisField::Code b = 0; b < q; ++b) {
        if (F->coefficients(F->mul(a, b)) != naive_mul(F->coefficients(a), F->coefficients(b), F->spec().modulus, p))
          ++bad;
        if (F->frobenius(F->add(a, b)) != F->add(F->frobenius(a), F->frobenius(b))) ++bad;
        for (GaloisField::Code c = 0; c < q; c += 3) {
          if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c))) ++bad;
        }
      }
    }
    CHECK(bad == 0);
    CHECK(F->multiplicative_order(F->primitive_element()) == q - 1);
    CHECK(F->pow(F->primitive_element(), q - 1) == 1);
  }
}

TEST_CASE("GF(27) has a generator of the 26-element multiplicative group") {
  const auto F = make_field(3, 3);
  int generators = 0;
  for (GaloisField::Code a = 1; a < 27; ++a) generators += F->multiplicative_order(a) == 26;
  CHECK(generators == 12);
}

TEST_CASE("field elements refuse to mix fields") {
  const auto F9 = make_field(3, 2), F27 = make_field(3, 3);
  FieldElement a(F9, 4), b(F27, 4);
  CHECK_THROWS_AS(a + b, Error);
  CHECK((a * a.inv()).code() == 1);
  CHECK_THROWS_AS(FieldElement(F9, 0).inv(), Error);
}

#include <doctest.h>

#include <random>

#include "polar/geometry.hpp"
#include "polar/incidence.hpp"
#include "polar/rank.hpp"

using namespace polar;

namespace {

// Textbook elimination with 64-bit modular arithmetic, used as the independent oracle.
std::uint64_t reference_rank(std::vector<std::vector<std::int64_t>> a, std::uint64_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (auto& row : a) {
    for (auto& v : row) v = ((v % static_cast<std::int64_t>(p)) + p) % p;
  }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>((__uint128_t)x * y % p); };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b)) {
      if (e & 1) r = mulmod(r, b);
    }
    return r;
  };
  std::uint64_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const auto inv = powmod(a[rank][c], p - 2);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const auto f = mulmod(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        a[r][k] = static_cast<std::int64_t>((a[r][k] + p - mulmod(f, a[rank][k])) % p);
      }
    }
    ++rank;
  }
  return rank;
}

SparseIncidenceMatrix random_01(std::uint32_t rows, std::uint32_t cols, std::uint32_t p, double density,
                                std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  SparseIncidenceMatrix M;
  M.rows = rows, M.cols = cols, M.modulus = p;
  for (std::uint32_t r = 0; r < rows; ++r) {
    std::vector<std::uint32_t> row;
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (coin(rng)) row.push_back(c);
    }
    M.row_data.push_back(row);
  }
  return M;
}

std::vector<std::vector<std::int64_t>> dense_of(const SparseIncidenceMatrix& M) {
  std::vector<std::vector<std::int64_t>> a(M.rows, std::vector<std::int64_t>(M.cols, 0));
  for (std::uint32_t r = 0; r < M.rows; ++r) {
    for (auto c : M.row_data[r]) a[r][c] = 1;
  }
  return a;
}

}  // namespace

TEST_CASE("0/1 matrices: dense, threaded and streaming ranks agree with the reference") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {3u, 5u, 7u, 13u, 251u, 65521u, 2147483647u}) {
    for (int trial = 0; trial < 6; ++trial) {
      CAPTURE(p);
      CAPTURE(trial);
      const std::uint32_t rows = 20 + trial * 13, cols = 90 + trial * 7;
      const auto M = random_01(rows, cols, p, trial % 2 ? 0.05 : 0.4, rng);
      const auto want = reference_rank(dense_of(M), p);
      CHECK(rank_mod_p(M) == want);
      CHECK(rank_mod_p(M, {.threads = 3}) == want);
      CHECK(rank_streaming(M) == want);
    }
  }
}

TEST_CASE("general dense matrices with large entries") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u, 101u, 40009u, 4294967291u}) {
    std::uniform_int_distribution<std::int64_t> entry(-1'000'000'000, 1'000'000'000);
    for (int trial = 0; trial < 4; ++trial) {
      const std::uint32_t rows = 30 + 10 * trial, cols = 40;
      std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
      for (auto& row : a) {
        for (auto& v : row) v = trial == 3 ? entry(rng) % 3 : entry(rng);
      }
      // Force dependencies: the last rows repeat combinations of earlier ones.
      for (std::uint32_t r = rows - 5; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) a[r][c] = a[r - 10][c] * 2 - a[r - 20][c];
      }
      CAPTURE(p);
      CHECK(rank_dense_mod_p(a, cols, p) == reference_rank(a, p));
      StreamingRank s(cols, p);
      for (auto& row : a) {
        std::vector<std::pair<std::uint32_t, std::int64_t>> entries;
        for (std::uint32_t c = 0; c < cols; ++c) {
          if (row[c] != 0) entries.emplace_back(c, row[c]);
        }
        s.add_row(entries);
      }
      CHECK(s.rank() == reference_rank(a, p));
    }
  }
}

TEST_CASE("known incidence ranks") {
  const SymplecticSpace V(2, make_field(3, 1));
  const auto M = build_incidence(V, 2);
  CHECK(rank_mod_p(M) == 25);
  CHECK(rank_streaming(M) == 25);
  CHECK(rank_mod_p(transpose(M)) == 25);
}

TEST_CASE("streaming rank validates rows before touching its state") {
  StreamingRank s(4, 3);
  const std::vector<std::uint32_t> good{0, 1}, bad{2, 9};
  CHECK(s.add_row(good));
  CHECK_THROWS_AS(s.add_row(bad), Error);
  CHECK_FALSE(s.add_row(good));
  CHECK(s.rank() == 1);
  CHECK(s.modulus() == 3);
}

TEST_CASE("deadlines abort elimination") {
  const SymplecticSpace V(2, make_field(3, 1));
  const auto M = build_incidence(V, 2);
  RankOptions past;
  past.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(rank_mod_p(M, past), Error);
}

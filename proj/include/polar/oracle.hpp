#pragma once

#include <cstdint>

#include "polar/rank.hpp"

namespace polar {

/// Default ceiling on rows x cols for brute-force jobs.
inline constexpr std::uint64_t kDefaultCellCap = 500'000'000;

/// Above this many cells the oracle switches from dense to streaming elimination.
inline constexpr std::uint64_t kStreamingThreshold = 100'000'000;

struct IncidenceShape {
  std::uint64_t rows = 0;  // flats
  std::uint64_t cols = 0;  // points
  std::uint64_t cells() const { return rows * cols; }
};

/// Matrix size for W(2m-1, p^t) points against r-flats, from the counting formulas.
IncidenceShape incidence_shape(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r);

struct OracleResult {
  IncidenceShape shape;
  std::uint64_t rank = 0;
  bool streaming = false;
  double build_seconds = 0;
  double rank_seconds = 0;
};

/// Builds the incidence matrix and eliminates it over GF(p). Throws ResourceCapExceeded
/// when the matrix exceeds `cell_cap` (0 disables the cap).
OracleResult oracle_rank(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r,
                         std::uint64_t cell_cap = kDefaultCellCap, const RankOptions& options = {});

}  // namespace polar

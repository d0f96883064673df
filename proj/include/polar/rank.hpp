#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polar/incidence.hpp"

namespace polar {

struct RankOptions {
  /// Worker threads for the dense elimination; 0 picks the hardware concurrency.
  unsigned threads = 1;
  /// Elimination throws ResourceCapExceeded once this instant has passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Rank over GF(modulus) by dense forward elimination on packed residues.
std::uint64_t rank_mod_p(const SparseIncidenceMatrix& M, const RankOptions& options = {});

/// Rank over GF(p) of a dense matrix of integer entries (reduced mod p on input).
std::uint64_t rank_dense_mod_p(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t cols,
                               std::uint32_t p, const RankOptions& options = {});

/// Incremental rank: keeps a Gauss-Jordan reduced basis of the rows seen so far, so
/// memory is rank x cols residues and a sparse row costs one pass per nonzero pivot hit.
class StreamingRank {
 public:
  StreamingRank(std::uint32_t cols, std::uint32_t p, const RankOptions& options = {});
  ~StreamingRank();
  StreamingRank(StreamingRank&&) noexcept;
  StreamingRank& operator=(StreamingRank&&) noexcept;

  /// A 0/1 row given by its (distinct) nonzero columns. Returns true when the rank grew.
  bool add_row(std::span<const std::uint32_t> columns);
  /// A general sparse row of (column, value) entries; values are reduced mod p.
  bool add_row(std::span<const std::pair<std::uint32_t, std::int64_t>> entries);

  std::uint64_t rank() const;
  std::uint32_t cols() const;
  std::uint32_t modulus() const;
  /// Bytes held by the reduced basis.
  std::size_t basis_bytes() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

/// Pulls rows from `next_row` until it returns false.
std::uint64_t rank_streaming(const std::function<bool(std::vector<std::uint32_t>&)>& next_row, std::uint32_t cols,
                             std::uint32_t p, const RankOptions& options = {});

std::uint64_t rank_streaming(const SparseIncidenceMatrix& M, const RankOptions& options = {});

}  // namespace polar

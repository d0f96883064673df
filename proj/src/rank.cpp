#include "polar/rank.hpp"

#include <algorithm>
#include <barrier>
#include <limits>
#include <thread>
#include <type_traits>

namespace polar {

namespace {

constexpr std::size_t kAlign = 64;

std::size_t padded(std::size_t n) { return (n + kAlign - 1) / kAlign * kAlign; }
std::size_t align_down(std::size_t n) { return n / kAlign * kAlign; }

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

void check_deadline(const RankOptions& options) {
  if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
    throw Error(ErrorKind::ResourceCapExceeded, "rank computation exceeded its time budget");
  }
}

// Residues live in lanes wide enough to absorb several row additions before a
// reduction is needed; `limit` is the largest value a lane may hold.
template <class Lane>
struct LaneArith {
  std::uint32_t p;
  std::uint64_t limit;
  std::uint64_t step;  // worst-case growth of one addition c * src with c, src <= p - 1
  std::vector<Lane> table;

  explicit LaneArith(std::uint32_t modulus)
      : p(modulus),
        limit(std::numeric_limits<Lane>::max()),
        step(static_cast<std::uint64_t>(modulus - 1) * (modulus - 1)) {
    if constexpr (sizeof(Lane) <= 2) {
      table.resize(static_cast<std::size_t>(limit) + 1);
      for (std::size_t v = 0; v < table.size(); ++v) table[v] = static_cast<Lane>(v % p);
    }
  }

  Lane reduce1(Lane v) const {
    if constexpr (sizeof(Lane) <= 2) {
      return table[v];
    } else {
      return static_cast<Lane>(v % p);
    }
  }

  void reduce(Lane* row, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) row[i] = reduce1(row[i]);
  }

  // row <- c * row mod p on a reduced row.
  void scale(Lane* row, std::size_t n, std::uint64_t c) const {
    for (std::size_t i = 0; i < n; ++i) row[i] = static_cast<Lane>(row[i] * c % p);
  }

  bool fits(std::uint64_t bound) const { return bound <= limit - step; }
};

template <class Lane>
void axpy(Lane* __restrict dst, const Lane* __restrict src, Lane c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<Lane>(dst[i] + c * src[i]);
}

template <class Lane>
std::uint64_t eliminate_dense(std::vector<Lane>& storage, std::uint32_t rows, std::size_t stride, std::uint32_t cols,
                              std::uint32_t p, const RankOptions& options) {
  const LaneArith<Lane> arith(p);
  std::vector<Lane*> row(rows);
  for (std::uint32_t i = 0; i < rows; ++i) row[i] = storage.data() + i * stride;
  std::vector<std::uint64_t> bound(rows, p - 1);

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, std::max<std::uint32_t>(1, rows / 64));

  std::uint32_t rank = 0;
  std::uint32_t col = 0;
  bool done = false;
  bool timed_out = false;

  // Finds the next pivot column at or after `col` and normalizes its row into position `rank`.
  auto advance = [&]() noexcept {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
      timed_out = done = true;
      return;
    }
    for (; col < cols && rank < rows; ++col) {
      for (std::uint32_t i = rank; i < rows; ++i) {
        const Lane v = arith.reduce1(row[i][col]);
        if (v == 0) continue;
        std::swap(row[i], row[rank]);
        std::swap(bound[i], bound[rank]);
        const std::size_t start = align_down(col);
        arith.reduce(row[rank] + start, stride - start);
        arith.scale(row[rank] + start, stride - start, inv_mod(v, p));
        bound[rank] = p - 1;
        return;
      }
    }
    done = true;
  };

  auto eliminate_stripe = [&](unsigned id) {
    const Lane* pivot = row[rank];
    const std::size_t start = align_down(col);
    for (std::uint32_t i = rank + 1 + id; i < rows; i += threads) {
      const Lane v = arith.reduce1(row[i][col]);
      if (v == 0) continue;
      if (!arith.fits(bound[i])) {
        arith.reduce(row[i] + start, stride - start);
        bound[i] = p - 1;
      }
      axpy(row[i] + start, pivot + start, static_cast<Lane>(p - v), stride - start);
      bound[i] += arith.step;
    }
  };

  auto on_phase = [&]() noexcept {
    if (done) return;
    ++rank;
    ++col;
    advance();
  };

  advance();
  if (threads <= 1) {
    while (!done) {
      eliminate_stripe(0);
      on_phase();
    }
  } else {
    std::barrier sync(static_cast<std::ptrdiff_t>(threads), on_phase);
    auto worker = [&](unsigned id) {
      while (!done) {
        eliminate_stripe(id);
        sync.arrive_and_wait();
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
    worker(0);
  }
  if (timed_out) throw Error(ErrorKind::ResourceCapExceeded, "rank computation exceeded its time budget");
  return rank;
}

template <class Fn>
decltype(auto) with_lane(std::uint32_t p, Fn&& fn) {
  const std::uint64_t need = static_cast<std::uint64_t>(p - 1) * (p - 1) + (p - 1);
  if (need <= std::numeric_limits<std::uint8_t>::max()) return fn(std::uint8_t{});
  if (need <= std::numeric_limits<std::uint16_t>::max()) return fn(std::uint16_t{});
  if (need <= std::numeric_limits<std::uint32_t>::max()) return fn(std::uint32_t{});
  return fn(std::uint64_t{});
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
}

}  // namespace

std::uint64_t rank_mod_p(const SparseIncidenceMatrix& M, const RankOptions& options) {
  require_prime(M.modulus);
  if (M.rows == 0 || M.cols == 0) return 0;
  return with_lane(M.modulus, [&](auto tag) {
    using Lane = decltype(tag);
    const std::size_t stride = padded(M.cols);
    std::vector<Lane> storage(stride * M.rows, 0);
    for (std::uint32_t i = 0; i < M.rows; ++i) {
      for (auto c : M.row_data[i]) storage[i * stride + c] = 1 % M.modulus;
    }
    return eliminate_dense<Lane>(storage, M.rows, stride, M.cols, M.modulus, options);
  });
}

std::uint64_t rank_dense_mod_p(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t cols,
                               std::uint32_t p, const RankOptions& options) {
  require_prime(p);
  if (rows.empty() || cols == 0) return 0;
  return with_lane(p, [&](auto tag) {
    using Lane = decltype(tag);
    const std::size_t stride = padded(cols);
    std::vector<Lane> storage(stride * rows.size(), 0);
    const std::int64_t mod = p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged dense matrix");
      for (std::uint32_t c = 0; c < cols; ++c) storage[i * stride + c] = static_cast<Lane>(((rows[i][c] % mod) + mod) % mod);
    }
    return eliminate_dense<Lane>(storage, static_cast<std::uint32_t>(rows.size()), stride, cols, p, options);
  });
}

struct StreamingRank::Impl {
  virtual ~Impl() = default;
  virtual bool add(std::span<const std::pair<std::uint32_t, std::uint32_t>> entries) = 0;
  virtual std::uint64_t rank() const = 0;
  virtual std::size_t basis_bytes() const = 0;

  std::uint32_t cols = 0;
  std::uint32_t p = 0;
  RankOptions options;
};

namespace {

template <class Lane>
class StreamingImpl final : public StreamingRank::Impl {
 public:
  StreamingImpl(std::uint32_t n, std::uint32_t modulus, const RankOptions& opts)
      : arith_(modulus), stride_(padded(n)), pivot_of_(n, -1), work_(stride_, 0) {
    cols = n;
    p = modulus;
    options = opts;
  }

  bool add(std::span<const std::pair<std::uint32_t, std::uint32_t>> entries) override {
    check_deadline(options);
    for (auto [c, v] : entries) {
      if (c >= cols) throw Error(ErrorKind::RangeError, "column index out of range");
    }
    for (auto [c, v] : entries) {
      work_[c] = arith_.reduce1(static_cast<Lane>(work_[c] + v));
    }
    std::uint64_t bound = p - 1;
    // Basis rows vanish on each other's pivots, so only pivots in the original support matter.
    for (auto [c, unused] : entries) {
      (void)unused;
      const std::int64_t b = pivot_of_[c];
      if (b < 0) continue;
      const Lane v = arith_.reduce1(work_[c]);
      if (v == 0) continue;
      Lane* src = basis_[b].data();
      if (basis_bound_[b] > p - 1) {
        arith_.reduce(src, stride_);
        basis_bound_[b] = p - 1;
      }
      if (!arith_.fits(bound)) {
        arith_.reduce(work_.data(), stride_);
        bound = p - 1;
      }
      axpy(work_.data(), src, static_cast<Lane>(p - v), stride_);
      bound += arith_.step;
    }
    arith_.reduce(work_.data(), stride_);
    const auto first = std::find_if(work_.begin(), work_.begin() + cols, [](Lane x) { return x != 0; });
    if (first == work_.begin() + cols) {
      std::fill(work_.begin(), work_.end(), Lane{0});
      return false;
    }
    const std::uint32_t pc = static_cast<std::uint32_t>(first - work_.begin());
    const std::size_t start = align_down(pc);
    arith_.scale(work_.data() + start, stride_ - start, inv_mod(*first, p));

    for (std::size_t b = 0; b < basis_.size(); ++b) {
      Lane* row = basis_[b].data();
      const Lane v = arith_.reduce1(row[pc]);
      if (v == 0) continue;
      if (!arith_.fits(basis_bound_[b])) {
        arith_.reduce(row, stride_);
        basis_bound_[b] = p - 1;
      }
      axpy(row + start, work_.data() + start, static_cast<Lane>(p - v), stride_ - start);
      basis_bound_[b] += arith_.step;
    }
    pivot_of_[pc] = static_cast<std::int64_t>(basis_.size());
    basis_.push_back(std::move(work_));
    basis_bound_.push_back(p - 1);
    work_.assign(stride_, 0);
    return true;
  }

  std::uint64_t rank() const override { return basis_.size(); }
  std::size_t basis_bytes() const override { return basis_.size() * stride_ * sizeof(Lane); }

 private:
  LaneArith<Lane> arith_;
  std::size_t stride_;
  std::vector<std::int64_t> pivot_of_;
  std::vector<std::vector<Lane>> basis_;
  std::vector<std::uint64_t> basis_bound_;
  std::vector<Lane> work_;
};

}  // namespace

StreamingRank::StreamingRank(std::uint32_t cols, std::uint32_t p, const RankOptions& options) {
  require_prime(p);
  impl_ = with_lane(p, [&](auto tag) -> std::unique_ptr<Impl> {
    return std::make_unique<StreamingImpl<decltype(tag)>>(cols, p, options);
  });
}

StreamingRank::~StreamingRank() = default;
StreamingRank::StreamingRank(StreamingRank&&) noexcept = default;
StreamingRank& StreamingRank::operator=(StreamingRank&&) noexcept = default;

bool StreamingRank::add_row(std::span<const std::uint32_t> columns) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  entries.reserve(columns.size());
  for (auto c : columns) entries.emplace_back(c, 1 % impl_->p);
  return impl_->add(entries);
}

bool StreamingRank::add_row(std::span<const std::pair<std::uint32_t, std::int64_t>> entries) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> reduced;
  reduced.reserve(entries.size());
  const std::int64_t mod = impl_->p;
  for (auto [c, v] : entries) reduced.emplace_back(c, static_cast<std::uint32_t>(((v % mod) + mod) % mod));
  return impl_->add(reduced);
}

std::uint64_t StreamingRank::rank() const { return impl_->rank(); }
std::uint32_t StreamingRank::cols() const { return impl_->cols; }
std::uint32_t StreamingRank::modulus() const { return impl_->p; }
std::size_t StreamingRank::basis_bytes() const { return impl_->basis_bytes(); }

std::uint64_t rank_streaming(const std::function<bool(std::vector<std::uint32_t>&)>& next_row, std::uint32_t cols,
                             std::uint32_t p, const RankOptions& options) {
  StreamingRank acc(cols, p, options);
  std::vector<std::uint32_t> row;
  while (true) {
    row.clear();
    if (!next_row(row)) break;
    acc.add_row(row);
    if (acc.rank() == cols) break;
  }
  return acc.rank();
}

std::uint64_t rank_streaming(const SparseIncidenceMatrix& M, const RankOptions& options) {
  std::uint32_t i = 0;
  return rank_streaming(
      [&](std::vector<std::uint32_t>& row) {
        if (i == M.rows) return false;
        row = M.row_data[i++];
        return true;
      },
      M.cols, M.modulus, options);
}

}  // namespace polar

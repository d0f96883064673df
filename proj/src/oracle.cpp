#include "polar/oracle.hpp"

#include <chrono>
#include <string>

#include "polar/error.hpp"
#include "polar/geometry.hpp"
#include "polar/incidence.hpp"

namespace polar {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

IncidenceShape incidence_shape(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r) {
  if (m < 2) throw Error(ErrorKind::RangeError, "m must be at least 2");
  if (r < 1 || r > 2 * m - 1) throw Error(ErrorKind::RangeError, "r must be in [1, 2m-1]");
  const std::uint64_t q = checked_pow(p, t);
  const std::uint64_t points = (checked_pow(q, 2 * m) - 1) / (q - 1);
  // Coisotropic r-flats are the perps of isotropic (2m-r)-flats.
  const std::uint64_t flats = isotropic_count(m, r <= m ? r : 2 * m - r, q);
  return {flats, points};
}

OracleResult oracle_rank(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r, std::uint64_t cell_cap,
                         const RankOptions& options) {
  OracleResult out;
  out.shape = incidence_shape(m, p, t, r);
  if (cell_cap != 0 && out.shape.cells() > cell_cap) {
    throw Error(ErrorKind::ResourceCapExceeded, "incidence matrix has " + std::to_string(out.shape.cells()) +
                                                    " cells, above the cap of " + std::to_string(cell_cap));
  }
  const SymplecticSpace space(m, make_field(p, t));
  auto start = std::chrono::steady_clock::now();
  const auto M = build_incidence(space, r);
  out.build_seconds = seconds_since(start);
  start = std::chrono::steady_clock::now();
  out.streaming = out.shape.cells() > kStreamingThreshold;
  out.rank = out.streaming ? rank_streaming(M, options) : rank_mod_p(M, options);
  out.rank_seconds = seconds_since(start);
  return out;
}

}  // namespace polar

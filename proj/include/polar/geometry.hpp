#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polar/field.hpp"

namespace polar {

/// Vector of element codes.
using Vec = std::vector<GaloisField::Code>;

/// V = GF(q)^{2m} with coordinates (x_1, ..., x_m, y_m, ..., y_1) and the alternating form
/// <u, v> = sum_i x_i(u) y_i(v) - y_i(u) x_i(v), so that <e_i, f_j> = delta_ij.
class SymplecticSpace {
 public:
  SymplecticSpace(std::uint32_t m, FieldPtr field);

  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t dim() const noexcept { return 2 * m_; }
  const FieldPtr& field() const noexcept { return field_; }
  const GaloisField& F() const noexcept { return *field_; }
  std::uint32_t q() const noexcept { return field_->q(); }

  /// Coordinate index of x_i, 1 <= i <= m.
  std::uint32_t x_index(std::uint32_t i) const noexcept { return i - 1; }
  /// Coordinate index of y_i, 1 <= i <= m.
  std::uint32_t y_index(std::uint32_t i) const noexcept { return 2 * m_ - i; }
  /// Index of the coordinate paired with k by the form.
  std::uint32_t partner(std::uint32_t k) const noexcept { return 2 * m_ - 1 - k; }

  GaloisField::Code form(std::span<const GaloisField::Code> u, std::span<const GaloisField::Code> v) const;
  FieldElement form_element(std::span<const GaloisField::Code> u, std::span<const GaloisField::Code> v) const {
    return {field_, form(u, v)};
  }

  /// Gram matrix G with G[k][l] = <b_k, b_l>.
  std::vector<Vec> gram() const;

  Vec basis_vector(std::uint32_t k) const;

 private:
  std::uint32_t m_;
  FieldPtr field_;
};

/// A subspace held as its reduced row echelon generator matrix. The representation is
/// canonical, so two subspaces are equal exactly when their matrices are equal.
class Subspace {
 public:
  Subspace() = default;

  /// Row-reduces arbitrary generators; dependent rows are dropped.
  static Subspace from_generators(const GaloisField& F, std::uint32_t ambient_dim, std::vector<Vec> generators);
  /// Trusts that `rows` is already in reduced row echelon form.
  static Subspace from_rref(std::uint32_t ambient_dim, std::vector<Vec> rows);

  std::uint32_t dim() const noexcept { return static_cast<std::uint32_t>(rows_.size()); }
  std::uint32_t ambient_dim() const noexcept { return ambient_; }
  const std::vector<Vec>& rows() const noexcept { return rows_; }
  std::vector<std::uint32_t> pivots() const;

  bool contains(const GaloisField& F, std::span<const GaloisField::Code> v) const;
  bool contains(const GaloisField& F, const Subspace& other) const;

  /// Normalized representatives of the projective points in the subspace, in the order
  /// of the coefficient tuples (first nonzero coefficient 1).
  std::vector<Vec> points(const GaloisField& F) const;

  std::string label() const;

  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  std::uint32_t ambient_ = 0;
  std::vector<Vec> rows_;
};

/// Normalizes v in place so the first nonzero coordinate is 1; returns false for v = 0.
bool normalize_projective(const GaloisField& F, Vec& v);

std::string vector_label(std::span<const GaloisField::Code> v);

/// All (q^{2m} - 1)/(q - 1) projective points, lexicographically sorted by coordinates.
std::vector<Vec> enumerate_points(const SymplecticSpace& space);

/// All totally isotropic r-subspaces, 1 <= r <= m, sorted by RREF entries.
std::vector<Subspace> enumerate_isotropic(const SymplecticSpace& space, std::uint32_t r);

/// Every r-subspace of V (no isotropy condition), sorted by RREF entries.
std::vector<Subspace> enumerate_subspaces(const SymplecticSpace& space, std::uint32_t r);

Subspace perp(const SymplecticSpace& space, const Subspace& W);

/// The perps of all totally isotropic (2m - r)-subspaces, m + 1 <= r <= 2m - 1, sorted.
std::vector<Subspace> enumerate_coisotropic(const SymplecticSpace& space, std::uint32_t r);

/// Isotropic flats for r <= m and coisotropic ones for m < r < 2m.
std::vector<Subspace> enumerate_flats(const SymplecticSpace& space, std::uint32_t r);

bool is_totally_isotropic(const SymplecticSpace& space, const Subspace& W);

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(std::uint32_t n, std::uint32_t k, std::uint64_t q);

/// |I_r| = [m choose r]_q * prod_{i=m-r+1}^{m} (q^i + 1).
std::uint64_t isotropic_count(std::uint32_t m, std::uint32_t r, std::uint64_t q);

/// Reduced row echelon form over F; returns the nonzero rows.
std::vector<Vec> rref(const GaloisField& F, std::vector<Vec> rows, std::uint32_t ncols);

/// Basis of {x : A x = 0} in RREF.
std::vector<Vec> null_space(const GaloisField& F, const std::vector<Vec>& A, std::uint32_t ncols);

}  // namespace polar

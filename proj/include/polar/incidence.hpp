#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "polar/geometry.hpp"

namespace polar {

/// 0/1 matrix over GF(modulus): rows are flats, columns are points.
struct SparseIncidenceMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t modulus = 0;
  /// Strictly increasing column indices of the 1 entries of each row.
  std::vector<std::vector<std::uint32_t>> row_data;
  /// Flat and point identifiers; not persisted by the matrix file format.
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t nnz() const;
  std::vector<std::uint32_t> column_sums() const;
  /// Throws FormatError (line 0) when an invariant is broken.
  void validate() const;

  /// Structural equality; labels are ignored.
  bool same_entries(const SparseIncidenceMatrix& other) const;
};

/// Rows ordered as the flats of `enumerate_flats`, columns as `enumerate_points`.
SparseIncidenceMatrix build_incidence(const SymplecticSpace& space, std::uint32_t r);

/// Incidence between the given flats and all points of the space.
SparseIncidenceMatrix build_incidence(const SymplecticSpace& space, const std::vector<Subspace>& flats);

SparseIncidenceMatrix transpose(const SparseIncidenceMatrix& M);

/// Text format:
///   polar-rank-incidence v1
///   <rows> <cols> <modulus>
///   <k> <c_1> ... <c_k>        (one line per row, 0-based sorted column indices)
void write_matrix(const SparseIncidenceMatrix& M, std::ostream& os);
void write_matrix(const SparseIncidenceMatrix& M, const std::filesystem::path& path);
SparseIncidenceMatrix read_matrix(std::istream& is);
SparseIncidenceMatrix read_matrix(const std::filesystem::path& path);

/// Matrix Market `coordinate integer general`, 1-based, with a `% modulus p` comment.
void write_matrix_market(const SparseIncidenceMatrix& M, std::ostream& os);
void write_matrix_market(const SparseIncidenceMatrix& M, const std::filesystem::path& path);
/// Reads coordinate Matrix Market (integer or pattern). Entries are reduced mod the
/// modulus, taken from a `% modulus p` comment unless `modulus` is nonzero.
SparseIncidenceMatrix read_matrix_market(std::istream& is, std::uint32_t modulus = 0);

/// Dispatches on the first line: native format or Matrix Market banner.
SparseIncidenceMatrix read_any_matrix(const std::filesystem::path& path, std::uint32_t modulus = 0);

/// FNV-1a 64-bit hash of the native serialization, as 16 hex digits.
std::string matrix_checksum(const SparseIncidenceMatrix& M);

}  // namespace polar

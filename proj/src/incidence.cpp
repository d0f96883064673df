#include "polar/incidence.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

namespace polar {

namespace {

constexpr const char* kMagic = "polar-rank-incidence v1";

std::uint64_t point_key(std::span<const GaloisField::Code> v, std::uint64_t q) {
  std::uint64_t key = 0;
  for (auto x : v) key = key * q + x;
  return key;
}

}  // namespace

std::size_t SparseIncidenceMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : row_data) n += r.size();
  return n;
}

std::vector<std::uint32_t> SparseIncidenceMatrix::column_sums() const {
  std::vector<std::uint32_t> sums(cols, 0);
  for (const auto& r : row_data) {
    for (auto c : r) ++sums[c];
  }
  return sums;
}

void SparseIncidenceMatrix::validate() const {
  if (!is_prime(modulus)) throw FormatError(0, "modulus is not prime");
  if (row_data.size() != rows) throw FormatError(0, "row count mismatch");
  for (const auto& r : row_data) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] >= cols) throw FormatError(0, "column index out of range");
      if (i > 0 && r[i] <= r[i - 1]) throw FormatError(0, "column indices not strictly increasing");
    }
  }
}

bool SparseIncidenceMatrix::same_entries(const SparseIncidenceMatrix& other) const {
  return rows == other.rows && cols == other.cols && modulus == other.modulus && row_data == other.row_data;
}

SparseIncidenceMatrix build_incidence(const SymplecticSpace& space, const std::vector<Subspace>& flats) {
  const auto& F = space.F();
  const auto points = enumerate_points(space);
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(points.size() * 2);
  for (std::uint32_t i = 0; i < points.size(); ++i) index.emplace(point_key(points[i], space.q()), i);

  SparseIncidenceMatrix M;
  M.rows = static_cast<std::uint32_t>(flats.size());
  M.cols = static_cast<std::uint32_t>(points.size());
  M.modulus = F.p();
  M.row_data.reserve(flats.size());
  for (const auto& flat : flats) {
    std::vector<std::uint32_t> row;
    for (const auto& pt : flat.points(F)) row.push_back(index.at(point_key(pt, space.q())));
    std::sort(row.begin(), row.end());
    M.row_data.push_back(std::move(row));
    M.row_labels.push_back(flat.label());
  }
  for (const auto& pt : points) M.col_labels.push_back(vector_label(pt));
  return M;
}

SparseIncidenceMatrix build_incidence(const SymplecticSpace& space, std::uint32_t r) {
  if (r < 1 || r > 2 * space.m() - 1) throw Error(ErrorKind::RangeError, "flat dimension must be in [1, 2m-1]");
  return build_incidence(space, enumerate_flats(space, r));
}

SparseIncidenceMatrix transpose(const SparseIncidenceMatrix& M) {
  SparseIncidenceMatrix T;
  T.rows = M.cols;
  T.cols = M.rows;
  T.modulus = M.modulus;
  T.row_data.assign(M.cols, {});
  for (std::uint32_t i = 0; i < M.rows; ++i) {
    for (auto c : M.row_data[i]) T.row_data[c].push_back(i);
  }
  T.row_labels = M.col_labels;
  T.col_labels = M.row_labels;
  return T;
}

void write_matrix(const SparseIncidenceMatrix& M, std::ostream& os) {
  os << kMagic << '\n' << M.rows << ' ' << M.cols << ' ' << M.modulus << '\n';
  for (const auto& r : M.row_data) {
    os << r.size();
    for (auto c : r) os << ' ' << c;
    os << '\n';
  }
}

void write_matrix(const SparseIncidenceMatrix& M, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  write_matrix(M, os);
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

namespace {

template <class T>
T parse_number(std::istringstream& ls, std::size_t line, const char* what) {
  long long v;
  if (!(ls >> v)) throw FormatError(line, std::string("expected ") + what);
  if (v < 0) throw FormatError(line, std::string("negative ") + what);
  return static_cast<T>(v);
}

}  // namespace

SparseIncidenceMatrix read_matrix(std::istream& is) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(is, line)) throw FormatError(lineno, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMagic) throw FormatError(lineno, "bad magic line");

  ++lineno;
  if (!std::getline(is, line)) throw FormatError(lineno, "missing header");
  SparseIncidenceMatrix M;
  {
    std::istringstream ls(line);
    M.rows = parse_number<std::uint32_t>(ls, lineno, "row count");
    M.cols = parse_number<std::uint32_t>(ls, lineno, "column count");
    M.modulus = parse_number<std::uint32_t>(ls, lineno, "modulus");
    std::string extra;
    if (ls >> extra) throw FormatError(lineno, "trailing data in header");
    if (!is_prime(M.modulus)) throw FormatError(lineno, "modulus is not prime");
  }
  M.row_data.reserve(M.rows);
  while (std::getline(is, line)) {
    ++lineno;
    if (M.row_data.size() == M.rows) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw FormatError(lineno, "more rows than the header declares");
    }
    std::istringstream ls(line);
    const auto k = parse_number<std::uint32_t>(ls, lineno, "entry count");
    std::vector<std::uint32_t> row(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      row[i] = parse_number<std::uint32_t>(ls, lineno, "column index");
      if (row[i] >= M.cols) throw FormatError(lineno, "column index out of range");
      if (i > 0 && row[i] <= row[i - 1]) throw FormatError(lineno, "column indices not strictly increasing");
    }
    std::string extra;
    if (ls >> extra) throw FormatError(lineno, "more entries than the row count declares");
    M.row_data.push_back(std::move(row));
  }
  if (M.row_data.size() != M.rows) {
    throw FormatError(lineno, "header declares " + std::to_string(M.rows) + " rows but body has " +
                                  std::to_string(M.row_data.size()));
  }
  return M;
}

SparseIncidenceMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return read_matrix(is);
}

void write_matrix_market(const SparseIncidenceMatrix& M, std::ostream& os) {
  os << "%%MatrixMarket matrix coordinate integer general\n";
  os << "% modulus " << M.modulus << '\n';
  os << M.rows << ' ' << M.cols << ' ' << M.nnz() << '\n';
  for (std::uint32_t i = 0; i < M.rows; ++i) {
    for (auto c : M.row_data[i]) os << i + 1 << ' ' << c + 1 << " 1\n";
  }
}

void write_matrix_market(const SparseIncidenceMatrix& M, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  write_matrix_market(M, os);
}

SparseIncidenceMatrix read_matrix_market(std::istream& is, std::uint32_t modulus) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(is, line)) throw FormatError(lineno, "empty input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate") {
    throw FormatError(lineno, "expected a coordinate Matrix Market banner");
  }
  field = lower(field);
  if (field != "integer" && field != "pattern") throw FormatError(lineno, "only integer or pattern entries");
  if (lower(symmetry) != "general") throw FormatError(lineno, "only general symmetry");

  std::uint32_t comment_modulus = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] != '%') break;
    std::istringstream cs(line.substr(1));
    std::string key;
    std::uint32_t value;
    if (cs >> key >> value && key == "modulus") comment_modulus = value;
  }
  SparseIncidenceMatrix M;
  M.modulus = modulus ? modulus : comment_modulus;
  if (!is_prime(M.modulus)) throw FormatError(lineno, "no prime modulus given");
  std::size_t nnz;
  {
    std::istringstream ls(line);
    M.rows = parse_number<std::uint32_t>(ls, lineno, "row count");
    M.cols = parse_number<std::uint32_t>(ls, lineno, "column count");
    nnz = parse_number<std::size_t>(ls, lineno, "entry count");
  }
  M.row_data.assign(M.rows, {});
  std::size_t seen = 0;
  while (seen < nnz && std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    const auto i = parse_number<std::uint32_t>(ls, lineno, "row index");
    const auto j = parse_number<std::uint32_t>(ls, lineno, "column index");
    long long value = 1;
    if (field == "integer" && !(ls >> value)) throw FormatError(lineno, "missing value");
    if (i < 1 || i > M.rows || j < 1 || j > M.cols) throw FormatError(lineno, "index out of range");
    const long long residue = ((value % M.modulus) + M.modulus) % M.modulus;
    ++seen;
    if (residue == 0) continue;
    if (residue != 1) throw FormatError(lineno, "entry is not 0 or 1 modulo p");
    M.row_data[i - 1].push_back(j - 1);
  }
  if (seen != nnz) throw FormatError(lineno, "fewer entries than declared");
  for (auto& r : M.row_data) {
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) throw FormatError(lineno, "duplicate entry");
  }
  return M;
}

SparseIncidenceMatrix read_any_matrix(const std::filesystem::path& path, std::uint32_t modulus) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  const int first = is.peek();
  if (first == '%') return read_matrix_market(is, modulus);
  return read_matrix(is);
}

std::string matrix_checksum(const SparseIncidenceMatrix& M) {
  std::ostringstream os;
  write_matrix(M, os);
  const std::string bytes = os.str();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

}  // namespace polar

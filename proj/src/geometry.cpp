#include "polar/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polar {

SymplecticSpace::SymplecticSpace(std::uint32_t m, FieldPtr field) : m_(m), field_(std::move(field)) {
  if (m_ < 2) throw Error(ErrorKind::RangeError, "symplectic space needs m >= 2");
  if (field_->p() == 2) throw Error(ErrorKind::UnsupportedCharacteristic, "geometry requires odd characteristic");
}

GaloisField::Code SymplecticSpace::form(std::span<const GaloisField::Code> u,
                                        std::span<const GaloisField::Code> v) const {
  if (u.size() != dim() || v.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vectors must have length 2m");
  }
  const auto& F = *field_;
  GaloisField::Code s = 0;
  for (std::uint32_t k = 0; k < m_; ++k) {
    const std::uint32_t l = partner(k);
    s = F.add(s, F.sub(F.mul(u[k], v[l]), F.mul(u[l], v[k])));
  }
  return s;
}

std::vector<Vec> SymplecticSpace::gram() const {
  std::vector<Vec> g(dim(), Vec(dim(), 0));
  for (std::uint32_t k = 0; k < m_; ++k) {
    g[k][partner(k)] = 1;
    g[partner(k)][k] = field_->neg(1);
  }
  return g;
}

Vec SymplecticSpace::basis_vector(std::uint32_t k) const {
  Vec v(dim(), 0);
  v.at(k) = 1;
  return v;
}

std::vector<Vec> rref(const GaloisField& F, std::vector<Vec> rows, std::uint32_t ncols) {
  std::size_t rank = 0;
  for (std::uint32_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const auto inv = F.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const auto f = rows[i][c];
      for (std::uint32_t k = c; k < ncols; ++k) rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[rank][k]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

std::vector<Vec> null_space(const GaloisField& F, const std::vector<Vec>& A, std::uint32_t ncols) {
  const auto R = rref(F, A, ncols);
  std::vector<std::uint32_t> pivot_of_row;
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& row : R) {
    std::uint32_t c = 0;
    while (row[c] == 0) ++c;
    pivot_of_row.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<Vec> basis;
  for (std::uint32_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(ncols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < R.size(); ++i) v[pivot_of_row[i]] = F.neg(R[i][free]);
    basis.push_back(std::move(v));
  }
  return rref(F, std::move(basis), ncols);
}

Subspace Subspace::from_generators(const GaloisField& F, std::uint32_t ambient_dim, std::vector<Vec> generators) {
  for (const auto& g : generators) {
    if (g.size() != ambient_dim) throw Error(ErrorKind::DimensionMismatch, "generator length mismatch");
  }
  return from_rref(ambient_dim, rref(F, std::move(generators), ambient_dim));
}

Subspace Subspace::from_rref(std::uint32_t ambient_dim, std::vector<Vec> rows) {
  Subspace s;
  s.ambient_ = ambient_dim;
  s.rows_ = std::move(rows);
  return s;
}

std::vector<std::uint32_t> Subspace::pivots() const {
  std::vector<std::uint32_t> out;
  for (const auto& row : rows_) {
    std::uint32_t c = 0;
    while (row[c] == 0) ++c;
    out.push_back(c);
  }
  return out;
}

bool Subspace::contains(const GaloisField& F, std::span<const GaloisField::Code> v) const {
  // Reduce v by the RREF rows; v is in the span iff nothing survives.
  Vec w(v.begin(), v.end());
  const auto piv = pivots();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto f = w[piv[i]];
    if (f == 0) continue;
    for (std::uint32_t k = 0; k < ambient_; ++k) w[k] = F.sub(w[k], F.mul(f, rows_[i][k]));
  }
  return std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; });
}

bool Subspace::contains(const GaloisField& F, const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec& r) { return contains(F, r); });
}

std::vector<Vec> Subspace::points(const GaloisField& F) const {
  // Combinations sum_i c_i R_i whose first nonzero coefficient is 1 are already
  // normalized, because the RREF pivots increase and R_i vanishes before its pivot.
  std::vector<Vec> out;
  const std::uint32_t r = dim();
  const std::uint32_t q = F.q();
  std::vector<GaloisField::Code> coeff(r, 0);
  for (std::uint32_t lead = 0; lead < r; ++lead) {
    std::fill(coeff.begin(), coeff.end(), 0);
    coeff[lead] = 1;
    const std::uint32_t free = r - lead - 1;
    const std::uint64_t count = checked_pow(q, free);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      // most significant free coefficient first keeps the order lexicographic
      for (std::uint32_t i = r; i-- > lead + 1;) {
        coeff[i] = static_cast<GaloisField::Code>(c % q);
        c /= q;
      }
      Vec v(ambient_, 0);
      for (std::uint32_t i = lead; i < r; ++i) {
        if (coeff[i] == 0) continue;
        for (std::uint32_t k = 0; k < ambient_; ++k) v[k] = F.add(v[k], F.mul(coeff[i], rows_[i][k]));
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::string vector_label(std::span<const GaloisField::Code> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ')';
  return os.str();
}

std::string Subspace::label() const {
  std::string s;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ';';
    s += vector_label(rows_[i]);
  }
  return s;
}

bool normalize_projective(const GaloisField& F, Vec& v) {
  auto it = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
  if (it == v.end()) return false;
  const auto inv = F.inv(*it);
  for (; it != v.end(); ++it) *it = F.mul(*it, inv);
  return true;
}

std::vector<Vec> enumerate_points(const SymplecticSpace& space) {
  const std::uint32_t n = space.dim();
  const std::uint32_t q = space.q();
  std::vector<Vec> out;
  for (std::uint32_t lead = 0; lead < n; ++lead) {
    const std::uint64_t count = checked_pow(q, n - lead - 1);
    for (std::uint64_t code = 0; code < count; ++code) {
      Vec v(n, 0);
      v[lead] = 1;
      std::uint64_t c = code;
      for (std::uint32_t k = n; k-- > lead + 1;) {
        v[k] = static_cast<GaloisField::Code>(c % q);
        c /= q;
      }
      out.push_back(std::move(v));
    }
  }
  // Leading position descending puts (0,...,0,1) first in lexicographic order.
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Depth-first construction of RREF matrices row by row. Each new row has its pivot to the
// right of the previous one, zeros in earlier pivot columns, and the earlier rows must
// vanish in the new pivot column. With `isotropic` set, a candidate row must also be
// orthogonal to every row chosen so far; this prunes the search to totally isotropic flats.
void extend_rref(const SymplecticSpace& space, std::uint32_t r, bool isotropic, std::vector<Vec>& rows,
                 std::vector<std::uint32_t>& pivots, std::vector<Subspace>& out) {
  const std::uint32_t n = space.dim();
  const std::uint32_t q = space.q();
  if (rows.size() == r) {
    out.push_back(Subspace::from_rref(n, rows));
    return;
  }
  const std::uint32_t remaining = r - static_cast<std::uint32_t>(rows.size());
  const std::uint32_t start = pivots.empty() ? 0 : pivots.back() + 1;
  for (std::uint32_t c = start; c + remaining <= n; ++c) {
    if (std::any_of(rows.begin(), rows.end(), [c](const Vec& row) { return row[c] != 0; })) continue;
    std::vector<std::uint32_t> free;
    for (std::uint32_t k = c + 1; k < n; ++k) {
      if (std::find(pivots.begin(), pivots.end(), k) == pivots.end()) free.push_back(k);
    }
    const std::uint64_t count = checked_pow(q, static_cast<std::uint32_t>(free.size()));
    for (std::uint64_t code = 0; code < count; ++code) {
      Vec v(n, 0);
      v[c] = 1;
      std::uint64_t x = code;
      for (std::size_t i = free.size(); i-- > 0;) {
        v[free[i]] = static_cast<GaloisField::Code>(x % q);
        x /= q;
      }
      if (isotropic &&
          std::any_of(rows.begin(), rows.end(), [&](const Vec& row) { return space.form(row, v) != 0; })) {
        continue;
      }
      rows.push_back(std::move(v));
      pivots.push_back(c);
      extend_rref(space, r, isotropic, rows, pivots, out);
      rows.pop_back();
      pivots.pop_back();
    }
  }
}

std::vector<Subspace> enumerate_rref(const SymplecticSpace& space, std::uint32_t r, bool isotropic) {
  std::vector<Subspace> out;
  std::vector<Vec> rows;
  std::vector<std::uint32_t> pivots;
  extend_rref(space, r, isotropic, rows, pivots, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Subspace> enumerate_isotropic(const SymplecticSpace& space, std::uint32_t r) {
  if (r < 1 || r > space.m()) throw Error(ErrorKind::RangeError, "isotropic dimension must be in [1, m]");
  return enumerate_rref(space, r, true);
}

std::vector<Subspace> enumerate_subspaces(const SymplecticSpace& space, std::uint32_t r) {
  if (r < 1 || r > space.dim()) throw Error(ErrorKind::RangeError, "subspace dimension must be in [1, 2m]");
  return enumerate_rref(space, r, false);
}

Subspace perp(const SymplecticSpace& space, const Subspace& W) {
  // v is in W^perp iff (row G) . v = 0 for each generator row of W.
  const auto& F = space.F();
  const auto G = space.gram();
  std::vector<Vec> A;
  for (const auto& w : W.rows()) {
    Vec a(space.dim(), 0);
    for (std::uint32_t l = 0; l < space.dim(); ++l) {
      GaloisField::Code s = 0;
      for (std::uint32_t k = 0; k < space.dim(); ++k) s = F.add(s, F.mul(w[k], G[k][l]));
      a[l] = s;
    }
    A.push_back(std::move(a));
  }
  return Subspace::from_rref(space.dim(), null_space(F, A, space.dim()));
}

std::vector<Subspace> enumerate_coisotropic(const SymplecticSpace& space, std::uint32_t r) {
  if (r < space.m() + 1 || r > 2 * space.m() - 1) {
    throw Error(ErrorKind::RangeError, "coisotropic dimension must be in [m+1, 2m-1]");
  }
  std::vector<Subspace> out;
  for (const auto& W : enumerate_isotropic(space, 2 * space.m() - r)) out.push_back(perp(space, W));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> enumerate_flats(const SymplecticSpace& space, std::uint32_t r) {
  if (r >= 1 && r <= space.m()) return enumerate_isotropic(space, r);
  return enumerate_coisotropic(space, r);
}

bool is_totally_isotropic(const SymplecticSpace& space, const Subspace& W) {
  const auto& rows = W.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (space.form(rows[i], rows[j]) != 0) return false;
    }
  }
  return true;
}

std::uint64_t gaussian_binomial(std::uint32_t n, std::uint32_t k, std::uint64_t q) {
  if (k > n) return 0;
  // prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{i+1} - 1), exact at every step
  std::uint64_t num = 1, den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    num *= checked_pow(q, n - i) - 1;
    den *= checked_pow(q, i + 1) - 1;
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  return num / den;
}

std::uint64_t isotropic_count(std::uint32_t m, std::uint32_t r, std::uint64_t q) {
  std::uint64_t c = gaussian_binomial(m, r, q);
  for (std::uint32_t i = m - r + 1; i <= m; ++i) c *= checked_pow(q, i) + 1;
  return c;
}

}  // namespace polar

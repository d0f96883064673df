#include "polar/function_space.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "polar/dimensions.hpp"
#include "polar/rank.hpp"

namespace polar {

using Code = GaloisField::Code;

// ---------------------------------------------------------------------------
// FunctionSpace

FunctionSpace::FunctionSpace(std::uint32_t m, FieldPtr field)
    : m_(m), field_(std::move(field)), geometry_(m, field_) {
  size_ = checked_pow(q(), 2 * m);
  place_.resize(2 * m);
  std::uint64_t pl = 1;
  for (std::uint32_t k = 0; k < 2 * m; ++k) {
    place_[k] = pl;
    pl *= q();
  }
}

std::uint64_t FunctionSpace::encode(std::span<const std::uint64_t> exponents) const {
  if (exponents.size() != nvars()) throw Error(ErrorKind::DimensionMismatch, "monomial needs 2m exponents");
  std::uint64_t key = 0;
  for (std::uint32_t k = 0; k < nvars(); ++k) {
    if (exponents[k] > q() - 1) throw Error(ErrorKind::RangeError, "exponent exceeds q-1");
    key += exponents[k] * place_[k];
  }
  return key;
}

std::vector<std::uint64_t> FunctionSpace::decode(std::uint64_t key) const {
  std::vector<std::uint64_t> e(nvars());
  for (std::uint32_t k = 0; k < nvars(); ++k) {
    e[k] = key % q();
    key /= q();
  }
  return e;
}

std::uint64_t FunctionSpace::reduce_exponent(std::uint64_t e) const noexcept {
  if (e < q()) return e;
  return (e - 1) % (q() - 1) + 1;
}

bool FunctionSpace::same_context(const FunctionSpace& other) const {
  return this == &other || (m_ == other.m_ && field_->spec() == other.field_->spec());
}

SpacePtr make_function_space(std::uint32_t m, std::uint32_t p, std::uint32_t t) {
  return std::make_shared<const FunctionSpace>(m, make_field(p, t));
}

// ---------------------------------------------------------------------------
// FunctionOnV

namespace {

std::string monomial_label(std::span<const std::uint64_t> exps, std::uint32_t m) {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t k = 0; k < exps.size(); ++k) {
    if (exps[k] == 0) continue;
    if (!first) os << '*';
    first = false;
    if (k < m) {
      os << 'x' << k + 1;
    } else {
      os << 'y' << 2 * m - k;
    }
    if (exps[k] != 1) os << '^' << exps[k];
  }
  if (first) os << '1';
  return os.str();
}

}  // namespace

FunctionOnV FunctionOnV::constant(SpacePtr space, Code c) {
  FunctionOnV f(std::move(space));
  f.add_term(0, c);
  return f;
}

FunctionOnV FunctionOnV::monomial(SpacePtr space, std::span<const std::uint64_t> exponents, Code c) {
  const auto key = space->encode(exponents);
  FunctionOnV f(std::move(space));
  f.add_term(key, c);
  return f;
}

FunctionOnV FunctionOnV::from_key(SpacePtr space, std::uint64_t key, Code c) {
  if (key >= space->size()) throw Error(ErrorKind::RangeError, "monomial key out of range");
  FunctionOnV f(std::move(space));
  f.add_term(key, c);
  return f;
}

FunctionOnV FunctionOnV::variable(SpacePtr space, std::uint32_t var) {
  if (var >= space->nvars()) throw Error(ErrorKind::RangeError, "variable index out of range");
  const auto key = space->with_exponent(0, var, 1);
  return from_key(std::move(space), key);
}

Code FunctionOnV::coefficient(std::uint64_t key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

void FunctionOnV::add_term(std::uint64_t key, Code c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) return;
  it->second = space_->F().add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

void FunctionOnV::check_context(const FunctionOnV& o) const {
  if (!space_->same_context(*o.space_)) throw Error(ErrorKind::ContextMismatch, "functions live on different spaces");
}

FunctionOnV FunctionOnV::operator+(const FunctionOnV& o) const {
  check_context(o);
  FunctionOnV r = *this;
  for (auto [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

FunctionOnV FunctionOnV::operator-(const FunctionOnV& o) const {
  check_context(o);
  FunctionOnV r = *this;
  for (auto [k, c] : o.terms_) r.add_term(k, space_->F().neg(c));
  return r;
}

FunctionOnV FunctionOnV::scaled(Code c) const {
  FunctionOnV r(space_);
  if (c == 0) return r;
  for (auto [k, v] : terms_) r.terms_.emplace(k, space_->F().mul(v, c));
  return r;
}

bool FunctionOnV::operator==(const FunctionOnV& o) const {
  check_context(o);
  return terms_ == o.terms_;
}

bool FunctionOnV::in_prime_field() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return space_->F().in_prime_field(kv.second); });
}

std::string FunctionOnV::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    const auto exps = space_->decode(k);
    if (c != 1) os << '(' << FieldElement(space_->field(), c) << ")*";
    os << monomial_label(exps, space_->m());
  }
  return os.str();
}

FunctionOnV reduce_and_multiply(const FunctionOnV& f, const FunctionOnV& g) {
  if (!f.space()->same_context(*g.space())) throw Error(ErrorKind::ContextMismatch, "functions live on different spaces");
  const auto& S = *f.space();
  const auto& F = S.F();
  FunctionOnV r(f.space());
  std::vector<std::vector<std::uint64_t>> gexp;
  gexp.reserve(g.size());
  for (auto& [k, c] : g.terms()) gexp.push_back(S.decode(k));
  for (auto& [kf, cf] : f.terms()) {
    const auto ef = S.decode(kf);
    std::size_t idx = 0;
    for (auto& [kg, cg] : g.terms()) {
      const auto& eg = gexp[idx++];
      std::uint64_t key = 0, place = 1;
      for (std::uint32_t v = 0; v < S.nvars(); ++v) {
        key += S.reduce_exponent(ef[v] + eg[v]) * place;
        place *= S.q();
      }
      r.add_term(key, F.mul(cf, cg));
    }
  }
  return r;
}

FunctionOnV power(const FunctionOnV& f, std::uint64_t n) {
  FunctionOnV result = FunctionOnV::constant(f.space(), 1);
  FunctionOnV base = f;
  while (n) {
    if (n & 1) result = reduce_and_multiply(result, base);
    n >>= 1;
    if (n) base = reduce_and_multiply(base, base);
  }
  return result;
}

Code evaluate(const FunctionOnV& f, std::span<const Code> v) {
  const auto& S = *f.space();
  if (v.size() != S.nvars()) throw Error(ErrorKind::DimensionMismatch, "vector length must be 2m");
  const auto& F = S.F();
  Code sum = 0;
  for (auto& [k, c] : f.terms()) {
    Code term = c;
    for (std::uint32_t i = 0; i < S.nvars() && term != 0; ++i) term = F.mul(term, F.pow(v[i], S.exponent(k, i)));
    sum = F.add(sum, term);
  }
  return sum;
}

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 26;

// Applies the q x q matrix `mat` (row = output index) along every axis of a dense tensor.
void transform_axes(const FunctionSpace& S, std::vector<Code>& data, const std::vector<std::vector<Code>>& mat) {
  const auto& F = S.F();
  const std::uint64_t q = S.q();
  std::uint64_t stride = 1;
  std::vector<Code> line(q), out(q);
  for (std::uint32_t axis = 0; axis < S.nvars(); ++axis) {
    const std::uint64_t block = stride * q;
    for (std::uint64_t base = 0; base < data.size(); base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (std::uint64_t i = 0; i < q; ++i) line[i] = data[base + off + i * stride];
        for (std::uint64_t r = 0; r < q; ++r) {
          Code acc = 0;
          for (std::uint64_t i = 0; i < q; ++i) acc = F.add(acc, F.mul(mat[r][i], line[i]));
          out[r] = acc;
        }
        for (std::uint64_t r = 0; r < q; ++r) data[base + off + r * stride] = out[r];
      }
    }
    stride = block;
  }
}

void check_table_size(const FunctionSpace& S) {
  if (S.size() > kTableLimit) throw Error(ErrorKind::ResourceCapExceeded, "function table too large");
}

}  // namespace

std::vector<Code> evaluate_all(const FunctionOnV& f) {
  const auto& S = *f.space();
  check_table_size(S);
  const auto& F = S.F();
  std::vector<Code> data(S.size(), 0);
  for (auto& [k, c] : f.terms()) data[k] = c;
  std::vector<std::vector<Code>> vand(S.q(), std::vector<Code>(S.q()));
  for (Code v = 0; v < S.q(); ++v) {
    for (Code e = 0; e < S.q(); ++e) vand[v][e] = F.pow(v, e);
  }
  transform_axes(S, data, vand);
  return data;
}

FunctionOnV interpolate(const SpacePtr& space, const std::vector<Code>& values) {
  const auto& S = *space;
  check_table_size(S);
  if (values.size() != S.size()) throw Error(ErrorKind::DimensionMismatch, "need one value per vector of V");
  const auto& F = S.F();
  const std::uint32_t q = S.q();
  // delta_v(x) = 1 - (x - v)^{q-1}; inv[e][v] is its x^e coefficient.
  std::vector<std::vector<Code>> inv(q, std::vector<Code>(q));
  for (Code v = 0; v < q; ++v) {
    const Code negv = F.neg(v);
    for (Code e = 0; e < q; ++e) {
      const Code binom = F.from_int(binomial_mod_p(q - 1, e, S.p()));
      Code c = F.neg(F.mul(binom, F.pow(negv, q - 1 - e)));
      if (e == 0) c = F.add(c, 1);
      inv[e][v] = c;
    }
  }
  std::vector<Code> data = values;
  transform_axes(S, data, inv);
  FunctionOnV f(space);
  for (std::uint64_t k = 0; k < data.size(); ++k) f.add_term(k, data[k]);
  return f;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(const SpacePtr& space, std::vector<Code> entries) : dim_(space->nvars()) {
  const std::uint32_t n = dim_;
  if (entries.size() != static_cast<std::size_t>(n) * n) throw Error(ErrorKind::DimensionMismatch, "matrix must be 2m x 2m");
  const auto& F = space->F();
  const auto G = space->geometry().gram();
  // g^T G g == G
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      Code acc = 0;
      for (std::uint32_t k = 0; k < n; ++k) {
        if (entries[k * n + i] == 0) continue;
        const Code l = space->geometry().partner(k);
        // G has a single nonzero per row, at the partner column.
        acc = F.add(acc, F.mul(entries[k * n + i], F.mul(G[k][l], entries[l * n + j])));
      }
      if (acc != G[i][j]) throw Error(ErrorKind::NotSymplectic, "matrix does not preserve the symplectic form");
    }
  }
  entries_ = std::move(entries);
}

GroupElement GroupElement::identity(const SpacePtr& space) {
  const std::uint32_t n = space->nvars();
  std::vector<Code> e(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return GroupElement(n, std::move(e));
}

GroupElement GroupElement::transvection(const SpacePtr& space, std::span<const Code> v, Code a) {
  const std::uint32_t n = space->nvars();
  if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length must be 2m");
  const auto& F = space->F();
  const auto G = space->geometry().gram();
  // (T u)_r = u_r + a v_r <u, v>, and <u, v> = sum_c u_c (G v)_c.
  std::vector<Code> gv(n, 0);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t l = 0; l < n; ++l) gv[c] = F.add(gv[c], F.mul(G[c][l], v[l]));
  }
  std::vector<Code> e(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < n; ++c) {
      e[r * n + c] = F.add(r == c ? 1 : 0, F.mul(a, F.mul(v[r], gv[c])));
    }
  }
  return GroupElement(space, std::move(e));
}

GroupElement GroupElement::g_mu(const SpacePtr& space, Code mu) {
  const std::uint32_t n = space->nvars();
  auto e = identity(space).entries_;
  // Substitution z_i -> sum_k g[k][i] z_k sends x_1 to x_1 + mu y_1.
  e[space->geometry().y_index(1) * n + space->geometry().x_index(1)] = mu;
  return GroupElement(space, std::move(e));
}

GroupElement GroupElement::h_mu(const SpacePtr& space, Code mu) {
  const std::uint32_t n = space->nvars();
  auto e = identity(space).entries_;
  e[space->geometry().x_index(1) * n + space->geometry().y_index(1)] = mu;
  return GroupElement(space, std::move(e));
}

bool GroupElement::acts_on_plane() const {
  const std::uint32_t x = 0, y = dim_ - 1;
  for (std::uint32_t i = 0; i < dim_; ++i) {
    for (std::uint32_t j = 0; j < dim_; ++j) {
      const bool plane = (i == x || i == y) && (j == x || j == y);
      if (plane) continue;
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

GroupElement GroupElement::multiply(const GaloisField& F, const GroupElement& o) const {
  if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "group elements of different size");
  std::vector<Code> e(static_cast<std::size_t>(dim_) * dim_, 0);
  for (std::uint32_t i = 0; i < dim_; ++i) {
    for (std::uint32_t k = 0; k < dim_; ++k) {
      const Code a = at(i, k);
      if (a == 0) continue;
      for (std::uint32_t j = 0; j < dim_; ++j) e[i * dim_ + j] = F.add(e[i * dim_ + j], F.mul(a, o.at(k, j)));
    }
  }
  return GroupElement(dim_, std::move(e));
}

FunctionOnV act(const GroupElement& g, const FunctionOnV& f) {
  const auto& space = f.space();
  const auto& S = *space;
  if (g.dim() != S.nvars()) throw Error(ErrorKind::DimensionMismatch, "group element does not match the space");
  const std::uint32_t n = S.nvars();
  // Image of each variable and its powers, built on demand.
  std::vector<FunctionOnV> image;
  std::vector<bool> fixed(n);
  image.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    FunctionOnV li(space);
    for (std::uint32_t k = 0; k < n; ++k) li.add_term(S.with_exponent(0, k, 1), g.at(k, i));
    fixed[i] = li.size() == 1 && li.coefficient(S.with_exponent(0, i, 1)) == 1;
    image.push_back(std::move(li));
  }
  std::vector<std::vector<FunctionOnV>> powers(n);
  auto power_of = [&](std::uint32_t i, std::uint64_t e) -> const FunctionOnV& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(FunctionOnV::constant(space, 1));
    while (pw.size() <= e) pw.push_back(reduce_and_multiply(pw.back(), image[i]));
    return pw[e];
  };

  FunctionOnV result(space);
  for (auto& [key, c] : f.terms()) {
    std::uint64_t passive = 0;
    FunctionOnV term = FunctionOnV::constant(space, c);
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint64_t e = S.exponent(key, i);
      if (e == 0) continue;
      if (fixed[i]) {
        passive = S.with_exponent(passive, i, e);
      } else {
        term = reduce_and_multiply(term, power_of(i, e));
      }
    }
    if (passive != 0) term = reduce_and_multiply(term, FunctionOnV::from_key(space, passive));
    result = result + term;
  }
  return result;
}

std::vector<GroupElement> standard_generators(const SpacePtr& space) {
  const std::uint32_t n = space->nvars();
  const auto& F = space->F();
  std::vector<Code> scalars{1};
  if (F.primitive_element() != 1) scalars.push_back(F.primitive_element());
  std::vector<GroupElement> out;
  std::vector<Code> v(n);
  auto emit = [&]() {
    for (Code a : scalars) out.push_back(GroupElement::transvection(space, v, a));
  };
  for (std::uint32_t k = 0; k < n; ++k) {
    std::fill(v.begin(), v.end(), 0);
    v[k] = 1;
    emit();
    for (std::uint32_t l = k + 1; l < n; ++l) {
      v[l] = 1;
      emit();
      v[l] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// GroupRingElement

GroupRingElement GroupRingElement::scalar(const SpacePtr& space, Code c) {
  GroupRingElement r(space);
  r.add_term(GroupElement::identity(space), c);
  return r;
}

GroupRingElement GroupRingElement::single(const SpacePtr& space, const GroupElement& g, Code c) {
  GroupRingElement r(space);
  r.add_term(g, c);
  return r;
}

void GroupRingElement::add_term(const GroupElement& g, Code c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (inserted) return;
  it->second = space_->F().add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  for (auto& [g, c] : o.terms_) r.add_term(g, c);
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  for (auto& [g, c] : o.terms_) r.add_term(g, space_->F().neg(c));
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  if (!space_->same_context(*o.space_)) throw Error(ErrorKind::ContextMismatch, "group ring elements of different spaces");
  const auto& F = space_->F();
  GroupRingElement r(space_);
  for (auto& [g, a] : terms_) {
    for (auto& [h, b] : o.terms_) r.add_term(g.multiply(F, h), F.mul(a, b));
  }
  return r;
}

GroupRingElement GroupRingElement::scaled(Code c) const {
  GroupRingElement r(space_);
  for (auto& [g, a] : terms_) r.add_term(g, space_->F().mul(a, c));
  return r;
}

FunctionOnV GroupRingElement::apply(const FunctionOnV& f) const {
  FunctionOnV result(f.space());
  for (auto& [g, c] : terms_) result = result + act(g, f).scaled(c);
  return result;
}

// ---------------------------------------------------------------------------
// PlaneOperator

PlaneOperator::PlaneOperator(const GroupRingElement& element) : space_(element.space()) {
  const auto& S = *space_;
  const auto& F = S.F();
  const std::uint32_t q = S.q();
  const std::uint32_t x = 0, y = S.nvars() - 1;
  const std::size_t cells = static_cast<std::size_t>(q) * q;
  std::vector<std::vector<Code>> dense(cells, std::vector<Code>(cells, 0));

  using Poly2 = std::vector<std::pair<std::uint32_t, Code>>;  // (a q + b, coefficient)
  auto fold = [&](std::uint64_t e) { return static_cast<std::uint32_t>(S.reduce_exponent(e)); };
  auto multiply2 = [&](const Poly2& u, const Poly2& v) {
    Poly2 out;
    for (auto [ku, cu] : u) {
      for (auto [kv, cv] : v) {
        const std::uint32_t a = fold(ku / q + kv / q), b = fold(ku % q + kv % q);
        out.emplace_back(a * q + b, F.mul(cu, cv));
      }
    }
    std::sort(out.begin(), out.end());
    Poly2 merged;
    for (auto [k, c] : out) {
      if (!merged.empty() && merged.back().first == k) {
        merged.back().second = F.add(merged.back().second, c);
      } else {
        merged.emplace_back(k, c);
      }
    }
    std::erase_if(merged, [](const auto& kc) { return kc.second == 0; });
    return merged;
  };

  for (auto& [g, coeff] : element.terms()) {
    if (!g.acts_on_plane()) throw Error(ErrorKind::RangeError, "group element moves coordinates outside the x1,y1 plane");
    // Images of x_1 and y_1 under substitution.
    Poly2 lx{{1 * q + 0, g.at(x, x)}, {0 * q + 1, g.at(y, x)}};
    Poly2 ly{{1 * q + 0, g.at(x, y)}, {0 * q + 1, g.at(y, y)}};
    std::erase_if(lx, [](const auto& kc) { return kc.second == 0; });
    std::erase_if(ly, [](const auto& kc) { return kc.second == 0; });
    std::vector<Poly2> px{{{0, 1}}}, py{{{0, 1}}};
    for (std::uint32_t e = 1; e < q; ++e) {
      px.push_back(multiply2(px.back(), lx));
      py.push_back(multiply2(py.back(), ly));
    }
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        auto& col = dense[a * q + b];
        for (auto [k, c] : multiply2(px[a], py[b])) col[k] = F.add(col[k], F.mul(coeff, c));
      }
    }
  }
  columns_.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::uint32_t k = 0; k < cells; ++k) {
      if (dense[c][k] != 0) columns_[c].emplace_back(k, dense[c][k]);
    }
  }
}

FunctionOnV PlaneOperator::apply_monomial(std::uint64_t key) const {
  const auto& S = *space_;
  const std::uint32_t q = S.q();
  const std::uint32_t y = S.nvars() - 1;
  const auto a = S.exponent(key, 0), b = S.exponent(key, y);
  const std::uint64_t passive = S.with_exponent(S.with_exponent(key, 0, 0), y, 0);
  FunctionOnV out(space_);
  for (auto [k, c] : columns_[a * q + b]) {
    out.add_term(S.with_exponent(S.with_exponent(passive, 0, k / q), y, k % q), c);
  }
  return out;
}

FunctionOnV PlaneOperator::apply(const FunctionOnV& f) const {
  if (!space_->same_context(*f.space())) throw Error(ErrorKind::ContextMismatch, "operator and function differ in space");
  FunctionOnV out(space_);
  for (auto& [k, c] : f.terms()) {
    const auto image = apply_monomial(k);
    for (auto& [k2, c2] : image.terms()) out.add_term(k2, space_->F().mul(c, c2));
  }
  return out;
}

PlaneOperator PlaneOperator::compose(const PlaneOperator& other) const {
  const auto& F = space_->F();
  PlaneOperator r(space_);
  const std::size_t cells = columns_.size();
  r.columns_.resize(cells);
  std::vector<Code> acc(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (auto [mid, c1] : other.columns_[c]) {
      for (auto [k, c2] : columns_[mid]) acc[k] = F.add(acc[k], F.mul(c1, c2));
    }
    for (std::uint32_t k = 0; k < cells; ++k) {
      if (acc[k] != 0) r.columns_[c].emplace_back(k, acc[k]);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Shift operators and digit projectors

namespace {

std::uint32_t digit_of(std::uint64_t value, std::uint32_t j, std::uint32_t p) {
  for (std::uint32_t k = 0; k < j; ++k) value /= p;
  return static_cast<std::uint32_t>(value % p);
}

void require_lemma_context(const FunctionSpace& S) {
  if (S.t() < 2) throw Error(ErrorKind::RangeError, "the shift and projector lemmas are stated for t >= 2");
}

}  // namespace

GroupRingElement shift_operator(const SpacePtr& space, std::uint32_t ell, std::uint32_t j, bool mirror) {
  const auto& F = space->F();
  if (ell > space->p() - 1) throw Error(ErrorKind::RangeError, "shift amount must be in [0, p-1]");
  if (j >= space->t()) throw Error(ErrorKind::RangeError, "digit index must be below t");
  if (ell == 0) return GroupRingElement::scalar(space, F.neg(1));
  const std::uint64_t exponent = ell * checked_pow(space->p(), j);
  GroupRingElement r(space);
  for (Code mu = 1; mu < F.q(); ++mu) {
    const Code inv = F.inv(mu);
    r.add_term(mirror ? GroupElement::h_mu(space, inv) : GroupElement::g_mu(space, inv), F.pow(mu, exponent));
  }
  return r;
}

FunctionOnV shift_closed_form(const FunctionOnV& f, std::uint32_t ell, std::uint32_t j) {
  const auto& S = *f.space();
  require_lemma_context(S);
  if (ell < 1 || ell > S.p() - 1) throw Error(ErrorKind::RangeError, "shift amount must be in [1, p-1]");
  if (j >= S.t()) throw Error(ErrorKind::RangeError, "digit index must be below t");
  const auto& F = S.F();
  const std::uint64_t step = ell * checked_pow(S.p(), j);
  const std::uint32_t y = S.nvars() - 1;
  FunctionOnV out(f.space());
  for (auto& [key, c] : f.terms()) {
    const std::uint64_t a = S.exponent(key, 0), b = S.exponent(key, y);
    const std::uint32_t digit = digit_of(a, j, S.p());
    if (digit < ell) continue;
    const Code coeff = F.neg(F.from_int(binomial_mod_p(digit, ell, S.p())));
    const std::uint64_t moved = S.with_exponent(S.with_exponent(key, 0, a - step), y, S.reduce_exponent(b + step));
    out.add_term(moved, F.mul(coeff, c));
  }
  return out;
}

bool projector_selects(const FunctionSpace& S, std::uint32_t alpha, std::uint32_t beta, std::uint32_t j,
                       std::uint64_t key) {
  const std::uint32_t p = S.p();
  const std::uint32_t a = digit_of(S.exponent(key, 0), j, p);
  const std::uint32_t b = digit_of(S.exponent(key, S.nvars() - 1), j, p);
  return (a == alpha && b == beta) || (a == p - 1 - beta && b == p - 1 - alpha);
}

DigitProjectors::DigitProjectors(SpacePtr space, std::uint32_t j) : space_(std::move(space)), j_(j) {
  const auto& S = *space_;
  require_lemma_context(S);
  if (j >= S.t()) throw Error(ErrorKind::RangeError, "digit index must be below t");
  const auto& F = S.F();
  const std::uint32_t p = S.p();

  std::vector<GroupRingElement> g, h;
  for (std::uint32_t l = 0; l < p; ++l) {
    g.push_back(shift_operator(space_, l, j, false));
    h.push_back(shift_operator(space_, l, j, true));
  }
  std::vector<std::optional<GroupRingElement>> built(p * p);
  const auto one = GroupRingElement::scalar(space_, 1);
  for (std::int64_t sum = p - 1; sum >= 0; --sum) {
    for (std::uint32_t alpha = 0; alpha <= static_cast<std::uint32_t>(sum); ++alpha) {
      const std::uint32_t beta = static_cast<std::uint32_t>(sum) - alpha;
      const Code c = F.neg(F.inv(F.from_int(binomial_mod_p(sum, beta, p))));
      GroupRingElement e = (g[beta] * h[sum] * g[alpha]).scaled(c);
      for (std::uint32_t s2 = static_cast<std::uint32_t>(sum) + 1; s2 < p; ++s2) {
        for (std::uint32_t gamma = 0; gamma <= s2; ++gamma) {
          e = e * (one - *built[gamma * p + (s2 - gamma)]);
        }
      }
      built[alpha * p + beta] = std::move(e);
    }
  }
  for (std::uint32_t alpha = 0; alpha < p; ++alpha) {
    for (std::uint32_t beta = 0; beta < p; ++beta) {
      if (alpha + beta > p - 1) built[alpha * p + beta] = built[(p - 1 - beta) * p + (p - 1 - alpha)];
    }
  }
  for (auto& e : built) {
    elements_.push_back(*e);
    compiled_.emplace_back(*e);
  }
}

const GroupRingElement& DigitProjectors::element(std::uint32_t alpha, std::uint32_t beta) const {
  const std::uint32_t p = space_->p();
  if (alpha >= p || beta >= p) throw Error(ErrorKind::RangeError, "digits must be in [0, p-1]");
  return elements_[alpha * p + beta];
}

const PlaneOperator& DigitProjectors::compiled(std::uint32_t alpha, std::uint32_t beta) const {
  const std::uint32_t p = space_->p();
  if (alpha >= p || beta >= p) throw Error(ErrorKind::RangeError, "digits must be in [0, p-1]");
  return compiled_[alpha * p + beta];
}

GroupRingElement digit_projector(const SpacePtr& space, std::uint32_t alpha, std::uint32_t beta, std::uint32_t j) {
  return DigitProjectors(space, j).element(alpha, beta);
}

// ---------------------------------------------------------------------------
// tau and the middle degree

namespace {

std::uint32_t factorial_mod(std::uint32_t n, std::uint32_t p) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 2; i <= n; ++i) r = r * i % p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t sign_mod(std::uint64_t exponent, std::uint32_t p) { return exponent % 2 ? p - 1 : 1; }

std::uint32_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint32_t p) { return static_cast<std::uint32_t>(a * b % p); }

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// All digit vectors of the given length with entries in [0, p-1] summing to `total`.
std::vector<std::vector<std::uint32_t>> digit_vectors(std::uint32_t len, std::uint32_t p, std::uint32_t total) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(len);
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t k, std::uint32_t left) {
    if (k == len) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const std::uint32_t room = (len - k - 1) * (p - 1);
    for (std::uint32_t v = 0; v < p && v <= left; ++v) {
      if (left - v > room) continue;
      cur[k] = v;
      rec(k + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

}  // namespace

std::vector<MiddleMonomial> middle_basis(std::uint32_t m, std::uint32_t p) {
  std::vector<MiddleMonomial> out;
  for (auto& v : digit_vectors(2 * m, p, m * (p - 1))) {
    out.push_back({{v.begin(), v.begin() + m}, {v.begin() + m, v.end()}});
  }
  std::sort(out.begin(), out.end());
  return out;
}

TauImage tau(std::uint32_t m, std::uint32_t p, const MiddleMonomial& x) {
  if (x.alpha.size() != m || x.beta.size() != m) throw Error(ErrorKind::DegreeError, "multi-indices must have length m");
  std::uint64_t total = 0, beta_sum = 0;
  std::uint32_t coeff = 1;
  TauImage out{0, {std::vector<std::uint32_t>(m), std::vector<std::uint32_t>(m)}};
  for (std::uint32_t i = 0; i < m; ++i) {
    if (x.alpha[i] > p - 1 || x.beta[i] > p - 1) throw Error(ErrorKind::DegreeError, "entries must be at most p-1");
    total += x.alpha[i] + x.beta[i];
    beta_sum += x.beta[i];
    coeff = mul_mod(coeff, mul_mod(factorial_mod(x.alpha[i], p), factorial_mod(x.beta[i], p), p), p);
    out.image.alpha[i] = p - 1 - x.beta[i];
    out.image.beta[i] = p - 1 - x.alpha[i];
  }
  if (total != static_cast<std::uint64_t>(m) * (p - 1)) throw Error(ErrorKind::DegreeError, "degree must be m(p-1)");
  out.coefficient = mul_mod(sign_mod(beta_sum, p), coeff, p);
  return out;
}

PlusMinusSplit classify_S_plus_minus(std::uint32_t m, std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorKind::UnsupportedCharacteristic, "tau needs an odd prime");
  const auto basis = middle_basis(m, p);
  const std::size_t n = basis.size();
  auto index_of = [&](const MiddleMonomial& x) {
    return static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), x) - basis.begin());
  };
  PlusMinusSplit out;
  // Column i of T holds tau(basis[i]).
  std::vector<std::vector<std::int64_t>> T(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto once = tau(m, p, basis[i]);
    const auto twice = tau(m, p, once.image);
    if (twice.image != basis[i] || mul_mod(once.coefficient, twice.coefficient, p) != 1) ++out.tau_square_failures;
    T[index_of(once.image)][i] = once.coefficient;
  }
  auto eigenspace = [&](std::int64_t lambda) {
    auto A = T;
    for (std::size_t i = 0; i < n; ++i) A[i][i] -= lambda;
    return n - rank_dense_mod_p(A, static_cast<std::uint32_t>(n), p);
  };
  const std::int64_t plus = m % 2 ? -1 : 1;
  out.plus = eigenspace(plus);
  out.minus = eigenspace(-plus);
  return out;
}

// ---------------------------------------------------------------------------
// Symplectic basis functions

namespace {

// Partner (beta-bar, alpha-bar) of a digit vector in coordinate order.
std::vector<std::uint32_t> partner_of(const std::vector<std::uint32_t>& e, std::uint32_t m, std::uint32_t p) {
  std::vector<std::uint32_t> out(2 * m);
  for (std::uint32_t i = 1; i <= m; ++i) {
    const std::uint32_t a = e[i - 1], b = e[2 * m - i];
    out[i - 1] = p - 1 - b;
    out[2 * m - i] = p - 1 - a;
  }
  return out;
}

// c = (-1)^{|beta|+m} alpha! beta! for the digit vector e.
std::uint32_t pair_coefficient(const std::vector<std::uint32_t>& e, std::uint32_t m, std::uint32_t p) {
  std::uint64_t beta_sum = 0;
  std::uint32_t c = 1;
  for (std::uint32_t i = 1; i <= m; ++i) {
    beta_sum += e[2 * m - i];
    c = mul_mod(c, mul_mod(factorial_mod(e[i - 1], p), factorial_mod(e[2 * m - i], p), p), p);
  }
  return mul_mod(sign_mod(beta_sum + m, p), c, p);
}

SignedHType type_of_digits(const TypeContext& ctx, const std::vector<DigitFunction>& digits) {
  LambdaType lam;
  std::uint64_t total = 0, place = 1;
  DigitSet eps = 0;
  for (std::uint32_t j = 0; j < ctx.t; ++j) {
    std::uint32_t s = 0;
    for (auto v : digits[j].lead) s += v;
    lam.lambda.push_back(s);
    total += s * place;
    place *= ctx.p;
    if (digits[j].in_plus() && digits[j].form != DigitFunction::Form::Monomial) eps |= DigitSet{1} << j;
  }
  const std::uint64_t q = ctx.q();
  lam.d = total % (q - 1);
  return {h_type_from_lambda(ctx, lam), eps};
}

}  // namespace

std::vector<DigitFunction> digit_functions(std::uint32_t m, std::uint32_t p, std::uint32_t lambda_j) {
  if (lambda_j > 2 * m * (p - 1)) throw Error(ErrorKind::DegreeError, "digit degree exceeds 2m(p-1)");
  std::vector<DigitFunction> out;
  const bool middle = lambda_j == m * (p - 1);
  for (auto& e : digit_vectors(2 * m, p, lambda_j)) {
    if (!middle) {
      out.push_back({DigitFunction::Form::Monomial, e, {}, 0});
      continue;
    }
    auto partner = partner_of(e, m, p);
    if (partner == e) {
      out.push_back({DigitFunction::Form::SelfPaired, e, {}, 0});
    } else if (e < partner) {
      const std::uint32_t c = pair_coefficient(e, m, p);
      out.push_back({DigitFunction::Form::PairPlus, e, partner, c});
      out.push_back({DigitFunction::Form::PairMinus, e, partner, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FunctionOnV expand(const SpacePtr& space, const SymplecticBasisFunction& f) {
  const auto& S = *space;
  const auto& F = S.F();
  const std::uint32_t p = S.p();
  if (f.digits.size() != S.t()) throw Error(ErrorKind::DimensionMismatch, "one digit per position is required");
  std::vector<std::pair<std::uint64_t, Code>> acc{{0, 1}};
  std::uint64_t scale = 1;
  for (std::uint32_t j = 0; j < S.t(); ++j) {
    const auto& d = f.digits[j];
    auto key_of = [&](const std::vector<std::uint32_t>& e) {
      std::uint64_t key = 0;
      for (std::uint32_t k = 0; k < S.nvars(); ++k) key = S.with_exponent(key, k, e[k] * scale);
      return key;
    };
    std::vector<std::pair<std::uint64_t, Code>> parts{{key_of(d.lead), 1}};
    if (d.form == DigitFunction::Form::PairPlus || d.form == DigitFunction::Form::PairMinus) {
      const std::uint32_t c = d.form == DigitFunction::Form::PairPlus ? d.coefficient : (p - d.coefficient) % p;
      parts.emplace_back(key_of(d.partner), F.from_int(c));
    }
    std::vector<std::pair<std::uint64_t, Code>> next;
    for (auto [k1, c1] : acc) {
      for (auto [k2, c2] : parts) next.emplace_back(k1 + k2, F.mul(c1, c2));
    }
    acc = std::move(next);
    scale *= p;
  }
  FunctionOnV out(space);
  for (auto [k, c] : acc) out.add_term(k, c);
  return out;
}

std::vector<SymplecticBasisFunction> symplectic_basis(const SpacePtr& space, const LambdaType& lambda) {
  const auto ctx = space->types();
  if (lambda.lambda.size() != ctx.t) throw Error(ErrorKind::DimensionMismatch, "type has wrong length");
  std::vector<std::vector<DigitFunction>> choices;
  for (auto l : lambda.lambda) choices.push_back(digit_functions(ctx.m, ctx.p, l));
  std::vector<SymplecticBasisFunction> out;
  std::vector<DigitFunction> cur(ctx.t);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t j) {
    if (j == ctx.t) {
      out.push_back({cur, type_of_digits(ctx, cur)});
      return;
    }
    for (auto& d : choices[j]) {
      cur[j] = d;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

SymplecticExpansion expand_in_symplectic_basis(const FunctionOnV& f) {
  const auto& S = *f.space();
  const auto& F = S.F();
  const auto ctx = S.types();
  const std::uint32_t p = S.p(), m = S.m();
  const std::uint32_t inv2 = inv_mod_p(2, p);

  std::map<SymplecticBasisFunction, Code> acc;
  for (auto& [key, c] : f.terms()) {
    const auto exps = S.decode(key);
    std::vector<std::vector<std::pair<std::uint32_t, DigitFunction>>> per_digit(ctx.t);
    std::uint64_t scale = 1;
    for (std::uint32_t j = 0; j < ctx.t; ++j, scale *= p) {
      std::vector<std::uint32_t> e(2 * m);
      std::uint32_t sum = 0;
      for (std::uint32_t k = 0; k < 2 * m; ++k) {
        e[k] = static_cast<std::uint32_t>(exps[k] / scale % p);
        sum += e[k];
      }
      auto& opts = per_digit[j];
      if (sum != ctx.middle()) {
        opts.push_back({1, {DigitFunction::Form::Monomial, e, {}, 0}});
        continue;
      }
      auto partner = partner_of(e, m, p);
      if (partner == e) {
        opts.push_back({1, {DigitFunction::Form::SelfPaired, e, {}, 0}});
      } else if (e < partner) {
        // lead = (plus + minus) / 2
        const std::uint32_t cc = pair_coefficient(e, m, p);
        opts.push_back({inv2, {DigitFunction::Form::PairPlus, e, partner, cc}});
        opts.push_back({inv2, {DigitFunction::Form::PairMinus, e, partner, cc}});
      } else {
        // partner = (plus - minus) / (2 c), with c taken from the lead.
        const std::uint32_t cc = pair_coefficient(partner, m, p);
        const std::uint32_t w = inv_mod_p(mul_mod(2, cc, p), p);
        opts.push_back({w, {DigitFunction::Form::PairPlus, partner, e, cc}});
        opts.push_back({(p - w) % p, {DigitFunction::Form::PairMinus, partner, e, cc}});
      }
    }
    std::vector<DigitFunction> cur(ctx.t);
    std::function<void(std::uint32_t, Code)> rec = [&](std::uint32_t j, Code coeff) {
      if (j == ctx.t) {
        SymplecticBasisFunction b{cur, {}};
        auto [it, inserted] = acc.try_emplace(b, coeff);
        if (!inserted) it->second = F.add(it->second, coeff);
        return;
      }
      for (auto& [w, d] : per_digit[j]) {
        cur[j] = d;
        rec(j + 1, F.mul(coeff, F.from_int(w)));
      }
    };
    rec(0, c);
  }

  SymplecticExpansion out;
  for (auto& [b, c] : acc) {
    if (c == 0) continue;
    SymplecticBasisFunction full = b;
    full.type = type_of_digits(ctx, b.digits);
    out.types.push_back(full.type);
    out.terms.emplace_back(c, std::move(full));
  }
  std::sort(out.types.begin(), out.types.end());
  out.types.erase(std::unique(out.types.begin(), out.types.end()), out.types.end());
  for (auto& a : out.types) {
    bool maximal = true;
    for (auto& b : out.types) {
      if (a == b || a.s.d != b.s.d) continue;
      if (signed_leq(ctx, a, b)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.maximal.push_back(a);
  }
  return out;
}

FunctionOnV char_function(const SpacePtr& space, const Subspace& L) {
  const auto& S = *space;
  const auto& F = S.F();
  if (L.ambient_dim() != S.nvars()) throw Error(ErrorKind::DimensionMismatch, "subspace lives in a different space");
  const auto forms = null_space(F, L.rows(), S.nvars());
  FunctionOnV chi = FunctionOnV::constant(space, 1);
  const auto one = FunctionOnV::constant(space, 1);
  for (auto& w : forms) {
    FunctionOnV form(space);
    for (std::uint32_t k = 0; k < S.nvars(); ++k) form.add_term(S.with_exponent(0, k, 1), w[k]);
    chi = reduce_and_multiply(chi, one - power(form, S.q() - 1));
  }
  return chi;
}

// ---------------------------------------------------------------------------
// Labels

std::string label(const DigitFunction& d, std::uint32_t m) {
  auto mono = [&](const std::vector<std::uint32_t>& e) {
    std::vector<std::uint64_t> wide(e.begin(), e.end());
    return monomial_label(wide, m);
  };
  switch (d.form) {
    case DigitFunction::Form::Monomial:
    case DigitFunction::Form::SelfPaired:
      return mono(d.lead);
    case DigitFunction::Form::PairPlus:
      return "(" + mono(d.lead) + " + " + std::to_string(d.coefficient) + "*" + mono(d.partner) + ")";
    case DigitFunction::Form::PairMinus:
      return "(" + mono(d.lead) + " - " + std::to_string(d.coefficient) + "*" + mono(d.partner) + ")";
  }
  return {};
}

std::string label(const SymplecticBasisFunction& f, std::uint32_t m) {
  std::string out;
  for (std::size_t j = 0; j < f.digits.size(); ++j) {
    if (j) out += " * ";
    out += label(f.digits[j], m);
    if (j) out += "^(p^" + std::to_string(j) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification suites

namespace {

void record(SuiteResult& r, const LabOptions& options, const std::string& what) {
  ++r.failures;
  if (r.counterexamples.size() < options.max_counterexamples) r.counterexamples.push_back(what);
}

// Exhaustive monomial keys when the space is small, otherwise a seeded sample.
std::vector<std::uint64_t> sample_keys(const FunctionSpace& S, const LabOptions& options) {
  std::vector<std::uint64_t> keys;
  if (S.size() <= options.exhaustive_limit) {
    keys.resize(S.size());
    for (std::uint64_t k = 0; k < S.size(); ++k) keys[k] = k;
    return keys;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, S.size() - 1);
  for (std::uint64_t i = 0; i < options.random_samples; ++i) keys.push_back(pick(rng));
  return keys;
}

std::string describe(const FunctionSpace& S, std::uint64_t key) {
  return monomial_label(S.decode(key), S.m());
}

void require_projector_size(const FunctionSpace& S, const LabOptions& options) {
  require_lemma_context(S);
  if (S.q() > options.projector_max_q) {
    throw Error(ErrorKind::ResourceCapExceeded, "digit projectors are built only for q <= " +
                                                    std::to_string(options.projector_max_q));
  }
}

}  // namespace

SuiteResult verify_shift_lemma(const SpacePtr& space, const LabOptions& options) {
  const auto& S = *space;
  require_lemma_context(S);
  SuiteResult r;
  r.name = "shift-closed-form";
  const auto keys = sample_keys(S, options);
  for (std::uint32_t j = 0; j < S.t(); ++j) {
    for (std::uint32_t ell = 1; ell < S.p(); ++ell) {
      const auto op = shift_operator(space, ell, j);
      for (auto key : keys) {
        const auto f = FunctionOnV::from_key(space, key);
        const auto direct = op.apply(f);
        const auto closed = shift_closed_form(f, ell, j);
        ++r.checked;
        if (!(direct == closed) || !direct.in_prime_field()) {
          record(r, options,
                 "l=" + std::to_string(ell) + " j=" + std::to_string(j) + " f=" + describe(S, key) +
                     " direct=" + direct.to_string() + " closed=" + closed.to_string());
        }
      }
    }
  }
  return r;
}

SuiteResult verify_projector_selection(const SpacePtr& space, const LabOptions& options) {
  const auto& S = *space;
  require_projector_size(S, options);
  SuiteResult r;
  r.name = "projector-selection";
  const auto keys = sample_keys(S, options);
  for (std::uint32_t j = 0; j < S.t(); ++j) {
    const DigitProjectors proj(space, j);
    for (std::uint32_t alpha = 0; alpha < S.p(); ++alpha) {
      for (std::uint32_t beta = 0; beta < S.p(); ++beta) {
        const auto& op = proj.compiled(alpha, beta);
        for (auto key : keys) {
          const auto got = op.apply_monomial(key);
          const bool keep = projector_selects(S, alpha, beta, j, key);
          const auto want = keep ? FunctionOnV::from_key(space, key) : FunctionOnV(space);
          ++r.checked;
          if (!(got == want)) {
            record(r, options,
                   "alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta) + " j=" + std::to_string(j) +
                       " f=" + describe(S, key) + " expected=" + want.to_string() + " got=" + got.to_string());
          }
        }
      }
    }
  }
  return r;
}

SuiteResult verify_projector_idempotence(const SpacePtr& space, const LabOptions& options) {
  const auto& S = *space;
  require_projector_size(S, options);
  SuiteResult r;
  r.name = "projector-idempotence";
  const auto keys = sample_keys(S, options);
  for (std::uint32_t j = 0; j < S.t(); ++j) {
    const DigitProjectors proj(space, j);
    for (std::uint32_t alpha = 0; alpha < S.p(); ++alpha) {
      for (std::uint32_t beta = 0; beta < S.p(); ++beta) {
        const auto& op = proj.compiled(alpha, beta);
        std::uint64_t bad = 0;
        std::string first;
        for (auto key : keys) {
          const auto once = op.apply_monomial(key);
          const auto twice = op.apply(once);
          ++r.checked;
          if (!(once == twice)) {
            if (bad++ == 0) first = describe(S, key);
          }
        }
        if (bad) {
          r.failures += bad - 1;
          record(r, options,
                 "alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta) + " j=" + std::to_string(j) +
                     ": P(P f) != P f on " + std::to_string(bad) + " monomials, first " + first);
        }
      }
    }
  }
  return r;
}

SuiteResult verify_projector_orthogonality(const SpacePtr& space, const LabOptions& options) {
  const auto& S = *space;
  require_projector_size(S, options);
  SuiteResult r;
  r.name = "projector-orthogonality";
  const std::uint32_t p = S.p();
  const auto keys = sample_keys(S, options);
  auto selection = [&](std::uint32_t a, std::uint32_t b) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> s{{a, b}, {p - 1 - b, p - 1 - a}};
    std::sort(s.begin(), s.end());
    return s;
  };
  for (std::uint32_t j = 0; j < S.t(); ++j) {
    const DigitProjectors proj(space, j);
    for (std::uint32_t a1 = 0; a1 < p; ++a1) {
      for (std::uint32_t b1 = 0; b1 < p; ++b1) {
        for (std::uint32_t a2 = 0; a2 < p; ++a2) {
          for (std::uint32_t b2 = 0; b2 < p; ++b2) {
            const auto s1 = selection(a1, b1), s2 = selection(a2, b2);
            const bool disjoint = std::none_of(s1.begin(), s1.end(), [&](auto& x) {
              return std::find(s2.begin(), s2.end(), x) != s2.end();
            });
            if (!disjoint) continue;
            const auto& P1 = proj.compiled(a1, b1);
            const auto& P2 = proj.compiled(a2, b2);
            std::uint64_t bad = 0;
            for (auto key : keys) {
              ++r.checked;
              if (!P1.apply(P2.apply_monomial(key)).is_zero()) ++bad;
            }
            if (bad) {
              r.failures += bad - 1;
              record(r, options,
                     "j=" + std::to_string(j) + " (" + std::to_string(a1) + "," + std::to_string(b1) + ")*(" +
                         std::to_string(a2) + "," + std::to_string(b2) + ") nonzero on " + std::to_string(bad) +
                         " monomials");
            }
          }
        }
      }
    }
  }
  return r;
}

SuiteResult verify_tau(std::uint32_t m, std::uint32_t p) {
  SuiteResult r;
  r.name = "tau-plus-minus";
  const LabOptions options;
  const auto split = classify_S_plus_minus(m, p);
  r.checked = middle_basis(m, p).size();
  if (split.tau_square_failures) {
    r.failures += split.tau_square_failures;
    r.counterexamples.push_back("tau^2 != 1 on " + std::to_string(split.tau_square_failures) + " basis images");
  }
  const auto [plus, minus] = dim_S_plus_minus(m, p);
  ++r.checked;
  if (BigInt(split.plus) != plus || BigInt(split.minus) != minus) {
    record(r, options,
           "eigenspaces (" + std::to_string(split.plus) + "," + std::to_string(split.minus) + ") vs formula (" +
               to_decimal(plus) + "," + to_decimal(minus) + ")");
  }
  return r;
}

SuiteResult verify_symplectic_basis(const SpacePtr& space, const LabOptions& options) {
  const auto& S = *space;
  const auto ctx = S.types();
  SuiteResult r;
  r.name = "symplectic-basis";
  const DimensionTable table(ctx.m, ctx.p);

  // Every lambda when the space is small, otherwise a seeded sample of types.
  std::vector<std::vector<std::uint32_t>> lambdas;
  const std::uint64_t type_count = checked_pow(ctx.max_lambda() + 1, ctx.t);
  if (S.size() <= options.exhaustive_limit) {
    std::vector<std::uint32_t> cur(ctx.t, 0);
    for (std::uint64_t i = 0; i < type_count; ++i) {
      std::uint64_t v = i;
      for (std::uint32_t j = 0; j < ctx.t; ++j) {
        cur[j] = static_cast<std::uint32_t>(v % (ctx.max_lambda() + 1));
        v /= ctx.max_lambda() + 1;
      }
      lambdas.push_back(cur);
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, ctx.max_lambda());
    for (int i = 0; i < 24; ++i) {
      std::vector<std::uint32_t> cur(ctx.t);
      for (auto& v : cur) v = pick(rng);
      lambdas.push_back(cur);
    }
  }

  for (auto& lam : lambdas) {
    LambdaType type{lam, 0};
    const auto basis = symplectic_basis(space, type);
    const std::string tag = [&] {
      std::string s = "lambda=(";
      for (std::size_t j = 0; j < lam.size(); ++j) s += (j ? "," : "") + std::to_string(lam[j]);
      return s + ")";
    }();
    BigInt expected = 1;
    for (auto l : lam) expected *= table[l];
    ++r.checked;
    if (BigInt(basis.size()) != expected) {
      record(r, options, tag + ": " + std::to_string(basis.size()) + " functions, expected " + to_decimal(expected));
      continue;
    }

    // Independence: rank of the coefficient matrix over the monomials of this type.
    std::map<std::uint64_t, std::uint32_t> column;
    std::vector<FunctionOnV> expanded;
    for (auto& b : basis) {
      expanded.push_back(expand(space, b));
      for (auto& [k, c] : expanded.back().terms()) column.try_emplace(k, 0);
    }
    std::uint32_t next = 0;
    for (auto& [k, idx] : column) idx = next++;
    std::vector<std::vector<std::int64_t>> rows;
    bool prime_field = true;
    for (auto& f : expanded) {
      std::vector<std::int64_t> row(column.size(), 0);
      for (auto& [k, c] : f.terms()) {
        prime_field &= S.F().in_prime_field(c);
        row[column[k]] = c;
      }
      rows.push_back(std::move(row));
    }
    ++r.checked;
    if (!prime_field || column.size() != basis.size() ||
        rank_dense_mod_p(rows, static_cast<std::uint32_t>(column.size()), S.p()) != basis.size()) {
      record(r, options, tag + ": expanded functions are not a basis of the type's monomials");
    }

    // Signature split: each signed type appears dim L(s, eps) times.
    std::map<SignedHType, std::uint64_t> counts;
    for (auto& b : basis) ++counts[b.type];
    for (auto& [a, n] : counts) {
      ++r.checked;
      if (BigInt(n) != dim_L_signed(ctx, a)) {
        record(r, options, tag + ": " + std::to_string(n) + " functions of signed type " + label(a));
      }
    }

    // Round trip through the change of basis.
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto back = expand_in_symplectic_basis(expanded[i]);
      ++r.checked;
      if (back.terms.size() != 1 || back.terms[0].first != 1 || !(back.terms[0].second == basis[i]) ||
          back.terms[0].second.type != basis[i].type) {
        record(r, options, tag + ": expansion of " + label(basis[i], ctx.m) + " does not return itself");
      }
    }
  }
  return r;
}

SuiteResult verify_sp_invariance(const SpacePtr& space, const SignedHType& top) {
  const auto ctx = space->types();
  const LabOptions options;
  SuiteResult r;
  r.name = "sp-invariance";
  std::vector<SymplecticBasisFunction> members;
  for (auto& s : ideal_below(ctx, top.s)) {
    for (auto& b : symplectic_basis(space, lambda_from_h_type(ctx, s))) {
      if (b.type.s.d == top.s.d && signed_leq(ctx, b.type, top)) members.push_back(b);
    }
  }
  const auto gens = standard_generators(space);
  for (auto& b : members) {
    const auto f = expand(space, b);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const auto image = expand_in_symplectic_basis(act(gens[gi], f));
      ++r.checked;
      for (auto& a : image.types) {
        if (a.s.d != top.s.d || !signed_leq(ctx, a, top)) {
          record(r, options, "generator " + std::to_string(gi) + " sends " + label(b, ctx.m) + " to type " + label(a));
          break;
        }
      }
    }
  }
  return r;
}

std::vector<SuiteResult> verify_lemmas(const SpacePtr& space, const LabOptions& options) {
  require_lemma_context(*space);
  std::vector<SuiteResult> out;
  out.push_back(verify_shift_lemma(space, options));
  if (space->q() <= options.projector_max_q) {
    out.push_back(verify_projector_selection(space, options));
    out.push_back(verify_projector_idempotence(space, options));
    out.push_back(verify_projector_orthogonality(space, options));
  } else {
    for (const char* name : {"projector-selection", "projector-idempotence", "projector-orthogonality"}) {
      SuiteResult r;
      r.name = name;
      r.skipped = true;
      r.note = "projectors are built only for q <= " + std::to_string(options.projector_max_q);
      out.push_back(std::move(r));
    }
  }
  out.push_back(verify_tau(space->m(), space->p()));
  out.push_back(verify_symplectic_basis(space, options));
  return out;
}

}  // namespace polar

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polar/geometry.hpp"
#include "polar/types.hpp"

namespace polar {

/// k[V] for V = GF(q)^{2m}: functions are spanned by monomials with every exponent in
/// [0, q-1]. Variables are indexed by coordinate (x_1, ..., x_m, y_m, ..., y_1); a
/// monomial is keyed by sum_k b_k q^k.
class FunctionSpace {
 public:
  FunctionSpace(std::uint32_t m, FieldPtr field);

  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t nvars() const noexcept { return 2 * m_; }
  std::uint32_t p() const noexcept { return field_->p(); }
  std::uint32_t t() const noexcept { return field_->t(); }
  std::uint32_t q() const noexcept { return field_->q(); }
  const FieldPtr& field() const noexcept { return field_; }
  const GaloisField& F() const noexcept { return *field_; }
  const SymplecticSpace& geometry() const noexcept { return geometry_; }
  TypeContext types() const { return {m_, p(), t()}; }

  /// q^{2m}: the number of basis monomials and of vectors in V.
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t encode(std::span<const std::uint64_t> exponents) const;
  std::vector<std::uint64_t> decode(std::uint64_t key) const;
  std::uint64_t exponent(std::uint64_t key, std::uint32_t var) const noexcept { return key / place_[var] % q(); }
  std::uint64_t with_exponent(std::uint64_t key, std::uint32_t var, std::uint64_t e) const noexcept {
    return key - exponent(key, var) * place_[var] + e * place_[var];
  }

  /// e reduced by e -> e - (q-1) while e >= q, so that x^e agrees with the stored monomial on V.
  std::uint64_t reduce_exponent(std::uint64_t e) const noexcept;

  bool same_context(const FunctionSpace& other) const;

 private:
  std::uint32_t m_;
  FieldPtr field_;
  SymplecticSpace geometry_;
  std::uint64_t size_;
  std::vector<std::uint64_t> place_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

SpacePtr make_function_space(std::uint32_t m, std::uint32_t p, std::uint32_t t);

/// Sparse combination of basis monomials; zero coefficients are never stored.
class FunctionOnV {
 public:
  using Code = GaloisField::Code;
  using Terms = std::map<std::uint64_t, Code>;

  explicit FunctionOnV(SpacePtr space) : space_(std::move(space)) {}

  static FunctionOnV constant(SpacePtr space, Code c);
  static FunctionOnV monomial(SpacePtr space, std::span<const std::uint64_t> exponents, Code c = 1);
  static FunctionOnV from_key(SpacePtr space, std::uint64_t key, Code c = 1);
  static FunctionOnV variable(SpacePtr space, std::uint32_t var);

  const SpacePtr& space() const noexcept { return space_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Code coefficient(std::uint64_t key) const;

  void add_term(std::uint64_t key, Code c);

  FunctionOnV operator+(const FunctionOnV& o) const;
  FunctionOnV operator-(const FunctionOnV& o) const;
  FunctionOnV scaled(Code c) const;
  bool operator==(const FunctionOnV& o) const;

  /// True when every coefficient lies in the prime field.
  bool in_prime_field() const;

  std::string to_string() const;

 private:
  void check_context(const FunctionOnV& o) const;

  SpacePtr space_;
  Terms terms_;
};

/// Pointwise product on V with exponents folded back into [0, q-1].
FunctionOnV reduce_and_multiply(const FunctionOnV& f, const FunctionOnV& g);
FunctionOnV power(const FunctionOnV& f, std::uint64_t n);

GaloisField::Code evaluate(const FunctionOnV& f, std::span<const GaloisField::Code> v);
/// Values on every vector of V, indexed by sum_k v_k q^k.
std::vector<GaloisField::Code> evaluate_all(const FunctionOnV& f);
/// The unique function with the given values (inverse of evaluate_all).
FunctionOnV interpolate(const SpacePtr& space, const std::vector<GaloisField::Code>& values);

/// Element of Sp(V) as a 2m x 2m matrix (row-major) preserving the form.
class GroupElement {
 public:
  using Code = GaloisField::Code;

  /// Throws NotSymplectic unless g^T G g = G for the Gram matrix G.
  GroupElement(const SpacePtr& space, std::vector<Code> entries);

  static GroupElement identity(const SpacePtr& space);
  /// u -> u + a <u, v> v.
  static GroupElement transvection(const SpacePtr& space, std::span<const Code> v, Code a);
  /// g_mu: x_1 -> x_1 + mu y_1 under substitution, all other coordinates fixed.
  static GroupElement g_mu(const SpacePtr& space, Code mu);
  /// h_mu: y_1 -> y_1 + mu x_1 under substitution.
  static GroupElement h_mu(const SpacePtr& space, Code mu);

  std::uint32_t dim() const noexcept { return dim_; }
  Code at(std::uint32_t i, std::uint32_t j) const noexcept { return entries_[i * dim_ + j]; }
  const std::vector<Code>& entries() const noexcept { return entries_; }

  /// True when g is the identity outside the (x_1, y_1) block.
  bool acts_on_plane() const;

  friend auto operator<=>(const GroupElement& a, const GroupElement& b) { return a.entries_ <=> b.entries_; }
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.entries_ == b.entries_; }

  GroupElement multiply(const GaloisField& F, const GroupElement& o) const;

 private:
  GroupElement(std::uint32_t dim, std::vector<Code> entries) : dim_(dim), entries_(std::move(entries)) {}

  std::uint32_t dim_;
  std::vector<Code> entries_;
};

/// (g f)(v) = f(g^T v): each variable z_i is replaced by sum_k g[k][i] z_k.
/// This is an algebra action: act(gh, f) = act(g, act(h, f)).
FunctionOnV act(const GroupElement& g, const FunctionOnV& f);

/// Symplectic transvections along every basis vector and every sum of two basis
/// vectors, with scalars 1 and a primitive element; they generate Sp(V).
std::vector<GroupElement> standard_generators(const SpacePtr& space);

class GroupRingElement {
 public:
  using Code = GaloisField::Code;
  using Terms = std::map<GroupElement, Code>;

  explicit GroupRingElement(SpacePtr space) : space_(std::move(space)) {}

  static GroupRingElement scalar(const SpacePtr& space, Code c);
  static GroupRingElement single(const SpacePtr& space, const GroupElement& g, Code c = 1);

  const SpacePtr& space() const noexcept { return space_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(const GroupElement& g, Code c);

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(Code c) const;

  FunctionOnV apply(const FunctionOnV& f) const;

 private:
  SpacePtr space_;
  Terms terms_;
};

/// A group ring element whose support acts only on (x_1, y_1), precompiled into its
/// q^2 x q^2 action on x_1^a y_1^b; other variables pass through unchanged.
class PlaneOperator {
 public:
  using Code = GaloisField::Code;

  /// Throws RangeError when some group element moves other coordinates.
  explicit PlaneOperator(const GroupRingElement& element);

  const SpacePtr& space() const noexcept { return space_; }
  FunctionOnV apply(const FunctionOnV& f) const;
  FunctionOnV apply_monomial(std::uint64_t key) const;
  /// this * other: apply `other` first.
  PlaneOperator compose(const PlaneOperator& other) const;
  bool operator==(const PlaneOperator& o) const { return columns_ == o.columns_; }

 private:
  explicit PlaneOperator(SpacePtr space) : space_(std::move(space)) {}

  SpacePtr space_;
  // columns_[a q + b]: image of x_1^a y_1^b as (a' q + b', coefficient) pairs, sorted.
  std::vector<std::vector<std::pair<std::uint32_t, Code>>> columns_;
};

/// g_l(j) = sum_{mu != 0} mu^{l p^j} g_{mu^{-1}}; with `mirror` the y -> x analogue h_l(j).
/// l = 0 gives -1, the value the closed form takes at l = 0.
GroupRingElement shift_operator(const SpacePtr& space, std::uint32_t ell, std::uint32_t j, bool mirror = false);

/// Closed form of g_l(j) on f, extended linearly: a monomial whose j-th x_1 digit is below
/// l goes to 0, others to -C(a_{1j}, l) x_1^{a_1 - l p^j} y_1^{b_1 + l p^j} with the y_1
/// exponent folded into [0, q-1]. Requires t >= 2 and 1 <= l <= p-1.
FunctionOnV shift_closed_form(const FunctionOnV& f, std::uint32_t ell, std::uint32_t j);

/// Whether the digit projector (alpha, beta, j) is meant to keep the monomial.
bool projector_selects(const FunctionSpace& space, std::uint32_t alpha, std::uint32_t beta, std::uint32_t j,
                       std::uint64_t key);

/// The projectors g_{alpha,beta}(j) for all 0 <= alpha, beta <= p-1, built by the
/// descending recursion on alpha + beta: sum p-1 is -C(p-1, beta)^{-1} g_beta h_{p-1} g_alpha,
/// smaller sums multiply by prod (1 - g_{gamma,delta}) over alpha+beta < gamma+delta < p,
/// and sums above p-1 reuse the complementary pair. Requires t >= 2.
class DigitProjectors {
 public:
  DigitProjectors(SpacePtr space, std::uint32_t j);

  std::uint32_t digit() const noexcept { return j_; }
  const GroupRingElement& element(std::uint32_t alpha, std::uint32_t beta) const;
  const PlaneOperator& compiled(std::uint32_t alpha, std::uint32_t beta) const;

 private:
  SpacePtr space_;
  std::uint32_t j_;
  std::vector<GroupRingElement> elements_;
  std::vector<PlaneOperator> compiled_;
};

GroupRingElement digit_projector(const SpacePtr& space, std::uint32_t alpha, std::uint32_t beta, std::uint32_t j);

/// Basis image X^alpha Y^beta of the middle degree m(p-1) of the truncated ring.
struct MiddleMonomial {
  std::vector<std::uint32_t> alpha;
  std::vector<std::uint32_t> beta;

  friend auto operator<=>(const MiddleMonomial&, const MiddleMonomial&) = default;
};

std::vector<MiddleMonomial> middle_basis(std::uint32_t m, std::uint32_t p);

struct TauImage {
  std::uint32_t coefficient;  // in GF(p)
  MiddleMonomial image;
};

/// X^alpha Y^beta -> (-1)^{|beta|} alpha! beta! X^{beta-bar} Y^{alpha-bar}. DegreeError unless
/// |alpha| + |beta| = m(p-1) with all entries in [0, p-1].
TauImage tau(std::uint32_t m, std::uint32_t p, const MiddleMonomial& x);

struct PlusMinusSplit {
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t tau_square_failures = 0;
};

/// Eigenspace dimensions of tau for (-1)^m (plus) and (-1)^{m+1} (minus), by ranks over GF(p).
PlusMinusSplit classify_S_plus_minus(std::uint32_t m, std::uint32_t p);

/// A digit of a symplectic basis function, with exponents per coordinate in [0, p-1].
struct DigitFunction {
  enum class Form { Monomial, SelfPaired, PairPlus, PairMinus };

  Form form = Form::Monomial;
  std::vector<std::uint32_t> lead;
  /// Pairs only: the complementary monomial and c = (-1)^{|beta|+m} alpha! beta!, so the
  /// digit is lead + c partner (PairPlus) or lead - c partner (PairMinus).
  std::vector<std::uint32_t> partner;
  std::uint32_t coefficient = 0;

  bool in_plus() const { return form == Form::SelfPaired || form == Form::PairPlus; }
  friend auto operator<=>(const DigitFunction&, const DigitFunction&) = default;
};

/// All allowable digits of degree lambda_j.
std::vector<DigitFunction> digit_functions(std::uint32_t m, std::uint32_t p, std::uint32_t lambda_j);

struct SymplecticBasisFunction {
  std::vector<DigitFunction> digits;
  SignedHType type;

  friend auto operator<=>(const SymplecticBasisFunction& a, const SymplecticBasisFunction& b) {
    return a.digits <=> b.digits;
  }
  friend bool operator==(const SymplecticBasisFunction& a, const SymplecticBasisFunction& b) {
    return a.digits == b.digits;
  }
};

/// f_0 f_1^p ... f_{t-1}^{p^{t-1}} as a function.
FunctionOnV expand(const SpacePtr& space, const SymplecticBasisFunction& f);

/// All symplectic basis functions of type lambda, in digit order.
std::vector<SymplecticBasisFunction> symplectic_basis(const SpacePtr& space, const LambdaType& lambda);

struct SymplecticExpansion {
  std::vector<std::pair<GaloisField::Code, SymplecticBasisFunction>> terms;
  /// Distinct signed types present, sorted.
  std::vector<SignedHType> types;
  /// Those not below another present type of the same grading.
  std::vector<SignedHType> maximal;
};

SymplecticExpansion expand_in_symplectic_basis(const FunctionOnV& f);

/// Indicator of L: the product of 1 - l^{q-1} over a basis of the forms vanishing on L.
FunctionOnV char_function(const SpacePtr& space, const Subspace& L);

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> counterexamples;
  /// Set when the suite was not run in this context; `note` says why.
  bool skipped = false;
  std::string note;

  bool passed() const { return !skipped && failures == 0 && checked > 0; }
};

struct LabOptions {
  /// Contexts with at most this many monomials are checked exhaustively.
  std::uint64_t exhaustive_limit = 6561;
  std::uint64_t random_samples = 500;
  std::uint64_t seed = 20240601;
  std::uint32_t max_counterexamples = 8;
  /// Digit projectors are built only for q up to this bound.
  std::uint32_t projector_max_q = 9;
};

SuiteResult verify_shift_lemma(const SpacePtr& space, const LabOptions& options = {});
SuiteResult verify_projector_selection(const SpacePtr& space, const LabOptions& options = {});
SuiteResult verify_projector_idempotence(const SpacePtr& space, const LabOptions& options = {});
SuiteResult verify_projector_orthogonality(const SpacePtr& space, const LabOptions& options = {});
SuiteResult verify_tau(std::uint32_t m, std::uint32_t p);
/// Per type: count equals prod d_{lambda_j}, expansions independent, signature split matches S+-.
SuiteResult verify_symplectic_basis(const SpacePtr& space, const LabOptions& options = {});
/// act(g, b) stays inside Y(top) for every generator g and symplectic basis function b of Y(top).
SuiteResult verify_sp_invariance(const SpacePtr& space, const SignedHType& top);

/// All suites; projector suites above `projector_max_q` come back marked skipped.
std::vector<SuiteResult> verify_lemmas(const SpacePtr& space, const LabOptions& options = {});

std::string label(const DigitFunction& d, std::uint32_t m);
std::string label(const SymplecticBasisFunction& f, std::uint32_t m);

}  // namespace polar

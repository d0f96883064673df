#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include "polar/error.hpp"

namespace polar {

bool is_prime(std::uint64_t n);

/// Binomial coefficient C(n, k) reduced mod the prime p (Lucas' theorem).
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// Integer power with overflow check; throws RangeError when the result exceeds 2^64-1.
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

enum class FieldMode {
  /// Odd characteristic only; what every geometry and formula path requests.
  Geometry,
  /// Any prime; used by the plain arithmetic tests and the characteristic-2 comparison.
  Arithmetic,
};

/// GF(p^t) presented as GF(p)[X]/(modulus).
///
/// The modulus is the monic irreducible of degree t whose coefficient tuple
/// (c_0, ..., c_{t-1}) has the smallest code sum_i c_i p^i, i.e. tuples are compared
/// from the X^{t-1} coefficient down to the constant term. For t = 1 this is X.
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t t = 0;
  /// c_0, ..., c_{t-1}, 1.
  std::vector<std::uint32_t> modulus;

  std::uint64_t order() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

FieldSpec build_field(std::uint32_t p, std::uint32_t t, FieldMode mode = FieldMode::Geometry);

/// True when the monic polynomial with coefficients `coeffs` (constant term first,
/// leading 1 included) is irreducible over GF(p).
bool is_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p);

/// Table-driven arithmetic on element codes.
///
/// An element c_0 + c_1 X + ... + c_{t-1} X^{t-1} has code sum_i c_i p^i. Codes are
/// canonical, so equality of elements is equality of codes; code 0 is zero and code 1
/// is one, and increasing codes give the enumeration order.
class GaloisField {
 public:
  using Code = std::uint32_t;

  explicit GaloisField(FieldSpec spec);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t t() const noexcept { return spec_.t; }
  std::uint32_t q() const noexcept { return q_; }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }

  Code add(Code a, Code b) const noexcept {
    return add_.empty() ? add_digitwise(a, b) : add_[a * q_ + b];
  }
  Code sub(Code a, Code b) const noexcept { return add(a, neg_[b]); }
  Code neg(Code a) const noexcept { return neg_[a]; }
  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t n) const noexcept;
  Code frobenius(Code a) const noexcept { return pow(a, spec_.p); }

  /// The image of the integer n in the prime field.
  Code from_int(std::int64_t n) const noexcept;
  bool in_prime_field(Code a) const noexcept { return a < spec_.p; }

  /// A fixed generator of the multiplicative group.
  Code primitive_element() const noexcept { return exp_[q_ > 2 ? 1 : 0]; }
  /// Order of a nonzero element in the multiplicative group, computed by repeated multiplication.
  std::uint64_t multiplicative_order(Code a) const;

  std::vector<std::uint32_t> coefficients(Code a) const;
  Code from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

 private:
  Code poly_mul_code(Code a, Code b) const;
  Code add_digitwise(Code a, Code b) const noexcept;

  FieldSpec spec_;
  std::uint32_t q_;
  std::vector<Code> add_;
  std::vector<Code> neg_;
  std::vector<std::uint32_t> log_;
  std::vector<Code> exp_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

FieldPtr make_field(std::uint32_t p, std::uint32_t t, FieldMode mode = FieldMode::Geometry);

/// Self-describing element; mixing elements of different fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, GaloisField::Code code);

  const FieldPtr& field() const noexcept { return field_; }
  GaloisField::Code code() const noexcept { return code_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coefficients(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t n) const;
  FieldElement frobenius() const;

  bool operator==(const FieldElement& o) const;

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e);

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr field_;
  GaloisField::Code code_;
};

/// All q elements in code order: 0 first, 1 second.
std::vector<FieldElement> enumerate_field(const FieldPtr& field);

}  // namespace polar

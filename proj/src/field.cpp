#include "polar/field.hpp"

#include <limits>
#include <string>

namespace polar {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CompositeP: return "CompositeP";
    case ErrorKind::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::ParityError: return "ParityError";
    case ErrorKind::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::DegreeError: return "DegreeError";
    case ErrorKind::ResourceCapExceeded: return "ResourceCapExceeded";
  }
  return "Error";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p;
    const std::uint64_t ki = k % p;
    if (ki > ni) return 0;
    // C(ni, ki) with ni < p: a small Pascal computation.
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < ki; ++i) {
      c = c * (ni - i) % p;
      // divide by (i + 1) via the inverse mod p
      std::uint64_t inv = 1, base = (i + 1) % p, e = p - 2;
      while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
      }
      c = c * inv % p;
    }
    result = result * c % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw Error(ErrorKind::RangeError, "integer power overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

std::uint64_t FieldSpec::order() const { return checked_pow(p, t); }

namespace {

// Polynomials over GF(p) as coefficient vectors, constant term first.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial b.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + static_cast<std::uint64_t>(p - lead) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_pow(p, static_cast<std::uint32_t>(d));
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      if (poly_rem(coeffs, divisor, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec build_field(std::uint32_t p, std::uint32_t t, FieldMode mode) {
  if (t == 0) throw Error(ErrorKind::RangeError, "extension degree must be positive");
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (p == 2 && mode == FieldMode::Geometry) {
    throw Error(ErrorKind::UnsupportedCharacteristic, "geometry requires odd characteristic");
  }
  FieldSpec spec{p, t, {}};
  const std::uint64_t count = checked_pow(p, t);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly candidate(t + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < t; ++i) {
      candidate[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    candidate[t] = 1;
    if (is_irreducible(candidate, p)) {
      spec.modulus = std::move(candidate);
      return spec;
    }
  }
  throw Error(ErrorKind::RangeError, "no irreducible polynomial found");
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
  const std::uint64_t q = spec_.order();
  if (q > (1u << 20)) throw Error(ErrorKind::RangeError, "field too large for table arithmetic");
  q_ = static_cast<std::uint32_t>(q);

  neg_.resize(q_);
  for (Code a = 0; a < q_; ++a) {
    auto c = coefficients(a);
    for (auto& x : c) x = (spec_.p - x) % spec_.p;
    neg_[a] = from_coefficients(c);
  }
  if (q_ <= 1024) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (Code a = 0; a < q_; ++a) {
      for (Code b = 0; b < q_; ++b) add_[a * q_ + b] = add_digitwise(a, b);
    }
  }

  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  for (Code g = 1; g < q_; ++g) {
    // Walk the powers of g; it generates iff it returns to 1 only after q-1 steps.
    Code x = 1;
    std::uint64_t order = 0;
    do {
      x = poly_mul_code(x, g);
      ++order;
    } while (x != 1);
    if (order != q_ - 1) continue;
    x = 1;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      exp_[e] = x;
      log_[x] = e;
      x = poly_mul_code(x, g);
    }
    return;
  }
  throw Error(ErrorKind::RangeError, "no primitive element found");
}

GaloisField::Code GaloisField::add_digitwise(Code a, Code b) const noexcept {
  Code r = 0, place = 1;
  for (std::uint32_t i = 0; i < spec_.t; ++i) {
    r += ((a % spec_.p + b % spec_.p) % spec_.p) * place;
    a /= spec_.p;
    b /= spec_.p;
    place *= spec_.p;
  }
  return r;
}

GaloisField::Code GaloisField::poly_mul_code(Code a, Code b) const {
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  Poly prod(2 * spec_.t, 0);
  for (std::uint32_t i = 0; i < spec_.t; ++i) {
    for (std::uint32_t j = 0; j < spec_.t; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % spec_.p);
    }
  }
  auto r = poly_rem(std::move(prod), spec_.modulus, spec_.p);
  r.resize(spec_.t, 0);
  return from_coefficients(r);
}

GaloisField::Code GaloisField::inv(Code a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

GaloisField::Code GaloisField::pow(Code a, std::uint64_t n) const noexcept {
  if (n == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1))];
}

GaloisField::Code GaloisField::from_int(std::int64_t n) const noexcept {
  const std::int64_t p = spec_.p;
  return static_cast<Code>(((n % p) + p) % p);
}

std::uint64_t GaloisField::multiplicative_order(Code a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "zero has no multiplicative order");
  Code x = a;
  std::uint64_t k = 1;
  while (x != 1) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::vector<std::uint32_t> GaloisField::coefficients(Code a) const {
  std::vector<std::uint32_t> c(spec_.t);
  for (std::uint32_t i = 0; i < spec_.t; ++i) {
    c[i] = a % spec_.p;
    a /= spec_.p;
  }
  return c;
}

GaloisField::Code GaloisField::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  Code r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * spec_.p + coeffs[i] % spec_.p;
  return r;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t t, FieldMode mode) {
  return std::make_shared<const GaloisField>(build_field(p, t, mode));
}

FieldElement::FieldElement(FieldPtr field, GaloisField::Code code) : field_(std::move(field)), code_(code) {
  if (code_ >= field_->q()) throw Error(ErrorKind::RangeError, "element code out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_ && !(field_->spec() == o.field_->spec())) {
    throw Error(ErrorKind::FieldMismatch, "operands belong to different fields");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(code_, o.code_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(code_, o.code_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(code_, o.code_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(code_, o.code_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::pow(std::uint64_t n) const { return {field_, field_->pow(code_, n)}; }
FieldElement FieldElement::frobenius() const { return {field_, field_->frobenius(code_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return code_ == o.code_;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
  const auto c = e.coeffs();
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) os << 'X';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os;
}

std::vector<FieldElement> enumerate_field(const FieldPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(field->q());
  for (GaloisField::Code c = 0; c < field->q(); ++c) out.emplace_back(field, c);
  return out;
}

}  // namespace polar

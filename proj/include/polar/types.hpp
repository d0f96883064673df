#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polar/error.hpp"

namespace polar {

/// Parameters (m, p, t) shared by the type calculus; q = p^t.
struct TypeContext {
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  std::uint32_t t = 0;

  std::uint64_t q() const;
  /// 2m(p-1), the largest digit sum.
  std::uint32_t max_lambda() const { return 2 * m * (p - 1); }
  /// m(p-1), the digit sum whose GL-factor splits under Sp.
  std::uint32_t middle() const { return m * (p - 1); }
  std::uint32_t next(std::uint32_t j) const { return j + 1 == t ? 0 : j + 1; }
  /// p-adic digits d_0, ..., d_{t-1} of d.
  std::vector<std::uint32_t> digits(std::uint64_t d) const;

  friend bool operator==(const TypeContext&, const TypeContext&) = default;
};

/// Validates m >= 2, p prime and t >= 1 (t <= 32 so subsets of digits fit a bitmask).
TypeContext make_context(std::uint32_t m, std::uint32_t p, std::uint32_t t);

/// Exponents of a basis monomial in coordinate order (x_1, ..., x_m, y_m, ..., y_1).
struct MonomialExponents {
  std::vector<std::uint64_t> b;

  /// a[i][j]: j-th p-adic digit of b_i.
  std::vector<std::vector<std::uint32_t>> digits(const TypeContext& ctx) const;
};

struct LambdaType {
  std::vector<std::uint32_t> lambda;
  /// Grading class representative in [0, q-2].
  std::uint64_t d = 0;

  friend bool operator==(const LambdaType&, const LambdaType&) = default;
};

struct HType {
  std::vector<std::int64_t> s;
  std::uint64_t d = 0;

  friend auto operator<=>(const HType&, const HType&) = default;
};

/// Subsets of digit positions as bitmasks, bit j for position j.
using DigitSet = std::uint32_t;

struct SignedHType {
  HType s;
  DigitSet eps = 0;

  friend auto operator<=>(const SignedHType&, const SignedHType&) = default;
};

LambdaType type_of(const TypeContext& ctx, const MonomialExponents& f);

/// Solves lambda_j = p s_{j+1} - s_j + d_j for s.
HType h_type_from_lambda(const TypeContext& ctx, const LambdaType& lambda);
LambdaType lambda_from_h_type(const TypeContext& ctx, const HType& s);

/// Digit sums p s_{j+1} - s_j + d_j without range checks.
std::vector<std::int64_t> lambda_values(const TypeContext& ctx, const HType& s);

/// Members of H[d] for [d] != [0]: 0 <= s_j <= 2m-1 and every lambda_j in range.
/// For d = 0 this returns H (1 <= s_j <= 2m-1); see enumerate_H0 for H[0].
std::vector<HType> enumerate_H(const TypeContext& ctx, std::uint64_t d = 0);
/// H together with the two constant tuples 0 and 2m.
std::vector<HType> enumerate_H0(const TypeContext& ctx);

bool in_H(const TypeContext& ctx, const HType& s);

/// Componentwise order.
bool leq(const HType& a, const HType& b);

DigitSet J(const TypeContext& ctx, const HType& s);
/// Positions j with a_j = b_j, a_{j+1} = b_{j+1} and lambda_j(b) = m(p-1).
DigitSet Z(const TypeContext& ctx, const HType& a, const HType& b);

/// {s' in H (or H[d]) : s' <= s}, sorted.
std::vector<HType> ideal_below(const TypeContext& ctx, const HType& s);

/// All (s, eps) with s in H (d = 0) or H[d] and eps a subset of J(s), sorted.
std::vector<SignedHType> enumerate_S(const TypeContext& ctx, std::uint64_t d = 0);

bool signed_leq(const TypeContext& ctx, const SignedHType& a, const SignedHType& b);

std::vector<SignedHType> signed_ideal_below(const TypeContext& ctx, const SignedHType& a);

std::string label(const HType& s);
std::string label(const SignedHType& a);
std::string label_digits(DigitSet eps, std::uint32_t t);

/// Covering pairs (lower index, upper index) of the signed order restricted to `elements`.
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const TypeContext& ctx,
                                                             const std::vector<SignedHType>& elements);

/// Hasse diagram in Graphviz DOT, edges drawn from lower to upper elements.
std::string hasse_dot(const TypeContext& ctx, const std::vector<SignedHType>& elements);

}  // namespace polar

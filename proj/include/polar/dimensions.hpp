#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polar/types.hpp"

namespace polar {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// d_lambda by the alternating binomial sum.
BigInt dim_S_lambda_alternating(std::uint32_t m, std::uint32_t p, std::uint32_t lambda);

/// d_lambda as the number of 2m-tuples of digits in [0, p-1] summing to lambda.
BigInt dim_S_lambda_count(std::uint32_t m, std::uint32_t p, std::uint32_t lambda);

/// Throws RangeError outside 0 <= lambda <= 2m(p-1); asserts both routes agree.
BigInt dim_S_lambda(std::uint32_t m, std::uint32_t p, std::uint32_t lambda);

/// The whole row d_0, ..., d_{2m(p-1)}, computed by digit counting and checked
/// entrywise against the alternating sum.
class DimensionTable {
 public:
  DimensionTable(std::uint32_t m, std::uint32_t p);

  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t max_lambda() const noexcept { return static_cast<std::uint32_t>(d_.size() - 1); }
  const BigInt& operator[](std::uint32_t lambda) const;
  /// 0 outside [0, 2m(p-1)].
  BigInt at_or_zero(std::int64_t lambda) const;
  const std::vector<BigInt>& values() const noexcept { return d_; }

  /// dim S+ and dim S-; p must be odd.
  std::pair<BigInt, BigInt> plus_minus() const;

 private:
  std::uint32_t m_;
  std::uint32_t p_;
  std::vector<BigInt> d_;
};

/// ((d_{m(p-1)} + p^m)/2, (d_{m(p-1)} - p^m)/2).
std::pair<BigInt, BigInt> dim_S_plus_minus(std::uint32_t m, std::uint32_t p);

/// Product over digits of dim S+ (j in eps), dim S- (j in J(s) \ eps) or d_{lambda_j}.
BigInt dim_L_signed(const TypeContext& ctx, const SignedHType& a);

/// Sum of dim_L_signed over the signed ideal below a.
BigInt dim_Y_signed(const TypeContext& ctx, const SignedHType& a);

struct RankReport {
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  std::uint32_t t = 0;
  std::uint32_t r = 0;
  BigInt formula_rank;
  std::optional<BigInt> oracle_rank;
  std::optional<bool> match;
  /// Set for m < r <= 2m-1, where the unsigned formula is applied as stated and wants an oracle.
  bool needs_oracle_confirmation = false;
  std::string formula_method;
  double formula_seconds = 0;
  std::optional<double> oracle_seconds;
};

/// The signed-type (s_m, eps_m) and H-type (2m-r, ..., 2m-r) used for flat dimension r.
SignedHType rank_generator_type(const TypeContext& ctx, std::uint32_t r);

/// 1 + dim Y(s_m, eps_m) for r = m; 1 + sum over s' <= (2m-r, ...) of prod d_{lambda'_j} otherwise.
BigInt rank_point_flat(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r);

/// Formula rank with timing; the oracle fields are left empty.
RankReport rank_report(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r);

using BigMatrix = std::vector<std::vector<BigInt>>;

/// D[i][j] = d_{p(j+1) - (i+1)} (0-based indices), except D[m-1][m-1] = dim S+.
BigMatrix build_D_matrix(std::uint32_t m, std::uint32_t p);

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b);
BigInt trace(const BigMatrix& a);
BigInt determinant(const BigMatrix& a);
/// Trace(D^t) for t = 1, ..., t_max.
std::vector<BigInt> trace_powers(const BigMatrix& D, std::uint32_t t_max);

/// 1 + Trace(D^t).
BigInt rank_trace_formula(std::uint32_t m, std::uint32_t p, std::uint32_t t);

/// Power sums alpha_1^t + alpha_2^t of the two roots A +- B sqrt(17), from the
/// recurrence with trace 2A and norm A^2 - 17B^2, in exact rationals.
BigRational w3_power_sum(const BigRational& A, const BigRational& B, std::uint32_t t);

/// A = p(p+1)^2/4 and B = p(p+1)(p-1)/12.
std::pair<BigRational, BigRational> w3_roots(std::uint32_t p);

/// 1 + alpha_1^t + alpha_2^t for odd p.
BigInt rank_W3_closed_form(std::uint32_t p, std::uint32_t t);

/// 1 + b_{2t} with b_n = b_{n-1} + 4 b_{n-2}, b_0 = 2, b_1 = 1; asserts agreement with
/// the odd-characteristic closed form evaluated at p = 2.
BigInt rank_W3_char2(std::uint32_t t);

/// Emits big integers as JSON-ready decimal text.
std::string to_decimal(const BigInt& v);

}  // namespace polar

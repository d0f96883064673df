#include "polar/dimensions.hpp"

#include <chrono>
#include <stdexcept>

#include "polar/field.hpp"

namespace polar {

namespace {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void check_lambda(std::uint32_t m, std::uint32_t p, std::uint32_t lambda) {
  if (lambda > 2 * m * (p - 1)) throw Error(ErrorKind::RangeError, "lambda outside [0, 2m(p-1)]");
}

void check_odd(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorKind::UnsupportedCharacteristic, "formula requires odd characteristic");
}

}  // namespace

BigInt dim_S_lambda_alternating(std::uint32_t m, std::uint32_t p, std::uint32_t lambda) {
  check_lambda(m, p, lambda);
  const std::int64_t n = 2 * static_cast<std::int64_t>(m);
  BigInt sum = 0;
  for (std::int64_t j = 0; j <= lambda / p; ++j) {
    const BigInt term = binomial(n, j) * binomial(n - 1 + lambda - j * p, n - 1);
    if (j % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

BigInt dim_S_lambda_count(std::uint32_t m, std::uint32_t p, std::uint32_t lambda) {
  check_lambda(m, p, lambda);
  // ways[s]: number of digit tuples of the current length with sum s.
  std::vector<BigInt> ways(lambda + 1, 0);
  ways[0] = 1;
  for (std::uint32_t v = 0; v < 2 * m; ++v) {
    std::vector<BigInt> next(lambda + 1, 0);
    for (std::uint32_t s = 0; s <= lambda; ++s) {
      if (ways[s] == 0) continue;
      for (std::uint32_t a = 0; a < p && s + a <= lambda; ++a) next[s + a] += ways[s];
    }
    ways = std::move(next);
  }
  return ways[lambda];
}

BigInt dim_S_lambda(std::uint32_t m, std::uint32_t p, std::uint32_t lambda) {
  BigInt counted = dim_S_lambda_count(m, p, lambda);
  if (counted != dim_S_lambda_alternating(m, p, lambda)) {
    throw std::logic_error("d_lambda routes disagree");
  }
  return counted;
}

DimensionTable::DimensionTable(std::uint32_t m, std::uint32_t p) : m_(m), p_(p) {
  if (m < 1) throw Error(ErrorKind::RangeError, "m must be positive");
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  const std::uint32_t top = 2 * m * (p - 1);
  // Coefficients of (1 + x + ... + x^{p-1})^{2m}.
  d_.assign(top + 1, 0);
  d_[0] = 1;
  for (std::uint32_t v = 0; v < 2 * m; ++v) {
    std::vector<BigInt> next(top + 1, 0);
    for (std::uint32_t s = 0; s <= top; ++s) {
      if (d_[s] == 0) continue;
      for (std::uint32_t a = 0; a < p && s + a <= top; ++a) next[s + a] += d_[s];
    }
    d_ = std::move(next);
  }
  for (std::uint32_t l = 0; l <= top; ++l) {
    if (d_[l] != dim_S_lambda_alternating(m, p, l)) throw std::logic_error("d_lambda routes disagree");
  }
}

const BigInt& DimensionTable::operator[](std::uint32_t lambda) const {
  if (lambda >= d_.size()) throw Error(ErrorKind::RangeError, "lambda outside [0, 2m(p-1)]");
  return d_[lambda];
}

BigInt DimensionTable::at_or_zero(std::int64_t lambda) const {
  if (lambda < 0 || lambda >= static_cast<std::int64_t>(d_.size())) return 0;
  return d_[static_cast<std::size_t>(lambda)];
}

std::pair<BigInt, BigInt> DimensionTable::plus_minus() const {
  check_odd(p_);
  const BigInt& mid = d_[m_ * (p_ - 1)];
  BigInt pm = 1;
  for (std::uint32_t i = 0; i < m_; ++i) pm *= p_;
  if ((mid + pm) % 2 != 0) throw Error(ErrorKind::ParityError, "d_{m(p-1)} and p^m differ in parity");
  return {(mid + pm) / 2, (mid - pm) / 2};
}

std::pair<BigInt, BigInt> dim_S_plus_minus(std::uint32_t m, std::uint32_t p) {
  check_odd(p);
  return DimensionTable(m, p).plus_minus();
}

namespace {

BigInt signed_product(const TypeContext& ctx, const DimensionTable& table, const std::pair<BigInt, BigInt>& pm,
                      const SignedHType& a) {
  const auto lam = lambda_values(ctx, a.s);
  const DigitSet j_set = J(ctx, a.s);
  BigInt prod = 1;
  for (std::uint32_t j = 0; j < ctx.t; ++j) {
    if (a.eps >> j & 1) {
      prod *= pm.first;
    } else if (j_set >> j & 1) {
      prod *= pm.second;
    } else {
      prod *= table.at_or_zero(lam[j]);
    }
  }
  return prod;
}

}  // namespace

BigInt dim_L_signed(const TypeContext& ctx, const SignedHType& a) {
  check_odd(ctx.p);
  if ((a.eps & ~J(ctx, a.s)) != 0) throw Error(ErrorKind::RangeError, "signature must lie in J(s)");
  const DimensionTable table(ctx.m, ctx.p);
  return signed_product(ctx, table, table.plus_minus(), a);
}

BigInt dim_Y_signed(const TypeContext& ctx, const SignedHType& a) {
  check_odd(ctx.p);
  const DimensionTable table(ctx.m, ctx.p);
  const auto pm = table.plus_minus();
  BigInt sum = 0;
  for (auto& b : signed_ideal_below(ctx, a)) sum += signed_product(ctx, table, pm, b);
  return sum;
}

SignedHType rank_generator_type(const TypeContext& ctx, std::uint32_t r) {
  if (r < 1 || r > 2 * ctx.m - 1) throw Error(ErrorKind::RangeError, "r must be in [1, 2m-1]");
  if (r == ctx.m) {
    return {{std::vector<std::int64_t>(ctx.t, ctx.m), 0}, static_cast<DigitSet>((std::uint64_t{1} << ctx.t) - 1)};
  }
  return {{std::vector<std::int64_t>(ctx.t, 2 * static_cast<std::int64_t>(ctx.m) - r), 0}, 0};
}

BigInt rank_point_flat(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r) {
  check_odd(p);
  const auto ctx = make_context(m, p, t);
  const auto gen = rank_generator_type(ctx, r);
  if (r == m) return 1 + dim_Y_signed(ctx, gen);
  const DimensionTable table(m, p);
  BigInt sum = 0;
  for (auto& s : ideal_below(ctx, gen.s)) {
    BigInt prod = 1;
    for (auto l : lambda_values(ctx, s)) prod *= table.at_or_zero(l);
    sum += prod;
  }
  return 1 + sum;
}

RankReport rank_report(std::uint32_t m, std::uint32_t p, std::uint32_t t, std::uint32_t r) {
  const auto start = std::chrono::steady_clock::now();
  RankReport rep;
  rep.m = m;
  rep.p = p;
  rep.t = t;
  rep.r = r;
  rep.formula_rank = rank_point_flat(m, p, t, r);
  rep.formula_method = r == m ? "signed-ideal-sum" : "unsigned-ideal-sum";
  rep.needs_oracle_confirmation = r > m;
  rep.formula_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

BigMatrix build_D_matrix(std::uint32_t m, std::uint32_t p) {
  check_odd(p);
  if (m < 2) throw Error(ErrorKind::RangeError, "m must be at least 2");
  const DimensionTable table(m, p);
  BigMatrix D(m, std::vector<BigInt>(m));
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      D[i - 1][j - 1] = table.at_or_zero(static_cast<std::int64_t>(p) * j - i);
    }
  }
  D[m - 1][m - 1] = table.plus_minus().first;
  return D;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), w = b.empty() ? 0 : b[0].size();
  BigMatrix c(n, std::vector<BigInt>(w, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw Error(ErrorKind::DimensionMismatch, "matrix shapes do not compose");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < w; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

BigInt trace(const BigMatrix& a) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i][i];
  return s;
}

BigInt determinant(const BigMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = BigRational(a[i][j]);
  }
  BigRational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const BigRational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return boost::multiprecision::numerator(det);
}

std::vector<BigInt> trace_powers(const BigMatrix& D, std::uint32_t t_max) {
  std::vector<BigInt> out;
  BigMatrix power = D;
  for (std::uint32_t t = 1; t <= t_max; ++t) {
    if (t > 1) power = multiply(power, D);
    out.push_back(trace(power));
  }
  return out;
}

BigInt rank_trace_formula(std::uint32_t m, std::uint32_t p, std::uint32_t t) {
  if (t < 1) throw Error(ErrorKind::RangeError, "t must be positive");
  return 1 + trace_powers(build_D_matrix(m, p), t).back();
}

BigRational w3_power_sum(const BigRational& A, const BigRational& B, std::uint32_t t) {
  const BigRational T = 2 * A;
  const BigRational N = A * A - 17 * B * B;
  BigRational prev = 2, cur = T;
  if (t == 0) return prev;
  for (std::uint32_t k = 2; k <= t; ++k) {
    BigRational next = T * cur - N * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::pair<BigRational, BigRational> w3_roots(std::uint32_t p) {
  const BigInt P = p;
  return {BigRational(P * (P + 1) * (P + 1), 4), BigRational(P * (P + 1) * (P - 1), 12)};
}

BigInt rank_W3_closed_form(std::uint32_t p, std::uint32_t t) {
  check_odd(p);
  if (t < 1) throw Error(ErrorKind::RangeError, "t must be positive");
  const auto [A, B] = w3_roots(p);
  const BigRational sum = w3_power_sum(A, B, t);
  if (boost::multiprecision::denominator(sum) != 1) {
    throw Error(ErrorKind::NonIntegralSolution, "power sum is not an integer");
  }
  return 1 + boost::multiprecision::numerator(sum);
}

BigInt rank_W3_char2(std::uint32_t t) {
  if (t < 1) throw Error(ErrorKind::RangeError, "t must be positive");
  BigInt prev = 2, cur = 1;
  for (std::uint32_t n = 2; n <= 2 * t; ++n) {
    BigInt next = cur + 4 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  const auto [A, B] = w3_roots(2);
  if (w3_power_sum(A, B, t) != BigRational(cur)) {
    throw std::logic_error("characteristic-2 routes disagree");
  }
  return 1 + cur;
}

std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace polar

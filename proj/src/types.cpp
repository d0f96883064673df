#include "polar/types.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "polar/field.hpp"

namespace polar {

std::uint64_t TypeContext::q() const { return checked_pow(p, t); }

std::vector<std::uint32_t> TypeContext::digits(std::uint64_t d) const {
  std::vector<std::uint32_t> out(t);
  for (std::uint32_t j = 0; j < t; ++j) {
    out[j] = static_cast<std::uint32_t>(d % p);
    d /= p;
  }
  return out;
}

TypeContext make_context(std::uint32_t m, std::uint32_t p, std::uint32_t t) {
  if (m < 2) throw Error(ErrorKind::RangeError, "m must be at least 2");
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (t < 1 || t > 32) throw Error(ErrorKind::RangeError, "t must be in [1, 32]");
  TypeContext ctx{m, p, t};
  (void)ctx.q();
  return ctx;
}

std::vector<std::vector<std::uint32_t>> MonomialExponents::digits(const TypeContext& ctx) const {
  std::vector<std::vector<std::uint32_t>> a;
  a.reserve(b.size());
  for (auto e : b) {
    std::vector<std::uint32_t> row(ctx.t);
    for (std::uint32_t j = 0; j < ctx.t; ++j) {
      row[j] = static_cast<std::uint32_t>(e % ctx.p);
      e /= ctx.p;
    }
    a.push_back(std::move(row));
  }
  return a;
}

LambdaType type_of(const TypeContext& ctx, const MonomialExponents& f) {
  const std::uint64_t q = ctx.q();
  if (f.b.size() != 2 * ctx.m) throw Error(ErrorKind::DimensionMismatch, "monomial needs 2m exponents");
  LambdaType out;
  out.lambda.assign(ctx.t, 0);
  std::uint64_t total = 0;
  for (auto e : f.b) {
    if (e > q - 1) throw Error(ErrorKind::RangeError, "exponent exceeds q-1");
    total += e;
    for (std::uint32_t j = 0; j < ctx.t; ++j) {
      out.lambda[j] += static_cast<std::uint32_t>(e % ctx.p);
      e /= ctx.p;
    }
  }
  out.d = q > 2 ? total % (q - 1) : 0;
  return out;
}

HType h_type_from_lambda(const TypeContext& ctx, const LambdaType& lambda) {
  if (lambda.lambda.size() != ctx.t) throw Error(ErrorKind::DimensionMismatch, "type has wrong length");
  const auto d = ctx.digits(lambda.d);
  const std::int64_t q1 = static_cast<std::int64_t>(ctx.q()) - 1;
  std::vector<std::int64_t> pw(ctx.t, 1);
  for (std::uint32_t k = 1; k < ctx.t; ++k) pw[k] = pw[k - 1] * ctx.p;
  HType out{std::vector<std::int64_t>(ctx.t), lambda.d};
  for (std::uint32_t i = 0; i < ctx.t; ++i) {
    std::int64_t acc = 0;
    for (std::uint32_t j = 0; j < ctx.t; ++j) {
      acc += (static_cast<std::int64_t>(lambda.lambda[j]) - d[j]) * pw[(j + ctx.t - i) % ctx.t];
    }
    if (q1 == 0 || acc % q1 != 0) throw Error(ErrorKind::NonIntegralSolution, "type does not determine an integral H-type");
    out.s[i] = acc / q1;
  }
  return out;
}

std::vector<std::int64_t> lambda_values(const TypeContext& ctx, const HType& s) {
  const auto d = ctx.digits(s.d);
  std::vector<std::int64_t> out(ctx.t);
  for (std::uint32_t j = 0; j < ctx.t; ++j) {
    out[j] = static_cast<std::int64_t>(ctx.p) * s.s[ctx.next(j)] - s.s[j] + d[j];
  }
  return out;
}

LambdaType lambda_from_h_type(const TypeContext& ctx, const HType& s) {
  if (s.s.size() != ctx.t) throw Error(ErrorKind::DimensionMismatch, "H-type has wrong length");
  LambdaType out;
  out.d = s.d;
  for (auto v : lambda_values(ctx, s)) {
    if (v < 0 || v > ctx.max_lambda()) throw Error(ErrorKind::RangeError, "digit sum out of range");
    out.lambda.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

namespace {

// Depth-first search over tuples with lo <= s_j <= hi_j whose digit sums stay in range.
std::vector<HType> search(const TypeContext& ctx, std::uint64_t d, std::int64_t lo, const std::vector<std::int64_t>& hi) {
  const auto dd = ctx.digits(d);
  const std::int64_t top = ctx.max_lambda();
  auto ok = [&](std::int64_t sj, std::int64_t snext, std::uint32_t j) {
    const std::int64_t v = static_cast<std::int64_t>(ctx.p) * snext - sj + dd[j];
    return v >= 0 && v <= top;
  };
  std::vector<HType> out;
  std::vector<std::int64_t> s(ctx.t);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t j) {
    if (j == ctx.t) {
      if (ok(s[ctx.t - 1], s[0], ctx.t - 1)) out.push_back({s, d});
      return;
    }
    for (std::int64_t v = lo; v <= hi[j]; ++v) {
      s[j] = v;
      if (j > 0 && !ok(s[j - 1], v, j - 1)) continue;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

void check_grading(const TypeContext& ctx, std::uint64_t d) {
  const std::uint64_t q = ctx.q();
  if (d != 0 && d >= q - 1) throw Error(ErrorKind::RangeError, "grading must lie in [0, q-2]");
}

bool is_constant(const HType& s, std::int64_t v) {
  return std::all_of(s.s.begin(), s.s.end(), [v](std::int64_t x) { return x == v; });
}

}  // namespace

std::vector<HType> enumerate_H(const TypeContext& ctx, std::uint64_t d) {
  check_grading(ctx, d);
  const std::int64_t hi = 2 * static_cast<std::int64_t>(ctx.m) - 1;
  return search(ctx, d, d == 0 ? 1 : 0, std::vector<std::int64_t>(ctx.t, hi));
}

std::vector<HType> enumerate_H0(const TypeContext& ctx) {
  auto out = enumerate_H(ctx, 0);
  out.push_back({std::vector<std::int64_t>(ctx.t, 0), 0});
  out.push_back({std::vector<std::int64_t>(ctx.t, 2 * static_cast<std::int64_t>(ctx.m)), 0});
  std::sort(out.begin(), out.end());
  return out;
}

bool in_H(const TypeContext& ctx, const HType& s) {
  if (s.s.size() != ctx.t) return false;
  const std::int64_t lo = s.d == 0 ? 1 : 0;
  const std::int64_t hi = 2 * static_cast<std::int64_t>(ctx.m) - 1;
  if (s.d != 0 && s.d >= ctx.q() - 1) return false;
  for (auto v : s.s) {
    if (v < lo || v > hi) return false;
  }
  for (auto v : lambda_values(ctx, s)) {
    if (v < 0 || v > ctx.max_lambda()) return false;
  }
  return true;
}

bool leq(const HType& a, const HType& b) {
  if (a.s.size() != b.s.size()) return false;
  for (std::size_t j = 0; j < a.s.size(); ++j) {
    if (a.s[j] > b.s[j]) return false;
  }
  return true;
}

DigitSet J(const TypeContext& ctx, const HType& s) {
  DigitSet out = 0;
  const auto lam = lambda_values(ctx, s);
  for (std::uint32_t j = 0; j < ctx.t; ++j) {
    if (lam[j] == ctx.middle()) out |= DigitSet{1} << j;
  }
  return out;
}

DigitSet Z(const TypeContext& ctx, const HType& a, const HType& b) {
  DigitSet out = 0;
  const auto lam = lambda_values(ctx, b);
  for (std::uint32_t j = 0; j < ctx.t; ++j) {
    const auto n = ctx.next(j);
    if (a.s[j] == b.s[j] && a.s[n] == b.s[n] && lam[j] == ctx.middle()) out |= DigitSet{1} << j;
  }
  return out;
}

std::vector<HType> ideal_below(const TypeContext& ctx, const HType& s) {
  if (s.s.size() != ctx.t) throw Error(ErrorKind::DimensionMismatch, "H-type has wrong length");
  check_grading(ctx, s.d);
  const std::int64_t top = 2 * static_cast<std::int64_t>(ctx.m);
  if (s.d == 0 && (is_constant(s, 0) || is_constant(s, top))) {
    std::vector<HType> out;
    for (auto& h : enumerate_H0(ctx)) {
      if (leq(h, s)) out.push_back(h);
    }
    return out;
  }
  if (!in_H(ctx, s)) throw Error(ErrorKind::RangeError, "not an H-type: " + label(s));
  return search(ctx, s.d, s.d == 0 ? 1 : 0, s.s);
}

std::vector<SignedHType> enumerate_S(const TypeContext& ctx, std::uint64_t d) {
  std::vector<SignedHType> out;
  for (auto& s : enumerate_H(ctx, d)) {
    const DigitSet j = J(ctx, s);
    // Walk all subsets of j.
    for (DigitSet e = j;; e = (e - 1) & j) {
      out.push_back({s, e});
      if (e == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool signed_leq(const TypeContext& ctx, const SignedHType& a, const SignedHType& b) {
  if (a.s.d != b.s.d || a.s.s.size() != b.s.s.size()) {
    throw Error(ErrorKind::ContextMismatch, "signed types from different gradings");
  }
  if (!leq(a.s, b.s)) return false;
  const DigitSet z = Z(ctx, a.s, b.s);
  return (a.eps & z) == (b.eps & z);
}

std::vector<SignedHType> signed_ideal_below(const TypeContext& ctx, const SignedHType& a) {
  if ((a.eps & ~J(ctx, a.s)) != 0) throw Error(ErrorKind::RangeError, "signature must lie in J(s)");
  std::vector<SignedHType> out;
  for (auto& s : ideal_below(ctx, a.s)) {
    const DigitSet z = Z(ctx, s, a.s);
    const DigitSet fixed = a.eps & z;
    const DigitSet free = J(ctx, s) & ~z;
    for (DigitSet e = free;; e = (e - 1) & free) {
      out.push_back({s, fixed | e});
      if (e == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string label(const HType& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < s.s.size(); ++j) os << (j ? "," : "") << s.s[j];
  os << ')';
  return os.str();
}

std::string label_digits(DigitSet eps, std::uint32_t t) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::uint32_t j = 0; j < t; ++j) {
    if (!(eps >> j & 1)) continue;
    os << (first ? "" : ",") << j;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string label(const SignedHType& a) {
  return "(" + label(a.s) + "," + label_digits(a.eps, static_cast<std::uint32_t>(a.s.s.size())) + ")";
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const TypeContext& ctx,
                                                             const std::vector<SignedHType>& elements) {
  const std::size_t n = elements.size();
  std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lt[i][j] = i != j && signed_leq(ctx, elements[i], elements[j]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!lt[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) covered = !(lt[i][k] && lt[k][j]);
      if (covered) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::string hasse_dot(const TypeContext& ctx, const std::vector<SignedHType>& elements) {
  std::ostringstream os;
  os << "digraph S {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < elements.size(); ++i) os << "  n" << i << " [label=\"" << label(elements[i]) << "\"];\n";
  for (auto [a, b] : hasse_edges(ctx, elements)) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace polar

/*
 * Copyright 2026 The hardymontel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Certifiers for the growth, Lipschitz, Cauchy-estimate, truncation and
// Abel-summation tail inequalities. Each returns a BoundReport comparing an
// exactly or numerically computed left side with the bound's right side.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

#include "hardymontel/compact_box.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/polytorus.hpp"
#include "hardymontel/series.hpp"

namespace hardy {

/// Relative tolerance absorbing rounding in every lhs <= rhs comparison.
inline constexpr double kBoundRelTol = 1e-12;

/// C with ||sum_{n<=x} a_n n^{-s}||_2 <= C log x ||sum a_n n^{-s}||_2 for all
/// x >= 2: truncation is contractive in H_2 and 1 <= log x / log 2.
inline const double kDefaultTruncationConstant = 1.0 / std::log(2.0);

enum class Verdict { holds, fails, marginal, data_only };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::marginal: return "marginal";
    case Verdict::data_only: return "data_only";
  }
  return "unknown";
}

/// Inputs that produced a report; fields not used by a certifier stay empty.
struct BoundContext {
  std::optional<double> p;
  std::optional<double> M;
  std::optional<double> C;
  std::optional<double> eps;
  std::optional<double> l;
  std::optional<double> r;
  std::optional<double> s;
  std::optional<double> x;
  std::optional<double> lambda_B;
  std::optional<double> C_observed;
  std::optional<double> tail_sum_lower;
  std::optional<double> tail_sum_upper;
};

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs.
  double slack = 0.0;
  /// lhs <= rhs up to kBoundRelTol.
  bool holds = false;
  Verdict verdict = Verdict::fails;
  BoundContext context;
};

/// Builds a report; `certified == false` marks data-only comparisons whose
/// constant is not known to be valid.
inline BoundReport make_report(double lhs, double rhs, BoundContext context = {}, bool certified = true) {
  BoundReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.slack = rhs - lhs;
  const double tol = kBoundRelTol * std::abs(rhs);
  report.holds = lhs <= rhs + tol;
  if (!certified) {
    report.verdict = Verdict::data_only;
  } else if (std::abs(report.slack) < tol) {
    report.verdict = Verdict::marginal;
  } else {
    report.verdict = report.holds ? Verdict::holds : Verdict::fails;
  }
  report.context = context;
  return report;
}

/// |F(z)| <= exp(||z||_2^2 / (1 - ||z||_inf^2)) ||F||_{H_p}.
inline BoundReport pointwise_bound(const MonomialExpansion& f, HpIndex p, const PointInPolydisc& z,
                                   const NormEstimate& norm) {
  const double sup = z.sup_norm();
  if (!(sup < 1.0)) throw DomainError("pointwise_bound requires ||z||_inf < 1");
  const double l2 = z.l2_norm();
  const double growth = std::exp(l2 * l2 / (1.0 - sup * sup));
  BoundContext ctx;
  ctx.p = p.value();
  ctx.M = norm.value;
  return make_report(std::abs(evaluate(f, z)), growth * norm.value, ctx);
}

/// One variable: |f(z)| <= ||f||_{H_1} / (1 - |z|).
template <typename Fn>
  requires std::invocable<Fn&, Complex>
BoundReport disc_pointwise_bound(Fn&& f, double h1_norm, Complex z) {
  const double mod = std::abs(z);
  if (!(mod < 1.0)) throw DomainError("disc_pointwise_bound requires |z| < 1");
  if (!(h1_norm >= 0.0)) throw DomainError("disc_pointwise_bound requires a non-negative H_1 norm");
  BoundContext ctx;
  ctx.p = 1.0;
  ctx.M = h1_norm;
  return make_report(std::abs(f(z)), h1_norm / (1.0 - mod), ctx);
}

/// One variable, z1, z2 in the disc of radius s:
/// |f(z1) - f(z2)| <= |z1 - z2| s sup_{|w|=s}|f| / ((s - |z1|)(s - |z2|)).
template <typename Fn>
  requires std::invocable<Fn&, Complex>
BoundReport disc_two_point_bound(Fn&& f, double s, Complex z1, Complex z2, double sup_on_circle) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("disc_two_point_bound requires 0 < s < 1");
  if (!(std::abs(z1) < s && std::abs(z2) < s)) throw DomainError("disc_two_point_bound requires |z1|, |z2| < s");
  if (!(sup_on_circle >= 0.0)) throw DomainError("disc_two_point_bound requires sup_on_circle >= 0");
  const double rhs = std::abs(z1 - z2) * s * sup_on_circle / ((s - std::abs(z1)) * (s - std::abs(z2)));
  BoundContext ctx;
  ctx.s = s;
  ctx.M = sup_on_circle;
  return make_report(std::abs(f(z1) - f(z2)), rhs, ctx);
}

/// For 0 < s < r = box_distance(K), x in K and ||y - x||_2 <= s:
/// |F(x) - F(y)| <= ||x - y||_2 sup_B |F| / (r - s), where sup_on_B bounds |F|
/// on the open r-enlargement of K (every point within l2 distance r of K).
/// A bound over the s-enlargement alone is not enough: F = z^N with K = {0}
/// and s < 1/2 violates the inequality for large N.
inline BoundReport lipschitz_bound(const MonomialExpansion& f, const CompactBox& k, double s,
                                   const PointInPolydisc& x, const PointInPolydisc& y, double sup_on_B) {
  const double r = box_distance(k);
  if (!(s > 0.0)) throw DomainError("lipschitz_bound requires s > 0");
  if (!(s < r)) throw DomainError("lipschitz_bound requires s < r = " + std::to_string(r));
  if (!k.contains(x)) throw DomainError("lipschitz_bound requires x in K");
  const double dist = l2_distance(x, y);
  if (dist > s * (1.0 + kBoundRelTol)) throw DomainError("lipschitz_bound requires ||y - x||_2 <= s");
  if (!(sup_on_B >= 0.0)) throw DomainError("lipschitz_bound requires sup_on_B >= 0");
  BoundContext ctx;
  ctx.r = r;
  ctx.s = s;
  ctx.M = sup_on_B;
  ctx.lambda_B = enlarged_l2_bound(k);
  return make_report(std::abs(evaluate(f, x) - evaluate(f, y)), dist * sup_on_B / (r - s), ctx);
}

/// ||truncate(D, x)||_p / ||D||_p against C log x. Exact at p = 2; for other p
/// both norms come from hp_norm and the report is data only (C unknown).
inline BoundReport truncation_ratio(const DirichletPolynomial& d, double x, HpIndex p,
                                    double c = kDefaultTruncationConstant, const QuadratureConfig& cfg = {}) {
  if (!(x >= 2.0)) throw DomainError("truncation_ratio requires x >= 2");
  if (!(c > 0.0)) throw DomainError("truncation_ratio requires C > 0");
  double full = 0.0;
  double cut = 0.0;
  if (p.is_two()) {
    full = h2_norm_exact(d);
    cut = h2_norm_exact(truncate(d, x));
  } else {
    full = hp_norm(bohr_lift(d), p, cfg).value;
    cut = hp_norm(bohr_lift(truncate(d, x)), p, cfg).value;
  }
  if (!(full > 0.0)) throw DomainError("truncation_ratio requires a nonzero polynomial");
  const double ratio = cut / full;
  const double log_x = std::log(x);
  BoundContext ctx;
  ctx.p = p.value();
  ctx.C = c;
  ctx.x = x;
  ctx.C_observed = ratio / log_x;
  return make_report(ratio, c * log_x, ctx, p.is_two());
}

/// Bracket for sum_{n > l} log(n) / n^{1 + eps}.
///
/// The summand decreases for n >= 3, so the terms with n < 3 are summed
/// explicitly and the rest is compared with the integral from n0 = max(l+1, 3):
/// lower = explicit + I(n0), upper = explicit + f(n0) + I(n0), where
/// I(a) = a^{-eps} (log a / eps + 1 / eps^2).
struct TailSumBracket {
  double lower = 0.0;
  double upper = 0.0;
};

inline TailSumBracket log_tail_sum_bracket(std::uint64_t l, double eps) {
  if (!(eps > 0.0)) throw DomainError("log_tail_sum_bracket requires eps > 0");
  auto term = [eps](double n) { return std::log(n) * std::exp(-(1.0 + eps) * std::log(n)); };
  double explicit_part = 0.0;
  std::uint64_t n = l + 1;
  for (; n < 3; ++n) explicit_part += term(static_cast<double>(n));
  const double a = static_cast<double>(n);
  const double integral = std::exp(-eps * std::log(a)) * (std::log(a) / eps + 1.0 / (eps * eps));
  return {explicit_part + integral, explicit_part + term(a) + integral};
}

/// Tail of the translated series against the Abel-summation bound:
///   ||sum_{n > l} a_n n^{-eps} n^{-s}||_2 <= eps C M sum_{n > l} log(n) / n^{1 + eps}
/// with M = ||D||_2. The infinite sum is replaced by its lower bracket, so a
/// "holds" verdict does not depend on how the sum is approximated.
inline BoundReport abel_tail_bound(const DirichletPolynomial& d, double eps, std::uint64_t l,
                                   double c = kDefaultTruncationConstant) {
  if (!(eps > 0.0)) throw DomainError("abel_tail_bound requires eps > 0");
  if (!(c > 0.0)) throw DomainError("abel_tail_bound requires C > 0");
  if (l == 0) throw DomainError("abel_tail_bound requires l >= 1");
  const double m = h2_norm_exact(d);
  const auto bracket = log_tail_sum_bracket(l, eps);
  BoundContext ctx;
  ctx.p = 2.0;
  ctx.M = m;
  ctx.C = c;
  ctx.eps = eps;
  ctx.l = static_cast<double>(l);
  ctx.tail_sum_lower = bracket.lower;
  ctx.tail_sum_upper = bracket.upper;
  return make_report(tail_h2_norm(d, l, eps), eps * c * m * bracket.lower, ctx);
}

/// Smallest l >= 1 with eps C M (upper tail bracket at l) < eta, so the Abel
/// bound places every tail beyond l below eta for series of norm <= M.
inline std::uint64_t abel_threshold(double eps, double c, double m, double eta) {
  if (!(eps > 0.0 && c > 0.0 && m >= 0.0 && eta > 0.0)) throw DomainError("abel_threshold: invalid arguments");
  auto bound = [&](std::uint64_t l) { return eps * c * m * log_tail_sum_bracket(l, eps).upper; };
  if (bound(1) < eta) return 1;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t hi = 2;
  while (!(bound(hi) < eta)) {
    if (hi >= kLimit) throw ResourceError("abel_threshold: tail bound does not fall below eta before 2^62");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // bound(lo) >= eta
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (bound(mid) < eta ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace hardy

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

// Evaluation on the polydisc, H_p norms on the polytorus, the vertical-line
// mean of a Dirichlet polynomial and Cauchy-integral coefficient extraction.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numeric>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardymontel/bohr.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/numeric.hpp"
#include "hardymontel/series.hpp"

namespace hardy {

/// Finitely supported point z = (z_1, ..., z_m, 0, ...) with every |z_j| < 1.
class PointInPolydisc {
 public:
  PointInPolydisc() = default;

  explicit PointInPolydisc(std::vector<Complex> coords) : coords_(std::move(coords)) {
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      const double mod = std::abs(coords_[j]);
      if (!(mod < 1.0)) {
        throw DomainError("coordinate " + std::to_string(j + 1) + " has modulus " + std::to_string(mod) +
                          ", outside the open unit disc");
      }
    }
  }

  PointInPolydisc(std::initializer_list<Complex> coords) : PointInPolydisc(std::vector<Complex>(coords)) {}

  std::span<const Complex> coords() const noexcept { return coords_; }
  std::size_t dims() const noexcept { return coords_.size(); }

  /// z_j with 1-based j; zero beyond the stored support.
  Complex operator[](std::size_t j) const { return (j >= 1 && j <= coords_.size()) ? coords_[j - 1] : Complex{}; }

  double l2_norm() const {
    double s = 0.0;
    for (const auto& c : coords_) s += std::norm(c);
    return std::sqrt(s);
  }

  double sup_norm() const {
    double s = 0.0;
    for (const auto& c : coords_) s = std::max(s, std::abs(c));
    return s;
  }

  friend bool operator==(const PointInPolydisc&, const PointInPolydisc&) = default;

 private:
  std::vector<Complex> coords_;
};

/// ||x - y||_2 over the union of supports.
inline double l2_distance(const PointInPolydisc& x, const PointInPolydisc& y) {
  const std::size_t m = std::max(x.dims(), y.dims());
  double s = 0.0;
  for (std::size_t j = 1; j <= m; ++j) s += std::norm(x[j] - y[j]);
  return std::sqrt(s);
}

namespace detail {

inline Complex int_power(Complex base, std::uint32_t exponent) {
  Complex result{1.0, 0.0};
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

/// A monomial expansion re-indexed over its active variables, for evaluation
/// from per-variable power tables.
class CompiledExpansion {
 public:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exponent;
  };
  struct Term {
    std::vector<Factor> factors;
    Complex coefficient;
  };

  explicit CompiledExpansion(const MonomialExpansion& f) : CompiledExpansion(f, f.active_positions()) {}

  /// Compiles against a caller-chosen sorted position list that must include
  /// every active position of f (shared by the members of a family).
  CompiledExpansion(const MonomialExpansion& f, std::vector<std::uint32_t> positions)
      : positions_(std::move(positions)) {
    degree_ = 0;
    for (const auto& [alpha, c] : f.terms()) {
      Term term{{}, c};
      for (const auto& e : alpha.entries()) {
        const auto var = static_cast<std::uint32_t>(
            std::lower_bound(positions_.begin(), positions_.end(), e.position) - positions_.begin());
        term.factors.push_back({var, e.exponent});
        degree_ = std::max(degree_, e.exponent);
      }
      terms_.push_back(std::move(term));
    }
  }

  std::size_t vars() const noexcept { return positions_.size(); }
  std::uint32_t degree() const noexcept { return degree_; }
  std::span<const std::uint32_t> positions() const noexcept { return positions_; }

  /// powers[v][e] must hold w_v^e for e <= degree().
  template <typename PowerRows>
  Complex evaluate(const PowerRows& powers) const {
    Complex sum{};
    for (const auto& term : terms_) {
      Complex value = term.coefficient;
      for (const auto& f : term.factors) value *= powers[f.var][f.exponent];
      sum += value;
    }
    return sum;
  }

 private:
  std::vector<std::uint32_t> positions_;
  std::uint32_t degree_ = 0;
  std::vector<Term> terms_;
};

inline void fill_powers(Complex w, std::uint32_t degree, Complex* row) {
  row[0] = Complex{1.0, 0.0};
  for (std::uint32_t e = 1; e <= degree; ++e) row[e] = row[e - 1] * w;
}

inline Complex unit_root(std::size_t k, std::size_t n) {
  const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// sum_alpha c_alpha z^alpha with z_j = coords[j-1] and z_j = 0 beyond the span.
/// No modulus check: also used on the torus and on Kronecker-flow points.
inline Complex evaluate_at(const MonomialExpansion& f, std::span<const Complex> coords) {
  Complex sum{};
  for (const auto& [alpha, c] : f.terms()) {
    Complex value = c;
    for (const auto& e : alpha.entries()) {
      if (e.position > coords.size()) {
        value = Complex{};
        break;
      }
      value *= detail::int_power(coords[e.position - 1], e.exponent);
    }
    sum += value;
  }
  return sum;
}

inline Complex evaluate(const MonomialExpansion& f, const PointInPolydisc& z) {
  return evaluate_at(f, z.coords());
}

/// sum a_n n^{-it} = sum a_n exp(-i t ln n).
inline Complex evaluate_dirichlet_line(const DirichletPolynomial& d, double t) {
  Complex sum{};
  for (const auto& [n, a] : d.terms()) sum += a * std::polar(1.0, -t * std::log(static_cast<double>(n)));
  return sum;
}

/// Point z(t) with z_k = p_k^{-it} for k = 1..m, where bohr_lift(D) at z(t)
/// reproduces D on the line Re s = 0.
inline std::vector<Complex> kronecker_point(double t, std::size_t m) {
  std::vector<Complex> z;
  z.reserve(m);
  for (std::size_t k = 1; k <= m; ++k) z.push_back(std::polar(1.0, -t * std::log(static_cast<double>(nth_prime(k)))));
  return z;
}

enum class NormMethod { exact_parseval, tensor_grid, qmc, line_mean };

inline std::string_view to_string(NormMethod method) {
  switch (method) {
    case NormMethod::exact_parseval: return "exact_parseval";
    case NormMethod::tensor_grid: return "tensor_grid";
    case NormMethod::qmc: return "qmc";
    case NormMethod::line_mean: return "line_mean";
  }
  return "unknown";
}

struct NormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::exact_parseval;
  /// Grid-refinement delta (tensor_grid), standard error across shifts (qmc),
  /// max(quadrature delta, 1/R scale) (line_mean), 0 for exact_parseval.
  double error_proxy = 0.0;
  /// Nodes per circle for tensor_grid, lattice size for qmc.
  std::size_t grid_points = 0;
  /// Total integrand evaluations.
  std::size_t samples = 0;
  /// Half-width of the averaging window for line_mean.
  double window = 0.0;
};

struct QuadratureConfig {
  /// Initial nodes per circle; 0 picks the smallest grid that is exact for
  /// |F|^p when p is an even integer.
  std::size_t grid_points = 0;
  std::size_t max_grid_dims = 4;
  std::size_t max_total_points = std::size_t{1} << 22;
  double refine_tol = 1e-8;
  /// Rank-1 lattice size and number of random shifts.
  std::size_t qmc_points = 4093;
  std::size_t qmc_shifts = 16;
  std::uint64_t seed = 20260101;
  /// Integrate |F(r w)|^p; r = 1 realizes the sup over r for polynomials.
  double radius = 1.0;
  /// Forces the quadrature path at p = 2 (used to cross-check Parseval).
  bool force_quadrature = false;
};

namespace detail {

inline std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (total > cap / base) return cap + 1;
    total *= base;
  }
  return total;
}

/// Mean of |F(r w)|^p over the N^m product trapezoid grid.
inline double tensor_grid_mean(const CompiledExpansion& f, double p, double radius, std::size_t nodes) {
  const std::size_t m = f.vars();
  const std::uint32_t deg = f.degree();
  const std::size_t row = deg + 1;
  std::vector<Complex> node_powers(nodes * row);
  for (std::size_t k = 0; k < nodes; ++k) fill_powers(radius * unit_root(k, nodes), deg, &node_powers[k * row]);

  std::vector<std::size_t> idx(m, 0);
  std::vector<const Complex*> rows(m, node_powers.data());
  PairwiseAccumulator<double> acc;
  while (true) {
    acc.add(std::pow(std::abs(f.evaluate(rows)), p));
    std::size_t v = 0;
    for (; v < m; ++v) {
      if (++idx[v] < nodes) {
        rows[v] = &node_powers[idx[v] * row];
        break;
      }
      idx[v] = 0;
      rows[v] = node_powers.data();
    }
    if (v == m) break;
  }
  return acc.sum() / static_cast<double>(acc.count());
}

/// Korobov generating vector (1, a, a^2, ...) mod n minimising the P_2
/// figure of merit over a fixed, deterministic candidate set.
inline std::vector<std::uint64_t> korobov_vector(std::size_t n, std::size_t dims) {
  auto vector_for = [&](std::uint64_t a) {
    std::vector<std::uint64_t> z(dims);
    std::uint64_t power = 1;
    for (std::size_t j = 0; j < dims; ++j) {
      z[j] = power;
      power = power * a % n;
    }
    return z;
  };
  auto p2 = [&](const std::vector<std::uint64_t>& z) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double prod = 1.0;
      for (const auto zj : z) {
        const double x = static_cast<double>(k * zj % n) / static_cast<double>(n);
        prod *= 1.0 + 2.0 * M_PI * M_PI * (x * x - x + 1.0 / 6.0);
      }
      sum += prod;
    }
    return sum / static_cast<double>(n) - 1.0;
  };
  if (n <= 3 || dims <= 1) return vector_for(1);
  constexpr std::size_t kCandidates = 128;
  const std::size_t stride = std::max<std::size_t>(1, (n - 3) / kCandidates);
  std::uint64_t best_a = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t a = 2; a < n - 1; a += stride) {
    if (std::gcd(a, static_cast<std::uint64_t>(n)) != 1) continue;
    const double merit = p2(vector_for(a));
    if (merit < best) {
      best = merit;
      best_a = a;
    }
  }
  return vector_for(best_a);
}

}  // namespace detail

/// H_p norm (integral over T^m of |F(r w)|^p)^{1/p} with m = active_vars.
///
/// p = 2 uses Parseval. Otherwise a product trapezoid grid is used when
/// m <= cfg.max_grid_dims: the grid is refined until successive estimates agree
/// to cfg.refine_tol (relative) or the point cap is reached. Larger m use a
/// randomly shifted rank-1 lattice.
inline NormEstimate hp_norm(const MonomialExpansion& f, HpIndex p, const QuadratureConfig& cfg = {}) {
  if (cfg.qmc_points == 0 || cfg.qmc_shifts == 0) throw DomainError("hp_norm: zero QMC sample budget");
  if (cfg.max_total_points == 0) throw DomainError("hp_norm: zero grid budget");
  if (!(cfg.radius > 0.0 && cfg.radius <= 1.0)) throw DomainError("hp_norm: radius must lie in (0, 1]");
  const double r = cfg.radius;
  const double pv = p.value();

  if (p.is_two() && !cfg.force_quadrature) {
    MonomialExpansion scaled;
    for (const auto& [alpha, c] : f.terms()) scaled.set(alpha, c * std::pow(r, static_cast<double>(alpha.order())));
    return {h2_norm_exact(scaled), NormMethod::exact_parseval, 0.0, 0, 0, 0.0};
  }

  const detail::CompiledExpansion compiled(f);
  const std::size_t m = compiled.vars();
  if (f.empty()) return {0.0, NormMethod::tensor_grid, 0.0, 1, 0, 0.0};
  if (m == 0) return {std::abs(f.terms().begin()->second), NormMethod::tensor_grid, 0.0, 1, 1, 0.0};

  const std::size_t deg = compiled.degree();
  // |F|^p is a trigonometric polynomial of degree (p/2) deg per variable when
  // p is even; N nodes integrate frequencies |k| < N exactly.
  const auto half_p = static_cast<std::size_t>(std::ceil(pv / 2.0));
  std::size_t nodes = std::max<std::size_t>(cfg.grid_points, half_p * deg + 1);

  if (m <= cfg.max_grid_dims &&
      detail::checked_power(nodes, m, cfg.max_total_points) <= cfg.max_total_points) {
    double mean = detail::tensor_grid_mean(compiled, pv, r, nodes);
    double value = std::pow(mean, 1.0 / pv);
    std::size_t evaluations = detail::checked_power(nodes, m, SIZE_MAX);
    double delta = std::numeric_limits<double>::infinity();
    // N -> 2N + 1 rather than 2N: nested grids see identical values when |F|
    // is periodic in some angle (F a polynomial in z^k), which fakes convergence.
    while (detail::checked_power(2 * nodes + 1, m, cfg.max_total_points) <= cfg.max_total_points) {
      nodes = 2 * nodes + 1;
      const double finer_mean = detail::tensor_grid_mean(compiled, pv, r, nodes);
      const double finer = std::pow(finer_mean, 1.0 / pv);
      evaluations += detail::checked_power(nodes, m, SIZE_MAX);
      delta = std::abs(finer - value);
      value = finer;
      if (delta <= cfg.refine_tol * std::max(value, std::numeric_limits<double>::min())) break;
    }
    if (!std::isfinite(delta)) delta = value;  // no refinement possible under the cap
    return {value, NormMethod::tensor_grid, delta, nodes, evaluations, 0.0};
  }

  // Randomly shifted rank-1 lattice.
  const std::size_t n = cfg.qmc_points;
  const auto gen = detail::korobov_vector(n, m);
  SeededRng rng(cfg.seed);
  std::vector<Complex> powers(m * (deg + 1));
  std::vector<const Complex*> rows(m);
  for (std::size_t v = 0; v < m; ++v) rows[v] = &powers[v * (deg + 1)];
  std::vector<double> shift_means;
  std::vector<double> shift(m);
  for (std::size_t s = 0; s < cfg.qmc_shifts; ++s) {
    for (auto& x : shift) x = rng.uniform01();
    PairwiseAccumulator<double> acc;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t v = 0; v < m; ++v) {
        double x = static_cast<double>(k * gen[v] % n) / static_cast<double>(n) + shift[v];
        x -= std::floor(x);
        detail::fill_powers(r * std::polar(1.0, 2.0 * M_PI * x), static_cast<std::uint32_t>(deg),
                            &powers[v * (deg + 1)]);
      }
      acc.add(std::pow(std::abs(compiled.evaluate(rows)), pv));
    }
    shift_means.push_back(acc.sum() / static_cast<double>(n));
  }
  PairwiseAccumulator<double> total;
  for (const auto v : shift_means) total.add(v);
  const double mean = total.sum() / static_cast<double>(shift_means.size());
  double var = 0.0;
  for (const auto v : shift_means) var += (v - mean) * (v - mean);
  const double shifts = static_cast<double>(shift_means.size());
  const double stderr_mean = shifts > 1 ? std::sqrt(var / (shifts - 1.0) / shifts) : mean;
  const double value = std::pow(mean, 1.0 / pv);
  // Delta method: d(I^{1/p}) = I^{1/p - 1} dI / p.
  const double proxy = mean > 0.0 ? value / (pv * mean) * stderr_mean : 0.0;
  return {value, NormMethod::qmc, proxy, n, n * cfg.qmc_shifts, 0.0};
}

/// Trapezoid estimate of ((1/2R) integral_{-R}^{R} |sum a_n n^{-it}|^p dt)^{1/p}.
///
/// This is the finite-R quantity whose R -> infinity limit defines the
/// H^p norm; its bias decays like 1/R. error_proxy is the larger of the
/// difference against the half-resolution rule and sum|a_n| / R.
inline NormEstimate bayart_mean_norm(const DirichletPolynomial& d, HpIndex p, double window, std::size_t samples) {
  if (!(window > 0.0) || !std::isfinite(window)) throw DomainError("bayart_mean_norm requires R > 0");
  if (samples < 2) throw DomainError("bayart_mean_norm requires at least 2 samples");
  const double pv = p.value();
  const double step = 2.0 * window / static_cast<double>(samples - 1);

  std::vector<double> logs;
  std::vector<Complex> coeffs;
  double l1 = 0.0;
  for (const auto& [n, a] : d.terms()) {
    logs.push_back(std::log(static_cast<double>(n)));
    coeffs.push_back(a);
    l1 += std::abs(a);
  }
  auto integrand = [&](double t) {
    Complex sum{};
    for (std::size_t i = 0; i < logs.size(); ++i) sum += coeffs[i] * std::polar(1.0, -t * logs[i]);
    return std::pow(std::abs(sum), pv);
  };

  std::vector<double> values(samples);
  for (std::size_t i = 0; i < samples; ++i) values[i] = integrand(-window + step * static_cast<double>(i));

  auto trapezoid_mean = [&](std::size_t stride) {
    const std::size_t last = (samples - 1) / stride * stride;
    PairwiseAccumulator<double> acc;
    for (std::size_t i = 0; i <= last; i += stride) {
      const double w = (i == 0 || i == last) ? 0.5 : 1.0;
      acc.add(w * values[i]);
    }
    return acc.sum() / static_cast<double>(last / stride);
  };

  const double fine = std::pow(trapezoid_mean(1), 1.0 / pv);
  double delta = 0.0;
  if (samples >= 3) delta = std::abs(fine - std::pow(trapezoid_mean(2), 1.0 / pv));
  const double proxy = std::max(delta, l1 / window);
  return {fine, NormMethod::line_mean, proxy, 0, samples, window};
}

struct ExtractConfig {
  /// Nodes per circle N_g; 0 means degree_bound + 1. Must exceed degree_bound.
  std::size_t grid_points = 0;
  /// Contour radius r in (0, 1].
  double radius = 1.0;
  /// Coefficients with |c| <= drop_below are not stored.
  double drop_below = 0.0;
  std::size_t max_total_points = std::size_t{1} << 22;
};

/// Coefficients c_alpha, alpha in {0..degree_bound}^m, of a function of m
/// variables from its samples on the scaled grid r (w_1, ..., w_m, 0, ...):
///   c_alpha = N^{-m} r^{-|alpha|} sum_grid f(r w) w^{-alpha}.
/// Exact up to rounding for polynomials of per-variable degree < N at r = 1.
template <typename Fn>
  requires std::invocable<Fn&, std::span<const Complex>>
MonomialExpansion extract_coefficients(Fn&& f, std::size_t dims, std::size_t degree_bound,
                                       const ExtractConfig& cfg = {}) {
  const std::size_t nodes = cfg.grid_points == 0 ? degree_bound + 1 : cfg.grid_points;
  if (nodes <= degree_bound) {
    throw DomainError("extract_coefficients: grid of " + std::to_string(nodes) +
                      " nodes aliases degree " + std::to_string(degree_bound));
  }
  if (!(cfg.radius > 0.0 && cfg.radius <= 1.0)) throw DomainError("extract_coefficients: radius must lie in (0, 1]");
  const std::size_t total = detail::checked_power(nodes, dims, cfg.max_total_points);
  if (total > cfg.max_total_points) throw ResourceError("extract_coefficients: grid exceeds point cap");

  std::vector<Complex> roots(nodes);
  for (std::size_t k = 0; k < nodes; ++k) roots[k] = detail::unit_root(k, nodes);

  // Samples in row-major order with variable 1 fastest.
  std::vector<Complex> grid(total);
  std::vector<std::size_t> idx(dims, 0);
  std::vector<Complex> point(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t v = 0; v < dims; ++v) point[v] = cfg.radius * roots[idx[v]];
    grid[flat] = f(std::span<const Complex>(point));
    for (std::size_t v = 0; v < dims; ++v) {
      if (++idx[v] < nodes) break;
      idx[v] = 0;
    }
  }

  // Separable DFT, one axis at a time: X[e] = (1/N) sum_k x[k] w_k^{-e}.
  std::vector<Complex> line(nodes);
  std::size_t stride = 1;
  for (std::size_t v = 0; v < dims; ++v) {
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % nodes != 0) continue;
      for (std::size_t e = 0; e < nodes; ++e) {
        Complex acc{};
        for (std::size_t k = 0; k < nodes; ++k) acc += grid[base + k * stride] * std::conj(roots[(k * e) % nodes]);
        line[e] = acc / static_cast<double>(nodes);
      }
      for (std::size_t e = 0; e < nodes; ++e) grid[base + e * stride] = line[e];
    }
    stride *= nodes;
  }

  MonomialExpansion out;
  std::fill(idx.begin(), idx.end(), 0);
  std::vector<std::uint32_t> exps(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    bool in_range = true;
    std::size_t order = 0;
    for (std::size_t v = 0; v < dims; ++v) {
      in_range = in_range && idx[v] <= degree_bound;
      exps[v] = static_cast<std::uint32_t>(idx[v]);
      order += idx[v];
    }
    if (in_range) {
      const Complex c = grid[flat] / std::pow(cfg.radius, static_cast<double>(order));
      if (std::abs(c) > cfg.drop_below) out.set(MultiIndex::from_dense(std::span<const std::uint32_t>(exps)), c);
    }
    for (std::size_t v = 0; v < dims; ++v) {
      if (++idx[v] < nodes) break;
      idx[v] = 0;
    }
  }
  return out;
}

/// Adapts a monomial expansion to the black-box interface of extract_coefficients.
inline auto evaluator(const MonomialExpansion& f) {
  return [&f](std::span<const Complex> z) { return evaluate_at(f, z); };
}

}  // namespace hardy

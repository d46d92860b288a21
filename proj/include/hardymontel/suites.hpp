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

// Seeded randomized instances for every bound certifier.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "hardymontel/bounds.hpp"
#include "hardymontel/compact_box.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/generators.hpp"
#include "hardymontel/numeric.hpp"
#include "hardymontel/polytorus.hpp"
#include "hardymontel/series.hpp"

namespace hardy {

inline constexpr std::string_view kBoundSuites[] = {"pointwise", "disc", "two-point", "lipschitz", "truncation",
                                                    "abel"};

struct SuiteRow {
  std::string suite;
  std::size_t instance = 0;
  BoundReport report;
};

struct SuiteConfig {
  std::size_t count = 100;
  std::uint64_t seed = 20260101;
  QuadratureConfig quadrature;
  double truncation_constant = kDefaultTruncationConstant;
};

/// Upper bound for max_{|w| = radius} |f(w)| with f a polynomial in z_1, from
/// `nodes` equispaced samples. Bernstein's inequality moves the sampled
/// maximum by at most pi deg / nodes of the true one.
inline double circle_sup_bound(const MonomialExpansion& f, double radius, std::size_t nodes = 4096) {
  if (f.max_position() > 1) throw DomainError("circle_sup_bound expects a polynomial in z_1 only");
  const double deg = static_cast<double>(f.max_degree());
  const double slack = std::numbers::pi * deg / static_cast<double>(nodes);
  if (!(slack < 1.0)) throw DomainError("circle_sup_bound needs more nodes than pi * degree");
  double best = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    const Complex w = radius * detail::unit_root(k, nodes);
    best = std::max(best, std::abs(evaluate_at(f, std::span<const Complex>(&w, 1))));
  }
  return best / (1.0 - slack);
}

/// Sum of |c_alpha|; bounds |F| on the closed unit polydisc.
inline double coefficient_l1(const MonomialExpansion& f) {
  PairwiseAccumulator<double> acc;
  for (const auto& [alpha, c] : f.terms()) acc.add(std::abs(c));
  return acc.sum();
}

namespace detail {

inline BoundReport pointwise_instance(SeededRng& rng, const SuiteConfig& cfg) {
  const auto dims = static_cast<std::size_t>(rng.uniform_int(1, 3));
  const auto f = random_expansion(rng, dims, 3, 6);
  const double p = rng.uniform01() < 0.5 ? 2.0 : 1.0;
  const auto z = random_polydisc_point(rng, dims, 0.95);
  return pointwise_bound(f, HpIndex(p), z, hp_norm(f, HpIndex(p), cfg.quadrature));
}

inline BoundReport disc_instance(SeededRng& rng, const SuiteConfig& cfg) {
  const auto f = random_expansion(rng, 1, 4, 5);
  const double h1 = hp_norm(f, HpIndex(1.0), cfg.quadrature).value;
  const Complex z = std::polar(0.99 * std::sqrt(rng.uniform01()), 2.0 * std::numbers::pi * rng.uniform01());
  return disc_pointwise_bound([&](Complex w) { return evaluate_at(f, std::span<const Complex>(&w, 1)); }, h1, z);
}

inline BoundReport two_point_instance(SeededRng& rng, const SuiteConfig&) {
  const auto f = random_expansion(rng, 1, 4, 5);
  const double s = rng.uniform(0.1, 0.95);
  auto inside = [&] { return std::polar(s * 0.98 * std::sqrt(rng.uniform01()), 2.0 * std::numbers::pi * rng.uniform01()); };
  const Complex z1 = inside();
  const Complex z2 = inside();
  return disc_two_point_bound([&](Complex w) { return evaluate_at(f, std::span<const Complex>(&w, 1)); }, s, z1, z2,
                              circle_sup_bound(f, s));
}

inline BoundReport lipschitz_instance(SeededRng& rng, const SuiteConfig&) {
  const auto dims = static_cast<std::size_t>(rng.uniform_int(1, 3));
  const auto f = random_expansion(rng, dims, 3, 6);
  std::vector<double> radii(dims);
  for (auto& rho : radii) rho = rng.uniform(0.0, 0.7);
  const CompactBox k(radii);
  const double r = box_distance(k);
  const double s = r * rng.uniform(0.05, 0.95);
  const auto x = random_point_in(k, rng);
  const auto xc = x.coords();
  std::vector<Complex> y(xc.begin(), xc.end());
  std::vector<Complex> dir(dims);
  double norm = 0.0;
  for (auto& c : dir) {
    const double re = rng.gaussian();
    c = {re, rng.gaussian()};
    norm += std::norm(c);
  }
  const double step = s * rng.uniform01() / std::sqrt(norm);
  for (std::size_t j = 0; j < dims; ++j) y[j] += step * dir[j];
  return lipschitz_bound(f, k, s, x, PointInPolydisc(std::move(y)), coefficient_l1(f));
}

inline BoundReport truncation_instance(SeededRng& rng, const SuiteConfig& cfg) {
  const auto terms = static_cast<std::size_t>(rng.uniform_int(1, 10));
  const auto d = random_dirichlet(rng, terms, 100);
  const double x = rng.uniform(2.0, 105.0);
  return truncation_ratio(d, x, HpIndex(2.0), cfg.truncation_constant, cfg.quadrature);
}

inline BoundReport abel_instance(SeededRng& rng, const SuiteConfig& cfg) {
  const auto terms = static_cast<std::size_t>(rng.uniform_int(1, 10));
  const auto d = random_dirichlet(rng, terms, 100);
  constexpr double kEps[] = {0.25, 0.5, 1.0};
  const double eps = kEps[rng.uniform_int(0, 2)];
  const auto l = rng.uniform_int(1, 40);
  return abel_tail_bound(d, eps, l, cfg.truncation_constant);
}

}  // namespace detail

/// Runs `cfg.count` instances of one suite. Each suite draws from its own
/// stream derived from the seed, so suites are reproducible independently.
inline std::vector<SuiteRow> run_bound_suite(std::string_view name, const SuiteConfig& cfg) {
  std::uint64_t tag = 0;
  for (const char ch : name) tag = tag * 131 + static_cast<unsigned char>(ch);
  SeededRng rng(cfg.seed ^ (tag * 0x9E3779B97F4A7C15ULL));
  BoundReport (*make)(SeededRng&, const SuiteConfig&) = nullptr;
  if (name == "pointwise") make = detail::pointwise_instance;
  else if (name == "disc") make = detail::disc_instance;
  else if (name == "two-point") make = detail::two_point_instance;
  else if (name == "lipschitz") make = detail::lipschitz_instance;
  else if (name == "truncation") make = detail::truncation_instance;
  else if (name == "abel") make = detail::abel_instance;
  else throw DomainError("unknown bound suite '" + std::string(name) + "'");
  std::vector<SuiteRow> rows;
  rows.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) rows.push_back({std::string(name), i, make(rng, cfg)});
  return rows;
}

inline std::vector<SuiteRow> run_all_bound_suites(const SuiteConfig& cfg) {
  std::vector<SuiteRow> rows;
  for (const auto name : kBoundSuites) {
    auto part = run_bound_suite(name, cfg);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace hardy

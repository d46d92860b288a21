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

// Seeded random Dirichlet polynomials, monomial expansions and points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hardymontel/bohr.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/numeric.hpp"
#include "hardymontel/polytorus.hpp"
#include "hardymontel/series.hpp"

namespace hardy {

enum class CoefficientLaw {
  uniform_disc,  // uniform on |a| <= 1
  gaussian,      // standard complex normal, unit variance per component
  unit_circle,   // uniform on |a| = 1
};

inline CoefficientLaw parse_coefficient_law(std::string_view name) {
  if (name == "uniform-disc") return CoefficientLaw::uniform_disc;
  if (name == "gaussian") return CoefficientLaw::gaussian;
  if (name == "unit-circle") return CoefficientLaw::unit_circle;
  throw DomainError("unknown coefficient law '" + std::string(name) + "'");
}

/// Nonzero draw from the law.
inline Complex draw_coefficient(SeededRng& rng, CoefficientLaw law) {
  while (true) {
    Complex a;
    switch (law) {
      case CoefficientLaw::uniform_disc:
        a = std::polar(std::sqrt(rng.uniform01()), 2.0 * M_PI * rng.uniform01());
        break;
      case CoefficientLaw::gaussian: {
        const double re = rng.gaussian();
        a = {re, rng.gaussian()};
        break;
      }
      case CoefficientLaw::unit_circle:
        a = std::polar(1.0, 2.0 * M_PI * rng.uniform01());
        break;
    }
    if (a != Complex{}) return a;
  }
}

/// `terms` distinct indices from 1..max_n (Floyd's sampling), coefficients from `law`.
inline DirichletPolynomial random_dirichlet(SeededRng& rng, std::size_t terms, std::uint64_t max_n,
                                            CoefficientLaw law = CoefficientLaw::gaussian) {
  if (terms == 0 || max_n == 0) throw DomainError("random_dirichlet needs terms >= 1 and max_n >= 1");
  if (terms > max_n) throw DomainError("random_dirichlet: more terms than indices available");
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = max_n - terms + 1; j <= max_n; ++j) {
    const std::uint64_t t = rng.uniform_int(1, j);
    chosen.insert(chosen.count(t) ? j : t);
  }
  DirichletPolynomial d;
  for (const auto n : chosen) d.set(n, draw_coefficient(rng, law));
  return d;
}

/// Random Dirichlet polynomial whose indices use only the first `max_primes` primes.
inline DirichletPolynomial random_smooth_dirichlet(SeededRng& rng, std::size_t max_terms, std::uint64_t max_n,
                                                   std::size_t max_primes,
                                                   CoefficientLaw law = CoefficientLaw::gaussian) {
  std::vector<std::uint64_t> admissible;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    if (factorize_to_index(n).max_position() <= max_primes) admissible.push_back(n);
  }
  const std::size_t terms = static_cast<std::size_t>(rng.uniform_int(1, std::min(max_terms, admissible.size())));
  std::vector<std::uint64_t> pool = admissible;
  DirichletPolynomial d;
  for (std::size_t k = 0; k < terms; ++k) {
    const auto pick = static_cast<std::size_t>(rng.uniform_int(k, pool.size() - 1));
    std::swap(pool[k], pool[pick]);
    d.set(pool[k], draw_coefficient(rng, law));
  }
  return d;
}

/// Random expansion in variables 1..dims with per-variable degree <= degree
/// and up to max_terms nonzero terms.
inline MonomialExpansion random_expansion(SeededRng& rng, std::size_t dims, std::uint32_t degree,
                                          std::size_t max_terms, CoefficientLaw law = CoefficientLaw::gaussian) {
  MonomialExpansion f;
  const std::size_t terms = static_cast<std::size_t>(rng.uniform_int(1, max_terms));
  std::vector<std::uint32_t> exps(dims);
  for (std::size_t k = 0; k < terms; ++k) {
    for (auto& e : exps) e = static_cast<std::uint32_t>(rng.uniform_int(0, degree));
    f.set(MultiIndex::from_dense(std::span<const std::uint32_t>(exps)), draw_coefficient(rng, law));
  }
  return f;
}

/// Point with `dims` coordinates, each uniform in the disc of radius max_modulus < 1.
inline PointInPolydisc random_polydisc_point(SeededRng& rng, std::size_t dims, double max_modulus) {
  std::vector<Complex> z(dims);
  for (auto& c : z) c = std::polar(max_modulus * std::sqrt(rng.uniform01()), 2.0 * M_PI * rng.uniform01());
  return PointInPolydisc(std::move(z));
}

}  // namespace hardy

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

// Dirichlet polynomials sum a_n n^{-s}, monomial expansions sum c_alpha z^alpha,
// and the Bohr lift a_n = c_alpha for n = p^alpha between them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hardymontel/bohr.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/numeric.hpp"

namespace hardy {

using Complex = std::complex<double>;

/// Exponent p of a Hardy space, restricted to 1 <= p < infinity.
class HpIndex {
 public:
  explicit HpIndex(double p) : p_(p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw DomainError("Hardy exponent must satisfy 1 <= p < inf, got " + std::to_string(p));
    }
  }

  double value() const noexcept { return p_; }
  bool is_two() const noexcept { return p_ == 2.0; }

 private:
  double p_;
};

namespace detail {

template <typename Key, typename Map>
void insert_nonzero(Map& terms, const Key& key, Complex value) {
  if (value == Complex{}) {
    terms.erase(key);
  } else {
    terms.insert_or_assign(key, value);
  }
}

template <typename Map>
double coefficient_l2(const Map& terms) {
  // Scale by the largest modulus so huge or tiny coefficients neither
  // overflow nor underflow when squared.
  double scale = 0.0;
  for (const auto& [key, value] : terms) scale = std::max(scale, std::abs(value));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  PairwiseAccumulator<double> acc;
  for (const auto& [key, value] : terms) acc.add(std::norm(value / scale));
  return scale * std::sqrt(acc.sum());
}

}  // namespace detail

/// Finite Dirichlet series n -> a_n. Zero coefficients are never stored.
class DirichletPolynomial {
 public:
  using Terms = std::map<std::uint64_t, Complex>;

  DirichletPolynomial() = default;

  DirichletPolynomial(std::initializer_list<std::pair<const std::uint64_t, Complex>> terms) {
    for (const auto& [n, a] : terms) {
      if (terms_.count(n)) throw DomainError("duplicate Dirichlet index " + std::to_string(n));
      set(n, a);
    }
  }

  explicit DirichletPolynomial(const Terms& terms) {
    for (const auto& [n, a] : terms) set(n, a);
  }

  /// Sets a_n (erasing it when a is zero). n must be >= 1.
  void set(std::uint64_t n, Complex a) {
    if (n == 0) throw DomainError("Dirichlet indices start at n = 1");
    detail::insert_nonzero(terms_, n, a);
  }

  Complex coefficient(std::uint64_t n) const {
    const auto it = terms_.find(n);
    return it == terms_.end() ? Complex{} : it->second;
  }

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// N = max n with a_n != 0; 0 when empty.
  std::uint64_t support_bound() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  friend DirichletPolynomial operator+(DirichletPolynomial a, const DirichletPolynomial& b) {
    for (const auto& [n, v] : b.terms_) a.set(n, a.coefficient(n) + v);
    return a;
  }

  friend DirichletPolynomial operator-(DirichletPolynomial a, const DirichletPolynomial& b) {
    for (const auto& [n, v] : b.terms_) a.set(n, a.coefficient(n) - v);
    return a;
  }

  friend bool operator==(const DirichletPolynomial&, const DirichletPolynomial&) = default;

 private:
  Terms terms_;
};

/// Finite power series alpha -> c_alpha on the polydisc. Zero coefficients are
/// never stored; terms iterate in graded-lex order.
class MonomialExpansion {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  MonomialExpansion() = default;

  MonomialExpansion(std::initializer_list<std::pair<const MultiIndex, Complex>> terms) {
    for (const auto& [alpha, c] : terms) {
      if (terms_.count(alpha)) throw DomainError("duplicate multi-index " + alpha.to_string());
      set(alpha, c);
    }
  }

  explicit MonomialExpansion(const Terms& terms) {
    for (const auto& [alpha, c] : terms) set(alpha, c);
  }

  void set(const MultiIndex& alpha, Complex c) { detail::insert_nonzero(terms_, alpha, c); }

  Complex coefficient(const MultiIndex& alpha) const {
    const auto it = terms_.find(alpha);
    return it == terms_.end() ? Complex{} : it->second;
  }

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Sorted positions carrying a nonzero exponent in some term.
  std::vector<std::uint32_t> active_positions() const {
    std::vector<std::uint32_t> out;
    for (const auto& [alpha, c] : terms_) {
      for (const auto& e : alpha.entries()) out.push_back(e.position);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Number of variables with some nonzero exponent.
  std::size_t active_vars() const { return active_positions().size(); }

  /// Largest single-variable exponent over all terms.
  std::uint32_t max_degree() const noexcept {
    std::uint32_t best = 0;
    for (const auto& [alpha, c] : terms_) best = std::max(best, alpha.max_exponent());
    return best;
  }

  std::uint32_t max_position() const noexcept {
    std::uint32_t best = 0;
    for (const auto& [alpha, c] : terms_) best = std::max(best, alpha.max_position());
    return best;
  }

  friend MonomialExpansion operator+(MonomialExpansion a, const MonomialExpansion& b) {
    for (const auto& [alpha, v] : b.terms_) a.set(alpha, a.coefficient(alpha) + v);
    return a;
  }

  friend MonomialExpansion operator-(MonomialExpansion a, const MonomialExpansion& b) {
    for (const auto& [alpha, v] : b.terms_) a.set(alpha, a.coefficient(alpha) - v);
    return a;
  }

  friend bool operator==(const MonomialExpansion&, const MonomialExpansion&) = default;

 private:
  Terms terms_;
};

/// c_{alpha(n)} = a_n for every term.
inline MonomialExpansion bohr_lift(const DirichletPolynomial& d) {
  MonomialExpansion out;
  for (const auto& [n, a] : d.terms()) out.set(factorize_to_index(n), a);
  return out;
}

/// Inverse of bohr_lift; throws OverflowError when some p^alpha exceeds 64 bits.
inline DirichletPolynomial bohr_drop(const MonomialExpansion& f) {
  DirichletPolynomial out;
  for (const auto& [alpha, c] : f.terms()) out.set(index_to_integer(alpha), c);
  return out;
}

/// n^{-eps} = exp(-eps ln n).
inline double translation_weight(std::uint64_t n, double eps) {
  return std::exp(-eps * std::log(static_cast<double>(n)));
}

/// Vertical shift s -> s + eps: a_n -> a_n n^{-eps}.
inline DirichletPolynomial translate(const DirichletPolynomial& d, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("translation requires eps >= 0, got " + std::to_string(eps));
  }
  if (eps == 0.0) return d;
  DirichletPolynomial out;
  for (const auto& [n, a] : d.terms()) out.set(n, a * translation_weight(n, eps));
  return out;
}

/// Keeps the terms with n <= x; x >= 1.
inline DirichletPolynomial truncate(const DirichletPolynomial& d, double x) {
  if (!(x >= 1.0)) throw DomainError("truncation requires x >= 1, got " + std::to_string(x));
  DirichletPolynomial out;
  for (const auto& [n, a] : d.terms()) {
    if (static_cast<double>(n) <= x) out.set(n, a);
  }
  return out;
}

/// H_2 norm via Parseval: (sum |a_n|^2)^{1/2}.
inline double h2_norm_exact(const DirichletPolynomial& d) { return detail::coefficient_l2(d.terms()); }

/// Parseval norm of a monomial expansion on the polytorus.
inline double h2_norm_exact(const MonomialExpansion& f) { return detail::coefficient_l2(f.terms()); }

/// Exact H_2 norm of translate(d, eps) minus its truncation at l:
/// (sum_{n > l} |a_n|^2 n^{-2 eps})^{1/2}.
inline double tail_h2_norm(const DirichletPolynomial& d, std::uint64_t l, double eps) {
  if (l == 0) throw DomainError("tail_h2_norm requires l >= 1");
  if (!(eps >= 0.0)) throw DomainError("tail_h2_norm requires eps >= 0");
  DirichletPolynomial tail;
  for (auto it = d.terms().upper_bound(l); it != d.terms().end(); ++it) tail.set(it->first, it->second);
  return h2_norm_exact(translate(tail, eps));
}

}  // namespace hardy

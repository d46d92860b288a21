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

// Primes, finite-support multi-indices and the bijection n <-> alpha with
// n = 2^alpha_1 * 3^alpha_2 * 5^alpha_3 * ... that underlies the Bohr lift.

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "hardymontel/errors.hpp"

namespace hardy {

namespace detail {

/// Process-wide table of primes, grown on demand by a segmented sieve of
/// Eratosthenes. Reads take a shared lock; growth takes the exclusive lock.
class PrimeTable {
 public:
  /// Largest integer the sieve will ever cover.
  static constexpr std::uint64_t kMaxLimit = 1'000'000'000ULL;

  static PrimeTable& instance() {
    static PrimeTable table;
    return table;
  }

  /// k-th prime, 1-based (nth(1) == 2).
  std::uint64_t nth(std::size_t k) {
    if (k == 0) throw DomainError("prime positions are 1-based");
    {
      std::shared_lock lock(mutex_);
      if (k <= primes_.size()) return primes_[k - 1];
    }
    std::unique_lock lock(mutex_);
    while (primes_.size() < k) {
      // p_k < k (ln k + ln ln k) for k >= 6.
      const double kd = static_cast<double>(std::max<std::size_t>(k, 6));
      const auto estimate = static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 16;
      extend_locked(std::max(estimate, limit_ * 2));
    }
    return primes_[k - 1];
  }

  /// 1-based position of p in the prime sequence, or 0 if p is not prime.
  std::size_t position_of(std::uint64_t p) {
    ensure_limit(p);
    std::shared_lock lock(mutex_);
    const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return 0;
    return static_cast<std::size_t>(it - primes_.begin()) + 1;
  }

 private:
  PrimeTable() { extend_locked(1024); }

  void ensure_limit(std::uint64_t bound) {
    {
      std::shared_lock lock(mutex_);
      if (bound <= limit_) return;
    }
    std::unique_lock lock(mutex_);
    if (bound > limit_) extend_locked(std::max(bound, std::min(limit_ * 2, kMaxLimit)));
  }

  void extend_locked(std::uint64_t new_limit) {
    if (new_limit <= limit_) return;
    if (new_limit > kMaxLimit) {
      throw ResourceError("prime sieve limit " + std::to_string(new_limit) + " exceeds cap " +
                          std::to_string(kMaxLimit));
    }
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(new_limit)));
    while (root * root > new_limit) --root;
    while ((root + 1) * (root + 1) <= new_limit) ++root;
    if (root > limit_) extend_locked(root);

    constexpr std::uint64_t kSegment = 1 << 20;
    std::vector<char> composite;
    for (std::uint64_t lo = limit_ + 1; lo <= new_limit; lo += kSegment) {
      const std::uint64_t hi = std::min(new_limit, lo + kSegment - 1);
      composite.assign(hi - lo + 1, 0);
      for (const auto base : primes_) {
        const std::uint64_t p = base;
        if (p * p > hi) break;
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
      }
      for (std::uint64_t v = std::max<std::uint64_t>(lo, 2); v <= hi; ++v) {
        if (!composite[v - lo]) primes_.push_back(static_cast<std::uint32_t>(v));
      }
    }
    limit_ = new_limit;
  }

  std::shared_mutex mutex_;
  std::vector<std::uint32_t> primes_;
  std::uint64_t limit_ = 1;
};

}  // namespace detail

/// k-th prime with 1-based k: nth_prime(1) == 2, nth_prime(3) == 5.
inline std::uint64_t nth_prime(std::size_t k) { return detail::PrimeTable::instance().nth(k); }

/// 1-based position of a prime; throws DomainError if p is not prime.
inline std::size_t prime_position(std::uint64_t p) {
  const auto pos = detail::PrimeTable::instance().position_of(p);
  if (pos == 0) throw DomainError(std::to_string(p) + " is not prime");
  return pos;
}

/// The first m primes, 2, 3, 5, ...
class PrimeBasis {
 public:
  explicit PrimeBasis(std::size_t m) {
    primes_.reserve(m);
    for (std::size_t k = 1; k <= m; ++k) primes_.push_back(nth_prime(k));
  }

  std::size_t size() const noexcept { return primes_.size(); }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }

 private:
  std::vector<std::uint64_t> primes_;
};

/// Finite-support exponent vector alpha = (alpha_1, alpha_2, ...), stored
/// sparsely as (position, exponent) pairs with 1-based positions, strictly
/// increasing positions and no zero exponents.
///
/// Ordering is graded lexicographic: lower total order first; within one
/// order, the index with the larger exponent at the first differing position
/// comes first, so z1 < z2 < ... and z1^2 < z1 z2 < z2^2.
class MultiIndex {
 public:
  struct Entry {
    std::uint32_t position;
    std::uint32_t exponent;
    bool operator==(const Entry&) const = default;
  };

  MultiIndex() = default;

  /// Dense exponents (alpha_1, alpha_2, ...); zeros are dropped.
  MultiIndex(std::initializer_list<std::uint32_t> dense) : MultiIndex(from_dense(dense)) {}

  static MultiIndex from_dense(std::span<const std::uint32_t> dense) {
    MultiIndex index;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0) index.entries_.push_back({static_cast<std::uint32_t>(i + 1), dense[i]});
    }
    return index;
  }

  static MultiIndex from_dense(std::initializer_list<std::uint32_t> dense) {
    return from_dense(std::span<const std::uint32_t>(dense.begin(), dense.size()));
  }

  /// Validates sparse storage: positions >= 1 and strictly increasing, exponents >= 1.
  static MultiIndex from_entries(std::vector<Entry> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].position == 0) throw DomainError("multi-index positions are 1-based");
      if (entries[i].exponent == 0) throw DomainError("multi-index exponents must be >= 1 in sparse form");
      if (i > 0 && entries[i].position <= entries[i - 1].position) {
        throw DomainError("multi-index positions must be strictly increasing");
      }
    }
    MultiIndex index;
    index.entries_ = std::move(entries);
    return index;
  }

  std::span<const Entry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  std::uint32_t exponent(std::uint32_t position) const noexcept {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                                     [](const Entry& e, std::uint32_t pos) { return e.position < pos; });
    return (it != entries_.end() && it->position == position) ? it->exponent : 0;
  }

  /// |alpha| = sum of exponents.
  std::uint64_t order() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += e.exponent;
    return total;
  }

  /// Highest position with a nonzero exponent, 0 for the empty index.
  std::uint32_t max_position() const noexcept { return entries_.empty() ? 0 : entries_.back().position; }

  std::uint32_t max_exponent() const noexcept {
    std::uint32_t best = 0;
    for (const auto& e : entries_) best = std::max(best, e.exponent);
    return best;
  }

  std::vector<std::uint32_t> dense() const {
    std::vector<std::uint32_t> out(max_position(), 0);
    for (const auto& e : entries_) out[e.position - 1] = e.exponent;
    return out;
  }

  /// Componentwise sum; the index of a product of monomials.
  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries_.size() || j < b.entries_.size()) {
      if (j == b.entries_.size() || (i < a.entries_.size() && a.entries_[i].position < b.entries_[j].position)) {
        out.entries_.push_back(a.entries_[i++]);
      } else if (i == a.entries_.size() || b.entries_[j].position < a.entries_[i].position) {
        out.entries_.push_back(b.entries_[j++]);
      } else {
        out.entries_.push_back({a.entries_[i].position, a.entries_[i].exponent + b.entries_[j].exponent});
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (const auto by_order = a.order() <=> b.order(); by_order != 0) return by_order;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.entries_.size() && j < b.entries_.size()) {
      const auto& ea = a.entries_[i];
      const auto& eb = b.entries_[j];
      if (ea.position != eb.position) {
        // The earlier position carries a positive exponent on one side only.
        return ea.position < eb.position ? std::strong_ordering::less : std::strong_ordering::greater;
      }
      if (ea.exponent != eb.exponent) {
        return ea.exponent > eb.exponent ? std::strong_ordering::less : std::strong_ordering::greater;
      }
      ++i;
      ++j;
    }
    if (i < a.entries_.size()) return std::strong_ordering::less;
    if (j < b.entries_.size()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "(2,1)" style rendering of the dense exponents; "()" when empty.
  std::string to_string() const {
    std::string out = "(";
    const auto d = dense();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(d[i]);
    }
    return out + ")";
  }

 private:
  std::vector<Entry> entries_;
};

/// Exponent vector alpha of n = p^alpha. Rejects n <= 0.
template <std::integral Int>
MultiIndex factorize_to_index(Int n) {
  if constexpr (std::is_signed_v<Int>) {
    if (n <= 0) throw DomainError("factorize_to_index requires n >= 1, got " + std::to_string(n));
  } else {
    if (n == 0) throw DomainError("factorize_to_index requires n >= 1, got 0");
  }
  auto rest = static_cast<std::uint64_t>(n);
  std::vector<MultiIndex::Entry> entries;
  auto& table = detail::PrimeTable::instance();
  for (std::uint32_t position = 1;; ++position) {
    const std::uint64_t p = table.nth(position);
    if (p * p > rest) break;
    if (rest % p == 0) {
      std::uint32_t e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      entries.push_back({position, e});
    }
  }
  if (rest > 1) {
    entries.push_back({static_cast<std::uint32_t>(prime_position(rest)), 1});
  }
  return MultiIndex::from_entries(std::move(entries));
}

/// p^alpha as a 64-bit integer; throws OverflowError instead of wrapping.
inline std::uint64_t index_to_integer(const MultiIndex& alpha) {
  std::uint64_t result = 1;
  for (const auto& e : alpha.entries()) {
    const std::uint64_t p = nth_prime(e.position);
    for (std::uint32_t k = 0; k < e.exponent; ++k) {
      if (__builtin_mul_overflow(result, p, &result)) {
        throw OverflowError("p^alpha overflows 64 bits for alpha = " + alpha.to_string());
      }
    }
  }
  return result;
}

/// factorize_to_index(n) for n = 1..max_n, in integer order.
inline std::vector<MultiIndex> enumerate_indices(std::uint64_t max_n) {
  if (max_n == 0) throw DomainError("enumerate_indices requires max_n >= 1");
  std::vector<MultiIndex> out;
  out.reserve(max_n);
  for (std::uint64_t n = 1; n <= max_n; ++n) out.push_back(factorize_to_index(n));
  return out;
}

}  // namespace hardy

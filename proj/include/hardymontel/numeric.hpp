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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace hardy {

/// Streaming pairwise summation.
///
/// Values are combined in a fixed binary tree (like a binary counter), so the
/// result depends only on the order of `add` calls, and the rounding error
/// grows as O(log n) instead of O(n).
template <typename T>
class PairwiseAccumulator {
 public:
  void add(T value) {
    std::size_t level = 0;
    for (; level < levels_.size() && occupied_[level]; ++level) {
      value = levels_[level] + value;
      levels_[level] = T{};
      occupied_[level] = false;
    }
    if (level == levels_.size()) {
      levels_.push_back(T{});
      occupied_.push_back(false);
    }
    levels_[level] = value;
    occupied_[level] = true;
    ++count_;
  }

  T sum() const {
    T total{};
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      if (occupied_[level]) total = levels_[level] + total;
    }
    return total;
  }

  std::size_t count() const noexcept { return count_; }

 private:
  std::vector<T> levels_;
  std::vector<bool> occupied_;
  std::size_t count_ = 0;
};

/// Seeded random source with platform-independent output.
///
/// std::mt19937_64 is fully specified by the standard; the distributions in
/// <random> are not, so the conversions to real numbers are done here.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi]; rejection sampling keeps it unbiased.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + draw % range;
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform01();
    } while (u1 == 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hardy

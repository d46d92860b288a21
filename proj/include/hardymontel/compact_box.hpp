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

// Finitely supported closed polydiscs K = {|z_j| <= rho_j, j <= m} x {0} in
// l2 and finite eps-nets covering them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hardymontel/errors.hpp"
#include "hardymontel/polytorus.hpp"

namespace hardy {

class CompactBox {
 public:
  CompactBox() = default;

  explicit CompactBox(std::vector<double> radii) : radii_(std::move(radii)) {
    for (std::size_t j = 0; j < radii_.size(); ++j) {
      if (!(radii_[j] >= 0.0 && radii_[j] < 1.0)) {
        throw DomainError("box radius " + std::to_string(j + 1) + " must lie in [0, 1), got " +
                          std::to_string(radii_[j]));
      }
    }
  }

  CompactBox(std::initializer_list<double> radii) : CompactBox(std::vector<double>(radii)) {}

  std::span<const double> radii() const noexcept { return radii_; }
  std::size_t dims() const noexcept { return radii_.size(); }

  double max_radius() const noexcept {
    double best = 0.0;
    for (const auto r : radii_) best = std::max(best, r);
    return best;
  }

  /// ||rho||_2, the largest l2 norm of a point of K.
  double l2_radius() const noexcept {
    double s = 0.0;
    for (const auto r : radii_) s += r * r;
    return std::sqrt(s);
  }

  bool contains(const PointInPolydisc& z) const noexcept {
    for (std::size_t j = 1; j <= z.dims(); ++j) {
      const double mod = std::abs(z[j]);
      if (j > radii_.size() ? mod != 0.0 : mod > radii_[j - 1]) return false;
    }
    return true;
  }

 private:
  std::vector<double> radii_;
};

/// r = dist(l2 minus (l2 cap D^N), K) = 1 - max rho_j; every z in K then has
/// ||z||_inf <= 1 - r. The empty box {0} has r = 1.
inline double box_distance(const CompactBox& k) { return 1.0 - k.max_radius(); }

/// lambda_B: an l2 bound on B, the union of the balls B(z, r/2) over z in K.
inline double enlarged_l2_bound(const CompactBox& k) {
  const double half = box_distance(k) / 2.0;
  if (k.dims() == 0) return half;
  double s = 0.0;
  for (const auto rho : k.radii()) s += (rho + half) * (rho + half);
  return std::sqrt(s);
}

/// Finite eps-net of a CompactBox.
///
/// Each coordinate disc gets the square grid of spacing h = eps / sqrt(2m)
/// (real and imaginary parts). Nodes farther than h / sqrt(2) from the disc
/// are dropped and the rest are projected radially onto it, so every point of
/// the disc is within h / sqrt(2) of a node and every point of K is within
/// eps / 2 of a center. Centers are the Cartesian product of the per-coordinate
/// node sets and are generated on demand.
class EpsNet {
 public:
  static constexpr std::size_t kDefaultCap = 50'000'000;

  EpsNet(const CompactBox& parent, double eps, std::size_t cap = kDefaultCap) : parent_(parent), eps_(eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps-net radius must be positive");
    const std::size_t m = parent.dims();
    if (m == 0 || eps >= parent.l2_radius()) {
      axes_.assign(m, Axis{});
      size_ = 1;
      return;
    }
    spacing_ = eps / std::sqrt(2.0 * static_cast<double>(m));
    size_ = 1;
    for (const auto rho : parent.radii()) {
      axes_.push_back(make_axis(rho, spacing_));
      const std::size_t count = axes_.back().count;
      if (size_ > cap / count) {
        throw ResourceError("eps-net for eps = " + std::to_string(eps) + " exceeds the cap of " +
                            std::to_string(cap) + " centers");
      }
      size_ *= count;
    }
  }

  double radius() const noexcept { return eps_; }
  double spacing() const noexcept { return spacing_; }
  const CompactBox& parent() const noexcept { return parent_; }
  std::size_t size() const noexcept { return size_; }

  /// i-th center, first coordinate varying fastest.
  PointInPolydisc center(std::size_t i) const {
    std::vector<Complex> coords(axes_.size());
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      coords[j] = axes_[j].node(i % axes_[j].count);
      i /= axes_[j].count;
    }
    return PointInPolydisc(std::move(coords));
  }

  /// Calls visit(span of coordinates) for every center in index order.
  template <typename Visitor>
  void for_each_center(Visitor&& visit) const {
    const std::size_t m = axes_.size();
    std::vector<std::size_t> idx(m, 0);
    std::vector<Complex> coords(m);
    for (std::size_t j = 0; j < m; ++j) coords[j] = axes_[j].node(0);
    for (std::size_t n = 0; n < size_; ++n) {
      visit(std::span<const Complex>(coords));
      for (std::size_t j = 0; j < m; ++j) {
        if (++idx[j] < axes_[j].count) {
          coords[j] = axes_[j].node(idx[j]);
          break;
        }
        idx[j] = 0;
        coords[j] = axes_[j].node(0);
      }
    }
  }

 private:
  // Grid nodes (kx h, ky h) of one coordinate, stored as runs of ky per kx.
  struct Axis {
    struct Run {
      std::int64_t kx;
      std::int64_t ky_lo;
      std::size_t first;  // flat index of (kx, ky_lo)
    };
    double rho = 0.0;
    double h = 0.0;
    std::vector<Run> runs;
    std::size_t count = 1;

    Complex node(std::size_t i) const {
      if (runs.empty()) return {};
      const auto it = std::upper_bound(runs.begin(), runs.end(), i,
                                       [](std::size_t v, const Run& r) { return v < r.first; }) - 1;
      const auto ky = it->ky_lo + static_cast<std::int64_t>(i - it->first);
      const Complex g{static_cast<double>(it->kx) * h, static_cast<double>(ky) * h};
      if (std::abs(g) <= rho) return g;
      // Radial projection, nudged inward until rounding keeps it in the disc.
      double target = rho;
      Complex projected = std::polar(target, std::arg(g));
      while (std::abs(projected) > rho) {
        target = std::nextafter(target, 0.0);
        projected = std::polar(target, std::arg(g));
      }
      return projected;
    }
  };

  static Axis make_axis(double rho, double h) {
    Axis axis;
    axis.rho = rho;
    axis.h = h;
    if (rho == 0.0) return axis;
    const double reach = rho + h / std::sqrt(2.0);
    const auto kmax = static_cast<std::int64_t>(std::ceil(reach / h));
    std::size_t count = 0;
    for (std::int64_t kx = -kmax; kx <= kmax; ++kx) {
      const double x = static_cast<double>(kx) * h;
      if (std::abs(x) > reach) continue;
      const double y_max = std::sqrt(std::max(0.0, reach * reach - x * x));
      const auto ky_hi = static_cast<std::int64_t>(std::floor(y_max / h));
      axis.runs.push_back({kx, -ky_hi, count});
      count += static_cast<std::size_t>(2 * ky_hi + 1);
    }
    axis.count = count;
    return axis;
  }

  CompactBox parent_;
  double eps_;
  double spacing_ = 0.0;
  std::vector<Axis> axes_;
  std::size_t size_ = 1;
};

inline EpsNet build_eps_net(const CompactBox& k, double eps, std::size_t cap = EpsNet::kDefaultCap) {
  return EpsNet(k, eps, cap);
}

/// Uniform random point of K (uniform in each coordinate disc).
inline PointInPolydisc random_point_in(const CompactBox& k, SeededRng& rng) {
  std::vector<Complex> coords;
  coords.reserve(k.dims());
  for (const auto rho : k.radii()) {
    const double radius = rho * std::sqrt(rng.uniform01());
    Complex z = std::polar(radius, 2.0 * M_PI * rng.uniform01());
    if (std::abs(z) > rho) z *= std::nextafter(1.0, 0.0);
    coords.push_back(z);
  }
  return PointInPolydisc(std::move(coords));
}

}  // namespace hardy

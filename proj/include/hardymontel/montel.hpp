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

// Desk-scale Montel extraction: dense point enumeration, diagonal subsequence
// selection by pigeonhole clustering, uniform Cauchy certification on compact
// boxes, the limit-norm check, and translated-norm convergence for families
// of Dirichlet polynomials.
//
// The theorems behind these tools quantify over infinite sequences. Here a
// family is finite, so every routine reports what it achieved (cluster
// diameters, Cauchy moduli, norm bounds) instead of asserting a limit exists.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hardymontel/bounds.hpp"
#include "hardymontel/compact_box.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/numeric.hpp"
#include "hardymontel/polytorus.hpp"
#include "hardymontel/series.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Dense points

/// Deterministic enumeration of the dyadic points of the polydisc in `dims`
/// coordinates.
///
/// Level L holds the points whose coordinates are (kx + i ky) / 2^L with
/// kx^2 + ky^2 < 4^L. Levels are visited in order; within a level, tuples are
/// ranked in mixed radix (coordinate 1 fastest) over the per-coordinate values
/// sorted by (kx^2 + ky^2, kx, ky), and tuples already present at level L-1
/// are skipped. The first point is 0 and the union over levels is dense.
class DenseEnumerator {
 public:
  explicit DenseEnumerator(std::size_t dims) : dims_(dims) {
    if (dims == 0) throw DomainError("dense enumeration needs at least one coordinate");
  }

  PointInPolydisc next() {
    while (true) {
      if (level_ == 0 && rank_ == 0) {
        ++rank_;
        advance_level_if_done();
        return PointInPolydisc(std::vector<Complex>(dims_));
      }
      const auto& values = level_values(level_);
      std::size_t r = rank_++;
      bool fresh = false;
      std::vector<Complex> coords(dims_);
      const double scale = std::ldexp(1.0, -static_cast<int>(level_));
      for (std::size_t j = 0; j < dims_; ++j) {
        const auto [kx, ky] = values[r % values.size()];
        r /= values.size();
        fresh = fresh || (kx % 2 != 0) || (ky % 2 != 0);
        coords[j] = {static_cast<double>(kx) * scale, static_cast<double>(ky) * scale};
      }
      advance_level_if_done();
      if (fresh) return PointInPolydisc(std::move(coords));
    }
  }

 private:
  void advance_level_if_done() {
    if (rank_ >= level_size(level_)) {
      ++level_;
      rank_ = 0;
    }
  }

  std::size_t level_size(std::size_t level) {
    if (level == 0) return 1;
    const std::size_t base = level_values(level).size();
    std::size_t total = 1;
    for (std::size_t j = 0; j < dims_; ++j) {
      if (total > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
      total *= base;
    }
    return total;
  }

  const std::vector<std::pair<std::int64_t, std::int64_t>>& level_values(std::size_t level) {
    while (cache_.size() <= level) {
      const std::size_t l = cache_.size();
      if (l > 24) throw ResourceError("dense enumeration exhausted its level range");
      const std::int64_t bound = std::int64_t{1} << l;
      std::vector<std::pair<std::int64_t, std::int64_t>> values;
      for (std::int64_t kx = -bound + 1; kx < bound; ++kx) {
        for (std::int64_t ky = -bound + 1; ky < bound; ++ky) {
          if (kx * kx + ky * ky < bound * bound) values.emplace_back(kx, ky);
        }
      }
      std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
        const auto ma = a.first * a.first + a.second * a.second;
        const auto mb = b.first * b.first + b.second * b.second;
        return ma != mb ? ma < mb : a < b;
      });
      cache_.push_back(std::move(values));
    }
    return cache_[level];
  }

  std::size_t dims_;
  std::size_t level_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> cache_;
};

/// The first `count` points of DenseEnumerator(dims).
inline std::vector<PointInPolydisc> dense_enumerate(std::size_t count, std::size_t dims) {
  if (count == 0) throw DomainError("dense_enumerate requires count >= 1");
  DenseEnumerator gen(dims);
  std::vector<PointInPolydisc> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(gen.next());
  return out;
}

/// The first `count` enumerated points that lie in K (enumeration in K.dims() coordinates).
inline std::vector<PointInPolydisc> dense_enumerate_in(const CompactBox& k, std::size_t count) {
  if (count == 0) throw DomainError("dense_enumerate_in requires count >= 1");
  DenseEnumerator gen(std::max<std::size_t>(k.dims(), 1));
  std::vector<PointInPolydisc> out;
  out.reserve(count);
  while (out.size() < count) {
    auto z = gen.next();
    if (k.contains(z)) out.push_back(std::move(z));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Families

/// A finite family of functions on the polydisc that can be evaluated in bulk:
/// out[i] = f_{members[i]}(z), with z_j = 0 beyond z.size().
template <typename F>
concept PointFamily = requires(const F& family, std::span<const Complex> z, std::span<const std::size_t> members,
                               std::span<Complex> out) {
  { family.size() } -> std::convertible_to<std::size_t>;
  family.evaluate(z, members, out);
};

/// Family of arbitrary callables.
class CallableFamily {
 public:
  using Function = std::function<Complex(std::span<const Complex>)>;

  explicit CallableFamily(std::vector<Function> functions) : functions_(std::move(functions)) {}

  std::size_t size() const noexcept { return functions_.size(); }

  void evaluate(std::span<const Complex> z, std::span<const std::size_t> members, std::span<Complex> out) const {
    for (std::size_t i = 0; i < members.size(); ++i) out[i] = functions_[members[i]](z);
  }

 private:
  std::vector<Function> functions_;
};

/// Family of monomial expansions sharing one power table per point.
class ExpansionFamily {
 public:
  explicit ExpansionFamily(std::vector<MonomialExpansion> members) : members_(std::move(members)) {
    for (const auto& f : members_) {
      const auto pos = f.active_positions();
      positions_.insert(positions_.end(), pos.begin(), pos.end());
      degree_ = std::max(degree_, f.max_degree());
    }
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    for (const auto& f : members_) compiled_.emplace_back(f, positions_);
  }

  std::size_t size() const noexcept { return members_.size(); }
  const MonomialExpansion& member(std::size_t i) const { return members_[i]; }
  const std::vector<MonomialExpansion>& members() const noexcept { return members_; }

  void evaluate(std::span<const Complex> z, std::span<const std::size_t> members, std::span<Complex> out) const {
    thread_local std::vector<Complex> powers;
    thread_local std::vector<const Complex*> rows;
    const std::size_t row = degree_ + 1;
    powers.resize(positions_.size() * row);
    rows.resize(positions_.size());
    for (std::size_t v = 0; v < positions_.size(); ++v) {
      const std::size_t pos = positions_[v];
      const Complex w = pos <= z.size() ? z[pos - 1] : Complex{};
      detail::fill_powers(w, degree_, &powers[v * row]);
      rows[v] = &powers[v * row];
    }
    for (std::size_t i = 0; i < members.size(); ++i) out[i] = compiled_[members[i]].evaluate(rows);
  }

 private:
  std::vector<MonomialExpansion> members_;
  std::vector<std::uint32_t> positions_;
  std::uint32_t degree_ = 0;
  std::vector<detail::CompiledExpansion> compiled_;
};

// ---------------------------------------------------------------------------
// Reports

/// Tolerances 1, 1/2, 1/3, ... (the 1/k schedule of the diagonal procedure).
inline std::vector<double> harmonic_schedule(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = 1.0 / static_cast<double>(k + 1);
  return out;
}

/// Tolerances first * ratio^k.
inline std::vector<double> geometric_schedule(std::size_t count, double first, double ratio) {
  if (!(first > 0.0 && ratio > 0.0 && ratio <= 1.0)) throw DomainError("geometric schedule needs first > 0, 0 < ratio <= 1");
  std::vector<double> out(count);
  double t = first;
  for (auto& v : out) {
    v = t;
    t *= ratio;
  }
  return out;
}

/// One refinement stage: which point (or Dirichlet index) was used, the
/// tolerance, the diameter of the chosen cluster and its mean value.
struct StageCertificate {
  std::size_t stage = 0;
  /// Dense point index (diagonal_extract) or Dirichlet index n (dirichlet_montel).
  std::uint64_t point = 0;
  double tolerance = 0.0;
  double diameter = 0.0;
  Complex representative{};
  std::size_t survivors = 0;
};

struct ExtractionReport {
  /// Strictly increasing indices into the input family.
  std::vector<std::size_t> selected_indices;
  std::vector<StageCertificate> stages;
  /// False when some stage found no cluster of two or more members; the
  /// selection is then the longest chain achieved.
  bool complete = true;
  /// Members whose mutual distances were audited (the later half of the selection).
  std::vector<std::size_t> audited_indices;
  /// Achieved Cauchy modulus: max pairwise sup-difference on K (diagonal
  /// extraction) or max pairwise translated H_2 distance (Dirichlet families).
  double cauchy_modulus = 0.0;
  double cauchy_target = 0.0;
  bool certified = false;
  std::variant<std::monostate, MonomialExpansion, DirichletPolynomial> limit;
  /// M: sup of the family norms.
  double family_bound = 0.0;
  double limit_norm = 0.0;
  /// M + 1/2.
  double limit_norm_bound = 0.0;
  /// Dirichlet families only: truncation point l0 and per-coefficient gap.
  std::optional<std::uint64_t> truncation_index;
  std::optional<double> gap_tolerance;
};

namespace detail {

struct Cluster {
  std::vector<std::size_t> members;  // positions into the value list
  double diameter = 0.0;
  Complex mean{};
};

inline double diameter_of(std::span<const Complex> values) {
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) best = std::max(best, std::abs(values[i] - values[j]));
  }
  return best;
}

/// Largest bucket of `values` on square grids of the given side, trying the
/// grid and its three half-side shifts (so any group of diameter < side / 2
/// falls in one bucket). Ties go to the earlier shift, then the lowest bucket
/// coordinates. Every bucket has diameter <= side * sqrt(2).
inline Cluster pigeonhole_cluster(std::span<const Complex> values, double side) {
  constexpr double kShifts[4][2] = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}};
  auto cell = [side](double v, double shift) {
    const double c = std::floor(v / side - shift);
    constexpr double kLimit = 9.0e18;
    return static_cast<std::int64_t>(std::clamp(c, -kLimit, kLimit));
  };
  std::vector<std::size_t> best;
  for (const auto& shift : kShifts) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < values.size(); ++i) {
      buckets[{cell(values[i].real(), shift[0]), cell(values[i].imag(), shift[1])}].push_back(i);
    }
    for (auto& [key, members] : buckets) {
      if (members.size() > best.size()) best = std::move(members);
    }
  }
  Cluster cluster;
  cluster.members = std::move(best);
  std::vector<Complex> chosen;
  for (const auto i : cluster.members) chosen.push_back(values[i]);
  cluster.diameter = diameter_of(chosen);
  Complex sum{};
  for (const auto& v : chosen) sum += v;
  if (!chosen.empty()) cluster.mean = sum / static_cast<double>(chosen.size());
  return cluster;
}

inline double min_gap(std::span<const Complex> values) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) best = std::min(best, std::abs(values[i] - values[j]));
  }
  return std::isfinite(best) ? best : 0.0;
}

/// The later half of a selection, midpoint included: the last floor(n/2)+1 entries.
inline std::vector<std::size_t> tail_half(std::span<const std::size_t> indices) {
  if (indices.empty()) return {};
  const std::size_t start = (indices.size() - 1) / 2;
  return {indices.begin() + static_cast<std::ptrdiff_t>(start), indices.end()};
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename Key, typename Series>
std::map<Key, Complex> coefficientwise_median(const std::vector<const Series*>& members) {
  std::map<Key, Complex> out;
  std::vector<Key> keys;
  for (const auto* s : members) {
    for (const auto& [key, value] : s->terms()) keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& key : keys) {
    std::vector<double> re;
    std::vector<double> im;
    for (const auto* s : members) {
      const Complex c = s->coefficient(key);
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    out.emplace(key, Complex{median(re), median(im)});
  }
  return out;
}

}  // namespace detail

/// Coefficient-wise median of the given members: the desk-scale stand-in for
/// the limit c_alpha = lim c_alpha(f_{n_k}). A coefficient carried by only a
/// minority of the members (as for z^N) has median 0.
inline MonomialExpansion median_limit(const std::vector<MonomialExpansion>& family, std::span<const std::size_t> indices) {
  std::vector<const MonomialExpansion*> members;
  for (const auto i : indices) members.push_back(&family.at(i));
  return MonomialExpansion(detail::coefficientwise_median<MultiIndex>(members));
}

inline DirichletPolynomial median_limit(const std::vector<DirichletPolynomial>& family,
                                        std::span<const std::size_t> indices) {
  std::vector<const DirichletPolynomial*> members;
  for (const auto i : indices) members.push_back(&family.at(i));
  return DirichletPolynomial(detail::coefficientwise_median<std::uint64_t>(members));
}

// ---------------------------------------------------------------------------
// Diagonal extraction

/// Diagonal procedure at desk scale. Stage j evaluates the surviving members
/// at dense_points[j] and keeps the largest pigeonhole cluster of values on a
/// grid of side schedule[j] (diameter <= 2 schedule[j]). Stops early, with
/// complete = false, if no cluster of two or more members exists. Runs
/// min(dense_points.size(), schedule.size()) stages.
template <PointFamily Family>
ExtractionReport diagonal_extract(const Family& family, std::span<const PointInPolydisc> dense_points,
                                  std::span<const double> schedule) {
  if (family.size() == 0) throw DomainError("diagonal_extract: empty family");
  if (dense_points.empty()) throw DomainError("diagonal_extract: no dense points");
  ExtractionReport report;
  std::vector<std::size_t> survivors(family.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;

  const std::size_t stages = std::min(dense_points.size(), schedule.size());
  std::vector<Complex> values;
  for (std::size_t j = 0; j < stages; ++j) {
    if (!(schedule[j] > 0.0)) throw DomainError("diagonal_extract: schedule entries must be positive");
    values.resize(survivors.size());
    family.evaluate(dense_points[j].coords(), survivors, values);
    StageCertificate stage{j, j, schedule[j], 0.0, {}, survivors.size()};
    if (survivors.size() == 1) {
      stage.representative = values[0];
      report.stages.push_back(stage);
      continue;
    }
    const auto cluster = detail::pigeonhole_cluster(values, schedule[j]);
    if (cluster.members.size() < 2) {
      stage.diameter = detail::min_gap(values);
      stage.survivors = 0;
      report.stages.push_back(stage);
      report.complete = false;
      break;
    }
    std::vector<std::size_t> next;
    for (const auto pos : cluster.members) next.push_back(survivors[pos]);
    survivors = std::move(next);
    stage.diameter = cluster.diameter;
    stage.representative = cluster.mean;
    stage.survivors = survivors.size();
    report.stages.push_back(stage);
  }
  report.selected_indices = survivors;
  report.audited_indices = detail::tail_half(survivors);
  for (const auto& s : report.stages) report.cauchy_modulus = std::max(report.cauchy_modulus, s.diameter);
  return report;
}

struct CauchyCertificate {
  bool certified = false;
  /// Max over audited pairs (k, l) and checked points z of |f_k(z) - f_l(z)|.
  double achieved = 0.0;
  std::size_t points_checked = 0;
  std::vector<std::size_t> audited_indices;
};

struct CauchyAuditConfig {
  std::size_t audit_samples = 4096;
  std::uint64_t seed = 20260101;
  std::size_t net_cap = EpsNet::kDefaultCap;
};

/// Uniform Cauchy check on K for the later half of `indices` (midpoint
/// included, so two indices are both audited). Points checked: the centers of
/// build_eps_net(K, eps / 4) and a seeded uniform sample of K.
template <PointFamily Family>
CauchyCertificate certify_uniform_cauchy(const Family& family, std::span<const std::size_t> indices,
                                         const CompactBox& k, double eps, const CauchyAuditConfig& cfg = {}) {
  if (!(eps > 0.0)) throw DomainError("certify_uniform_cauchy requires eps > 0");
  for (const auto i : indices) {
    if (i >= family.size()) throw DomainError("certify_uniform_cauchy: index out of range");
  }
  CauchyCertificate cert;
  cert.audited_indices = detail::tail_half(indices);
  const auto& audited = cert.audited_indices;
  if (audited.size() < 2) {
    cert.certified = true;
    return cert;
  }
  std::vector<Complex> values(audited.size());
  double achieved = 0.0;
  std::size_t checked = 0;
  auto check = [&](std::span<const Complex> z) {
    family.evaluate(z, audited, values);
    ++checked;
    Complex centroid{};
    for (const auto& v : values) centroid += v;
    centroid /= static_cast<double>(values.size());
    double spread = 0.0;
    for (const auto& v : values) spread = std::max(spread, std::abs(v - centroid));
    if (2.0 * spread <= achieved) return;  // the diameter is at most twice the spread
    achieved = std::max(achieved, detail::diameter_of(values));
  };
  const EpsNet net(k, eps / 4.0, cfg.net_cap);
  net.for_each_center(check);
  SeededRng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.audit_samples; ++i) check(random_point_in(k, rng).coords());
  cert.achieved = achieved;
  cert.points_checked = checked;
  cert.certified = achieved <= eps;
  return cert;
}

/// The limit's H_p norm against M + 1/2.
inline BoundReport limit_norm_check(const MonomialExpansion& limit, HpIndex p, double m,
                                    const QuadratureConfig& cfg = {}) {
  if (!(m >= 0.0)) throw DomainError("limit_norm_check requires M >= 0");
  BoundContext ctx;
  ctx.p = p.value();
  ctx.M = m;
  return make_report(hp_norm(limit, p, cfg).value, m + 0.5, ctx);
}

struct MontelConfig {
  std::size_t dense_points = 2000;
  /// Empty means the 1/k schedule with one entry per dense point.
  std::vector<double> schedule;
  double p = 2.0;
  QuadratureConfig quadrature;
  CauchyAuditConfig audit;
};

/// Full pipeline on a family of monomial expansions: dense points in K,
/// diagonal extraction, uniform Cauchy certification at tolerance eps, the
/// median limit and its norm check against sup ||f_n||_p + 1/2.
inline ExtractionReport montel_extract(const std::vector<MonomialExpansion>& members, const CompactBox& k,
                                       double eps, const MontelConfig& cfg = {}) {
  const HpIndex p(cfg.p);
  const ExpansionFamily family(members);
  const auto points = dense_enumerate_in(k, cfg.dense_points);
  const auto schedule = cfg.schedule.empty() ? harmonic_schedule(points.size()) : cfg.schedule;
  auto report = diagonal_extract(family, points, schedule);

  const auto cert = certify_uniform_cauchy(family, report.selected_indices, k, eps, cfg.audit);
  report.audited_indices = cert.audited_indices;
  report.cauchy_modulus = cert.achieved;
  report.cauchy_target = eps;
  report.certified = cert.certified;

  double m = 0.0;
  for (const auto& f : members) m = std::max(m, hp_norm(f, p, cfg.quadrature).value);
  const auto limit = median_limit(members, report.audited_indices);
  const auto check = limit_norm_check(limit, p, m, cfg.quadrature);
  report.family_bound = m;
  report.limit_norm = check.lhs;
  report.limit_norm_bound = check.rhs;
  report.limit = limit;
  return report;
}

/// ||translate(a - b, eps)||_2.
inline double translated_distance(const DirichletPolynomial& a, const DirichletPolynomial& b, double eps) {
  return h2_norm_exact(translate(a - b, eps));
}

/// Translated-norm extraction for a family of Dirichlet polynomials (p = 2).
///
/// (i) l0 = abel_threshold(eps, C, M, eta), so every member's translated tail
///     beyond l0 is below eta; (ii) stage by stage over the indices n <= l0
///     carried by the family, keep the largest pigeonhole cluster of a_n with
///     pairwise gaps below eta / (l0 L), L = max ||n^{-s}|| = 1; (iii) audit
///     the pairwise translated H_2 distances of the later half of the
///     selection against 3 eta.
inline ExtractionReport dirichlet_montel(const std::vector<DirichletPolynomial>& family, double eps, double eta,
                                         double c = kDefaultTruncationConstant) {
  if (family.empty()) throw DomainError("dirichlet_montel: empty family");
  if (!(eps > 0.0)) throw DomainError("dirichlet_montel: translation eps must be > 0 (eps = 0 does not converge)");
  if (!(eta > 0.0)) throw DomainError("dirichlet_montel: eta must be > 0");
  if (!(c > 0.0)) throw DomainError("dirichlet_montel: C must be > 0");

  ExtractionReport report;
  double m = 0.0;
  for (const auto& d : family) m = std::max(m, h2_norm_exact(d));
  report.family_bound = m;
  const std::uint64_t l0 = abel_threshold(eps, c, m, eta);
  constexpr double kMonomialNorm = 1.0;
  const double gap = eta / (static_cast<double>(l0) * kMonomialNorm);
  report.truncation_index = l0;
  report.gap_tolerance = gap;

  std::vector<std::uint64_t> support;
  for (const auto& d : family) {
    for (const auto& [n, a] : d.terms()) {
      if (n <= l0) support.push_back(n);
    }
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  std::vector<std::size_t> survivors(family.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;
  std::vector<Complex> values;
  for (std::size_t j = 0; j < support.size() && survivors.size() > 1; ++j) {
    const std::uint64_t n = support[j];
    values.clear();
    for (const auto i : survivors) values.push_back(family[i].coefficient(n));
    StageCertificate stage{j, n, gap, 0.0, {}, survivors.size()};
    // Side gap/2 keeps bucket diameters at gap / sqrt(2) < gap.
    const auto cluster = detail::pigeonhole_cluster(values, gap / 2.0);
    if (cluster.members.size() < 2) {
      stage.diameter = detail::min_gap(values);
      stage.survivors = 0;
      report.stages.push_back(stage);
      report.complete = false;
      break;
    }
    std::vector<std::size_t> next;
    for (const auto pos : cluster.members) next.push_back(survivors[pos]);
    survivors = std::move(next);
    stage.diameter = cluster.diameter;
    stage.representative = cluster.mean;
    stage.survivors = survivors.size();
    report.stages.push_back(stage);
  }
  report.selected_indices = survivors;
  report.audited_indices = detail::tail_half(survivors);

  double worst = 0.0;
  const auto& audited = report.audited_indices;
  for (std::size_t i = 0; i < audited.size(); ++i) {
    for (std::size_t j = i + 1; j < audited.size(); ++j) {
      worst = std::max(worst, translated_distance(family[audited[i]], family[audited[j]], eps));
    }
  }
  report.cauchy_modulus = worst;
  report.cauchy_target = 3.0 * eta;
  report.certified = worst <= 3.0 * eta;

  const auto limit = median_limit(family, audited);
  report.limit_norm = h2_norm_exact(limit);
  report.limit_norm_bound = m + 0.5;
  report.limit = limit;
  return report;
}

}  // namespace hardy

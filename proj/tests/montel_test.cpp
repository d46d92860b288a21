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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hardymontel/generators.hpp"
#include "hardymontel/montel.hpp"

namespace hardy {
namespace {

std::vector<MonomialExpansion> z1_powers(std::uint32_t last) {
  std::vector<MonomialExpansion> out;
  for (std::uint32_t n = 1; n <= last; ++n) out.push_back(MonomialExpansion{{MultiIndex{n}, 1.0}});
  return out;
}

std::vector<DirichletPolynomial> dirichlet_monomials() {
  std::vector<DirichletPolynomial> out;
  for (std::uint64_t n = 2; n <= 200; ++n) out.push_back(DirichletPolynomial{{n, 1.0}});
  return out;
}

// sup over |z| = rho (hence over the disc) of max_{a,b} |z^a - z^b|, sampled densely.
double sampled_power_spread(std::span<const std::size_t> exponents, double rho) {
  constexpr int kSamples = 200000;
  double best = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const Complex z = std::polar(rho, 2.0 * std::numbers::pi * i / kSamples);
    for (const auto a : exponents) {
      for (const auto b : exponents) {
        best = std::max(best, std::abs(std::pow(z, static_cast<int>(a)) - std::pow(z, static_cast<int>(b))));
      }
    }
  }
  return best;
}

TEST(DenseEnumerate, Basics) {
  const auto pts = dense_enumerate(600, 2);
  ASSERT_EQ(pts.size(), 600u);
  EXPECT_EQ(pts[0].sup_norm(), 0.0);
  std::set<std::vector<std::pair<double, double>>> seen;
  for (const auto& z : pts) {
    ASSERT_EQ(z.dims(), 2u);
    EXPECT_LT(z.sup_norm(), 1.0);
    std::vector<std::pair<double, double>> key;
    for (const auto c : z.coords()) key.emplace_back(c.real(), c.imag());
    EXPECT_TRUE(seen.insert(key).second);
  }
  const auto again = dense_enumerate(600, 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 1; j <= 2; ++j) EXPECT_EQ(pts[i][j], again[i][j]);
  }
  EXPECT_THROW(dense_enumerate(0, 1), DomainError);
  EXPECT_THROW(dense_enumerate(1, 0), DomainError);
}

TEST(DenseEnumerate, DyadicLevels) {
  // Level 1 in one coordinate: (kx + i ky) / 2 with kx^2 + ky^2 < 4, minus 0.
  const auto pts = dense_enumerate(9, 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Complex z = pts[i][1];
    EXPECT_EQ(z.real() * 2, std::round(z.real() * 2));
    EXPECT_EQ(z.imag() * 2, std::round(z.imag() * 2));
    EXPECT_LT(std::abs(z), 1.0);
  }
  // The first 9 points exhaust level 1 and the next point has a quarter-step coordinate.
  const auto more = dense_enumerate(10, 1);
  const Complex next = more[9][1];
  EXPECT_NE(next.real() * 2, std::round(next.real() * 2) + 0.0 * next.imag());
}

TEST(DenseEnumerate, InBox) {
  const CompactBox k{0.5, 0.25};
  const auto pts = dense_enumerate_in(k, 300);
  ASSERT_EQ(pts.size(), 300u);
  for (const auto& z : pts) EXPECT_TRUE(k.contains(z));
}

TEST(DiagonalExtract, AlternatingFamily) {
  std::vector<CallableFamily::Function> fns;
  for (int i = 0; i < 10; ++i) {
    if (i % 2 == 0) {
      fns.push_back([](std::span<const Complex>) { return Complex{}; });
    } else {
      fns.push_back([](std::span<const Complex> z) { return z.empty() ? Complex{} : z[0]; });
    }
  }
  const CallableFamily family(fns);
  const auto pts = dense_enumerate(60, 1);
  const auto schedule = harmonic_schedule(pts.size());
  const auto report = diagonal_extract(family, pts, schedule);
  EXPECT_TRUE(report.complete);
  ASSERT_EQ(report.selected_indices.size(), 5u);
  const auto parity = report.selected_indices[0] % 2;
  for (const auto i : report.selected_indices) EXPECT_EQ(i % 2, parity);
  EXPECT_TRUE(std::is_sorted(report.selected_indices.begin(), report.selected_indices.end()));
  for (const auto& s : report.stages) EXPECT_LE(s.diameter, 2.0 * s.tolerance);
  // Once the two values separate the surviving members agree exactly.
  EXPECT_EQ(report.stages.back().diameter, 0.0);
  EXPECT_EQ(report.stages.back().survivors, 5u);
}

TEST(DiagonalExtract, IdenticalMembersAllSurvive) {
  std::vector<MonomialExpansion> members(7, MonomialExpansion{{MultiIndex{1}, 0.5}, {MultiIndex{0, 2}, -1.0}});
  const ExpansionFamily family(members);
  const auto pts = dense_enumerate(100, 2);
  const auto report = diagonal_extract(family, pts, harmonic_schedule(100));
  EXPECT_TRUE(report.complete);
  EXPECT_EQ(report.selected_indices, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
  ASSERT_EQ(report.stages.size(), 100u);
  for (const auto& s : report.stages) {
    EXPECT_EQ(s.diameter, 0.0);
    EXPECT_EQ(s.survivors, 7u);
  }
}

TEST(DiagonalExtract, PowersOfZ1) {
  const auto members = z1_powers(32);
  const ExpansionFamily family(members);
  const CompactBox k{0.5};
  const auto pts = dense_enumerate_in(k, 400);
  const auto report = diagonal_extract(family, pts, harmonic_schedule(pts.size()));
  ASSERT_GE(report.selected_indices.size(), 2u);
  EXPECT_TRUE(std::is_sorted(report.selected_indices.begin(), report.selected_indices.end()));
  const std::size_t min_n = report.selected_indices.front() + 1;
  // Oracle: |z^N| <= 0.5^N on K, so the selection spreads by at most 2 * 0.5^min_n.
  for (const auto& z : pts) {
    std::vector<Complex> values(report.selected_indices.size());
    family.evaluate(z.coords(), report.selected_indices, values);
    for (const auto& v : values) EXPECT_LE(std::abs(v), std::pow(0.5, static_cast<double>(min_n)) * (1 + 1e-12));
    EXPECT_LE(detail::diameter_of(values), 2.0 * std::pow(0.5, static_cast<double>(min_n)) * (1 + 1e-12));
  }
  for (const auto& s : report.stages) EXPECT_LE(s.diameter, 2.0 * s.tolerance);
}

TEST(DiagonalExtract, SurvivorsAreNested) {
  SeededRng rng(71);
  std::vector<MonomialExpansion> members;
  for (int i = 0; i < 60; ++i) members.push_back(random_expansion(rng, 2, 3, 4, CoefficientLaw::uniform_disc));
  const ExpansionFamily family(members);
  const auto pts = dense_enumerate(200, 2);
  const auto schedule = geometric_schedule(200, 1.0, 0.8);
  // Re-run with increasing stage counts: each prefix selection contains the next.
  std::vector<std::size_t> previous;
  for (std::size_t stages = 1; stages <= 40; stages += 3) {
    const auto report = diagonal_extract(family, std::span(pts).first(stages), std::span(schedule).first(stages));
    if (!previous.empty()) {
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), report.selected_indices.begin(),
                                report.selected_indices.end()));
    }
    for (std::size_t j = 1; j < report.stages.size(); ++j) {
      if (report.stages[j].survivors > 0) {
        EXPECT_LE(report.stages[j].survivors, report.stages[j - 1].survivors);
      }
    }
    previous = report.selected_indices;
  }
}

TEST(DiagonalExtract, DistinctValuesEndTheChain) {
  // Widely separated constants: no two land in a bucket once the tolerance is small.
  std::vector<MonomialExpansion> members;
  for (int i = 0; i < 4; ++i) members.push_back(MonomialExpansion{{MultiIndex{}, Complex(0.3 * i, 0.0)}});
  const ExpansionFamily family(members);
  const auto pts = dense_enumerate(5, 1);
  const std::vector<double> schedule{0.01, 0.01, 0.01, 0.01, 0.01};
  const auto report = diagonal_extract(family, pts, schedule);
  EXPECT_FALSE(report.complete);
  ASSERT_EQ(report.stages.size(), 1u);
  EXPECT_EQ(report.stages[0].survivors, 0u);
  EXPECT_NEAR(report.stages[0].diameter, 0.3, 1e-15);
  EXPECT_EQ(report.selected_indices.size(), 4u);
  EXPECT_THROW(diagonal_extract(ExpansionFamily({}), pts, schedule), DomainError);
}

TEST(PigeonholeCluster, GroupsBelowHalfSideShareABucket) {
  SeededRng rng(72);
  for (int trial = 0; trial < 2000; ++trial) {
    const double side = rng.uniform(0.01, 1.0);
    const Complex center{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    std::vector<Complex> values;
    // Four points within diameter < side/2 plus three far away singletons.
    for (int i = 0; i < 4; ++i) values.push_back(center + std::polar(0.24 * side * rng.uniform01(), rng.uniform(0.0, 7.0)));
    for (int i = 0; i < 3; ++i) values.push_back(center + Complex(10.0 * side * (i + 1), 0.0));
    const auto cluster = detail::pigeonhole_cluster(values, side);
    EXPECT_EQ(cluster.members, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_LE(cluster.diameter, side * std::sqrt(2.0));
  }
}

TEST(CertifyUniformCauchy, Examples) {
  const auto members = z1_powers(32);
  const ExpansionFamily family(members);
  const CompactBox k{0.5};
  const std::vector<std::size_t> singleton{4};
  const auto one = certify_uniform_cauchy(family, singleton, k, 0.01);
  EXPECT_TRUE(one.certified);
  EXPECT_EQ(one.achieved, 0.0);

  // N = 8..12; the audited later half is N = 10, 11, 12.
  const std::vector<std::size_t> eight_to_twelve{7, 8, 9, 10, 11};
  const auto good = certify_uniform_cauchy(family, eight_to_twelve, k, 0.01);
  EXPECT_TRUE(good.certified);
  EXPECT_LE(good.achieved, std::pow(0.5, 8) + std::pow(0.5, 9));
  EXPECT_EQ(good.audited_indices, (std::vector<std::size_t>{9, 10, 11}));
  const std::size_t audited_n[] = {10, 11, 12};
  const double oracle = sampled_power_spread(audited_n, 0.5);
  EXPECT_LE(good.achieved, oracle * (1 + 1e-9));
  EXPECT_GE(good.achieved, 0.99 * oracle);

  const std::vector<std::size_t> six_seven{5, 6};
  const auto bad = certify_uniform_cauchy(family, six_seven, k, 0.01);
  EXPECT_FALSE(bad.certified);
  EXPECT_GT(bad.achieved, 0.01);
  EXPECT_LE(bad.achieved, std::pow(0.5, 6) + std::pow(0.5, 7));

  EXPECT_THROW(certify_uniform_cauchy(family, six_seven, k, 0.0), DomainError);
  const std::vector<std::size_t> out_of_range{1, 99};
  EXPECT_THROW(certify_uniform_cauchy(family, out_of_range, k, 0.1), DomainError);
  EXPECT_THROW(certify_uniform_cauchy(family, six_seven, k, 1e-6, {.net_cap = 1000}), ResourceError);
}

TEST(LimitNormCheck, Examples) {
  const auto zero = limit_norm_check(MonomialExpansion{}, HpIndex(2.0), 1.0);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_EQ(zero.rhs, 1.5);
  EXPECT_TRUE(zero.holds);
  const MonomialExpansion g{{MultiIndex{1}, 3.0}, {MultiIndex{0, 1}, 4.0}};
  const auto big = limit_norm_check(g, HpIndex(2.0), 1.0);
  EXPECT_NEAR(big.lhs, 5.0, 1e-15);
  EXPECT_FALSE(big.holds);
  EXPECT_THROW(limit_norm_check(g, HpIndex(2.0), -1.0), DomainError);
}

TEST(MontelExtract, PowersOfZ1HaveZeroLimit) {
  MontelConfig cfg;
  cfg.dense_points = 300;
  const auto report = montel_extract(z1_powers(32), CompactBox{0.5}, 0.01, cfg);
  EXPECT_TRUE(report.certified);
  EXPECT_LE(report.cauchy_modulus, 0.01);
  EXPECT_EQ(report.family_bound, 1.0);
  const auto& limit = std::get<MonomialExpansion>(report.limit);
  EXPECT_EQ(limit.size(), 0u);
  EXPECT_EQ(report.limit_norm, 0.0);
  EXPECT_EQ(report.limit_norm_bound, 1.5);
  EXPECT_TRUE(std::is_sorted(report.selected_indices.begin(), report.selected_indices.end()));
}

TEST(MontelExtract, ConvergentRandomFamiliesKeepTheNormBound) {
  SeededRng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_expansion(rng, 1, 5, 4, CoefficientLaw::uniform_disc);
    std::vector<MonomialExpansion> members;
    for (int k = 1; k <= 30; ++k) {
      const auto raw = random_expansion(rng, 1, 5, 3, CoefficientLaw::uniform_disc);
      MonomialExpansion noise;
      for (const auto& [alpha, c] : raw.terms()) {
        noise.set(alpha, c / static_cast<double>(k * k));
      }
      members.push_back(g + noise);
    }
    MontelConfig cfg;
    cfg.dense_points = 100;
    const auto report = montel_extract(members, CompactBox{0.5}, 0.05, cfg);
    EXPECT_LE(report.limit_norm, report.limit_norm_bound);
    double m = 0.0;
    for (const auto& f : members) m = std::max(m, h2_norm_exact(f));
    EXPECT_NEAR(report.family_bound, m, 1e-12 * m);
  }
}

TEST(DirichletMontel, UntranslatedMonomialsArePairwiseRootTwoApart) {
  const auto family = dirichlet_monomials();
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      EXPECT_NEAR(h2_norm_exact(family[i] - family[j]), std::sqrt(2.0), 1e-12);
    }
  }
}

TEST(DirichletMontel, TranslatedDistanceClosedForm) {
  const auto family = dirichlet_monomials();
  for (const double eps : {0.25, 0.5, 1.0}) {
    for (std::size_t i = 0; i < family.size(); i += 7) {
      for (std::size_t j = i + 1; j < family.size(); j += 11) {
        const double m = static_cast<double>(i + 2);
        const double n = static_cast<double>(j + 2);
        const double expected = std::sqrt(std::pow(m, -2 * eps) + std::pow(n, -2 * eps));
        EXPECT_NEAR(translated_distance(family[i], family[j], eps), expected, 1e-14);
      }
    }
  }
}

TEST(DirichletMontel, MonomialFamilyCertifiesTranslatedTail) {
  const auto family = dirichlet_monomials();
  const auto report = dirichlet_montel(family, 0.5, 0.2);
  ASSERT_TRUE(report.truncation_index.has_value());
  EXPECT_EQ(*report.truncation_index, abel_threshold(0.5, kDefaultTruncationConstant, 1.0, 0.2));
  EXPECT_NEAR(*report.gap_tolerance, 0.2 / static_cast<double>(*report.truncation_index), 1e-18);
  EXPECT_TRUE(report.certified);
  EXPECT_LE(report.cauchy_modulus, 0.6);
  EXPECT_EQ(report.cauchy_target, 3.0 * 0.2);
  ASSERT_GE(report.audited_indices.size(), 2u);
  double worst = 0.0;
  for (std::size_t a = 0; a < report.audited_indices.size(); ++a) {
    EXPECT_GE(report.audited_indices[a] + 2, 45u);
    for (std::size_t b = a + 1; b < report.audited_indices.size(); ++b) {
      const double m = static_cast<double>(report.audited_indices[a] + 2);
      const double n = static_cast<double>(report.audited_indices[b] + 2);
      worst = std::max(worst, std::sqrt(1.0 / m + 1.0 / n));
    }
  }
  EXPECT_NEAR(report.cauchy_modulus, worst, 1e-14);
  EXPECT_EQ(report.family_bound, 1.0);
  EXPECT_EQ(report.limit_norm_bound, 1.5);
  EXPECT_LE(report.limit_norm, report.limit_norm_bound);
  EXPECT_TRUE(std::is_sorted(report.selected_indices.begin(), report.selected_indices.end()));
}

TEST(DirichletMontel, NoUntranslatedSubfamilyIsCauchy) {
  // Every pair sits at sqrt(2), so no subfamily of two or more members is
  // delta-Cauchy for delta < sqrt(2); the translated audit above still certifies.
  const auto family = dirichlet_monomials();
  const auto report = dirichlet_montel(family, 0.5, 0.2);
  const auto& audited = report.audited_indices;
  for (std::size_t a = 0; a < audited.size(); ++a) {
    for (std::size_t b = a + 1; b < audited.size(); ++b) {
      EXPECT_NEAR(h2_norm_exact(family[audited[a]] - family[audited[b]]), std::sqrt(2.0), 1e-12);
    }
  }
}

TEST(DirichletMontel, Preconditions) {
  const auto family = dirichlet_monomials();
  EXPECT_THROW(dirichlet_montel(family, 0.0, 0.2), DomainError);
  EXPECT_THROW(dirichlet_montel(family, -1.0, 0.2), DomainError);
  EXPECT_THROW(dirichlet_montel(family, 0.5, 0.0), DomainError);
  EXPECT_THROW(dirichlet_montel({}, 0.5, 0.2), DomainError);
}

TEST(DirichletMontel, ConstantFamily) {
  const DirichletPolynomial d{{1, 0.5}, {6, Complex(0.0, -1.0)}, {35, 0.25}};
  const std::vector<DirichletPolynomial> family(9, d);
  const auto report = dirichlet_montel(family, 0.5, 0.2);
  EXPECT_TRUE(report.complete);
  EXPECT_EQ(report.selected_indices.size(), 9u);
  EXPECT_EQ(report.cauchy_modulus, 0.0);
  EXPECT_TRUE(report.certified);
  for (const auto& s : report.stages) EXPECT_EQ(s.diameter, 0.0);
  const auto& limit = std::get<DirichletPolynomial>(report.limit);
  EXPECT_EQ(limit.terms(), d.terms());
}

}  // namespace
}  // namespace hardy

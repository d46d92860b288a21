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

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "hardymontel/bohr.hpp"
#include "hardymontel/numeric.hpp"

namespace hardy {
namespace {

bool is_prime_naive(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Factorization by plain trial division with positions counted by the naive
// primality test.
std::vector<std::uint32_t> naive_dense_exponents(std::uint64_t n) {
  std::vector<std::uint32_t> dense;
  std::uint64_t p = 1;
  while (n > 1) {
    do ++p;
    while (!is_prime_naive(p));
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    dense.push_back(e);
  }
  while (!dense.empty() && dense.back() == 0) dense.pop_back();
  return dense;
}

TEST(Primes, FirstPrimes) {
  const std::uint64_t expected[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  for (std::size_t k = 1; k <= 10; ++k) EXPECT_EQ(nth_prime(k), expected[k - 1]);
  EXPECT_THROW(nth_prime(0), DomainError);
}

TEST(Primes, BasisMatchesTrialDivision) {
  const PrimeBasis basis(500);
  ASSERT_EQ(basis.size(), 500u);
  EXPECT_EQ(basis[0], 2u);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_TRUE(is_prime_naive(basis[i])) << basis[i];
    if (i) {
      EXPECT_LT(basis[i - 1], basis[i]);
    }
  }
  std::size_t position = 0;
  for (std::uint64_t n = 2; n <= basis[499]; ++n) {
    if (is_prime_naive(n)) {
      EXPECT_EQ(prime_position(n), ++position) << n;
    } else {
      EXPECT_THROW(prime_position(n), DomainError) << n;
    }
  }
}

TEST(Primes, LargePositions) {
  EXPECT_EQ(nth_prime(10000), 104729u);
  EXPECT_EQ(prime_position(104729), 10000u);
  EXPECT_EQ(prime_position(999983), 78498u);
  EXPECT_THROW(prime_position(1000000), DomainError);
}

TEST(MultiIndex, SparseStorage) {
  const MultiIndex a{0, 3, 0, 1};
  ASSERT_EQ(a.entries().size(), 2u);
  EXPECT_EQ(a.entries()[0].position, 2u);
  EXPECT_EQ(a.entries()[0].exponent, 3u);
  EXPECT_EQ(a.entries()[1].position, 4u);
  EXPECT_EQ(a.order(), 4u);
  EXPECT_EQ(a.exponent(1), 0u);
  EXPECT_EQ(a.exponent(9), 0u);
  EXPECT_EQ(a.max_position(), 4u);
  EXPECT_EQ(a, (MultiIndex{0, 3, 0, 1, 0, 0}));
  EXPECT_TRUE(MultiIndex{}.empty());
  EXPECT_THROW(MultiIndex::from_entries({{2, 1}, {1, 1}}), DomainError);
  EXPECT_THROW(MultiIndex::from_entries({{1, 0}}), DomainError);
  EXPECT_THROW(MultiIndex::from_entries({{0, 1}}), DomainError);
}

TEST(MultiIndex, GradedLexOrder) {
  EXPECT_LT(MultiIndex{}, MultiIndex{1});
  EXPECT_LT((MultiIndex{1}), (MultiIndex{0, 1}));
  EXPECT_LT((MultiIndex{0, 0, 5}), (MultiIndex{3, 3}));
  EXPECT_LT((MultiIndex{2}), (MultiIndex{1, 1}));
  EXPECT_LT((MultiIndex{1, 1}), (MultiIndex{0, 2}));
  EXPECT_EQ((MultiIndex{2, 1}).to_string(), "(2,1)");
  EXPECT_EQ(MultiIndex{}.to_string(), "()");
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize_to_index(1).empty());
  EXPECT_EQ(factorize_to_index(12), (MultiIndex{2, 1}));
  EXPECT_EQ(factorize_to_index(50), (MultiIndex{1, 0, 2}));
  EXPECT_EQ(factorize_to_index(999983), MultiIndex::from_entries({{78498, 1}}));
  EXPECT_EQ(factorize_to_index(std::uint64_t{1} << 63), MultiIndex{63});
  EXPECT_THROW(factorize_to_index(0), DomainError);
  EXPECT_THROW(factorize_to_index(-6), DomainError);
}

TEST(Factorize, AgreesWithNaiveFactorization) {
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    EXPECT_EQ(factorize_to_index(n).dense(), naive_dense_exponents(n)) << n;
  }
}

TEST(Factorize, RoundTripUpToOneMillion) {
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) mismatches += index_to_integer(factorize_to_index(n)) != n;
  EXPECT_EQ(mismatches, 0u);
}

TEST(Factorize, OrderAtMostLog2) {
  for (std::uint64_t n = 1; n <= 200'000; ++n) {
    const auto order = factorize_to_index(n).order();
    ASSERT_LE(std::uint64_t{1} << order, n) << n;
  }
}

TEST(Factorize, Multiplicative) {
  SeededRng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto a = rng.uniform_int(1, 1'000'000);
    const auto b = rng.uniform_int(1, 1'000'000);
    EXPECT_EQ(factorize_to_index(a * b), factorize_to_index(a) + factorize_to_index(b)) << a << " * " << b;
  }
}

TEST(IndexToInteger, Examples) {
  EXPECT_EQ(index_to_integer(MultiIndex{}), 1u);
  EXPECT_EQ(index_to_integer(MultiIndex{2, 1}), 12u);
  EXPECT_EQ(index_to_integer(MultiIndex{63}), std::uint64_t{1} << 63);
}

TEST(IndexToInteger, OverflowIsAnError) {
  EXPECT_THROW(index_to_integer(MultiIndex{64}), OverflowError);
  EXPECT_THROW(index_to_integer(MultiIndex{40, 30}), OverflowError);
  EXPECT_THROW(index_to_integer(MultiIndex::from_entries({{1'000'000, 4}})), OverflowError);
}

TEST(EnumerateIndices, Examples) {
  const auto one = enumerate_indices(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].empty());
  const std::vector<MultiIndex> four{{}, {1}, {0, 1}, {2}};
  EXPECT_EQ(enumerate_indices(4), four);
  const auto hundred = enumerate_indices(100);
  ASSERT_EQ(hundred.size(), 100u);
  for (std::uint64_t n = 1; n <= 100; ++n) EXPECT_EQ(index_to_integer(hundred[n - 1]), n);
  EXPECT_THROW(enumerate_indices(0), DomainError);
}

}  // namespace
}  // namespace hardy

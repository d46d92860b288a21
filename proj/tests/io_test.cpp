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

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hardymontel/generators.hpp"
#include "hardymontel/io.hpp"

namespace hardy {
namespace {

std::string fixture(const std::string& name) { return std::string(HARDY_FIXTURES) + "/" + name; }

std::string serialize(const io::AnySeries& s) {
  std::ostringstream out;
  io::write_series(out, s);
  return out.str();
}

// Line number carried by the ParseError thrown while reading `text`.
std::size_t error_line(const std::string& text) {
  try {
    io::read_series(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(Format, ShortestAndSeventeenDigits) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(io::format_double_17(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_integer(18446744073709551615ull), "18446744073709551615");
  EXPECT_EQ(io::csv_header_comment("norm"), "# hardymontel-csv v1 norm");
}

TEST(SeriesFile, DirichletRoundTripIsExact) {
  SeededRng rng(81);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_dirichlet(rng, 1 + rng.uniform_int(0, 40), 1000000, CoefficientLaw::gaussian);
    const auto text = serialize(d);
    const auto back = std::get<DirichletPolynomial>(io::read_series(text));
    EXPECT_EQ(back, d);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(SeriesFile, MonomialRoundTripIsExact) {
  SeededRng rng(82);
  for (int i = 0; i < 300; ++i) {
    auto f = random_expansion(rng, 1 + rng.uniform_int(0, 4), 6, 12, CoefficientLaw::gaussian);
    f.set(MultiIndex{}, Complex(rng.gaussian(), 1e-300));
    const auto text = serialize(f);
    const auto back = std::get<MonomialExpansion>(io::read_series(text));
    EXPECT_EQ(back, f);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(SeriesFile, ExtremeValuesRoundTrip) {
  DirichletPolynomial d;
  d.set(1, {std::numeric_limits<double>::denorm_min(), -std::numeric_limits<double>::max()});
  d.set(std::numeric_limits<std::uint64_t>::max(), {1.0 / 3.0, -0.0});
  EXPECT_EQ(std::get<DirichletPolynomial>(io::read_series(serialize(d))), d);
}

TEST(SeriesFile, Format) {
  const DirichletPolynomial d{{2, 1.0}, {3, Complex(0.5, -0.25)}};
  EXPECT_EQ(serialize(d), "dirichlet v1\n2 1 0\n3 0.5 -0.25\n");
  const MonomialExpansion f{{MultiIndex{}, 2.0}, {MultiIndex{1, 0, 2}, Complex(0.0, 1.0)}};
  EXPECT_EQ(serialize(f), "monomial v1\n- - 2 0\n1,3 1,2 0 1\n");
  // Comments and blank lines are ignored; CRLF line ends are accepted.
  const auto parsed = io::read_series("# header comment\r\n\r\ndirichlet v1\r\n2 1 0\r\n# mid\r\n3 0.5 -0.25\r\n");
  EXPECT_EQ(std::get<DirichletPolynomial>(parsed), d);
}

TEST(SeriesFile, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(""), 1u);
  EXPECT_EQ(error_line("dirichlet v2\n"), 1u);
  EXPECT_EQ(error_line("# c\nlaurent v1\n"), 2u);
  EXPECT_EQ(error_line("dirichlet v1\n2 1 0\n3 1\n"), 3u);
  EXPECT_EQ(error_line("dirichlet v1\n2 1 0\n0 1 0\n"), 3u);
  EXPECT_EQ(error_line("dirichlet v1\n2 1 0\n-3 1 0\n"), 3u);
  EXPECT_EQ(error_line("dirichlet v1\n3 1 0\n2 1 0\n"), 3u);
  EXPECT_EQ(error_line("dirichlet v1\n\n2 1 0\n2 1 0\n"), 4u);
  EXPECT_EQ(error_line("dirichlet v1\n2 one 0\n"), 2u);
  EXPECT_EQ(error_line("dirichlet v1\n2 nan 0\n"), 2u);
  EXPECT_EQ(error_line("dirichlet v1\n2 1e999 0\n"), 2u);
  EXPECT_EQ(error_line("dirichlet v1\n2 1,5 0\n"), 2u);
  EXPECT_EQ(error_line("monomial v1\n1,2 1 1 0\n"), 2u);
  EXPECT_EQ(error_line("monomial v1\n2,1 1,1 1 0\n"), 2u);
  EXPECT_EQ(error_line("monomial v1\n1 0 1 0\n"), 2u);
  EXPECT_EQ(error_line("monomial v1\n1 2 1 0\n1 1 1 0\n"), 3u);
  EXPECT_EQ(error_line("monomial v1\n- 1 1 0\n"), 2u);
  EXPECT_EQ(error_line("monomial v1\n0 1 1 0\n"), 2u);
  try {
    io::read_series("dirichlet v1\n2 1 0\n2 1 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "line 3: duplicate index 2");
  }
}

TEST(SeriesFile, FixturesRoundTrip) {
  for (const char* name : {"three_ones.txt", "two.txt"}) {
    std::ifstream in(fixture(name));
    ASSERT_TRUE(in) << name;
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(serialize(io::read_series(buf.str())), buf.str()) << name;
  }
  std::ifstream in(fixture("three_ones.txt"));
  const auto d = std::get<DirichletPolynomial>(io::read_series(in));
  EXPECT_EQ(d, (DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}}));
}

TEST(FamilyFile, Fixtures) {
  std::ifstream dm(fixture("dirichlet_monomials.txt"));
  const auto dirichlet = io::read_family<DirichletPolynomial>(dm);
  ASSERT_EQ(dirichlet.size(), 199u);
  for (std::size_t i = 0; i < dirichlet.size(); ++i) {
    EXPECT_EQ(dirichlet[i], (DirichletPolynomial{{i + 2, 1.0}}));
  }
  std::ifstream zp(fixture("z1_powers.txt"));
  const auto powers = io::read_family<MonomialExpansion>(zp);
  ASSERT_EQ(powers.size(), 32u);
  for (std::uint32_t n = 1; n <= 32; ++n) EXPECT_EQ(powers[n - 1], (MonomialExpansion{{MultiIndex{n}, 1.0}}));

  std::ostringstream out;
  io::write_family(out, powers);
  std::istringstream again(out.str());
  EXPECT_EQ(io::read_family<MonomialExpansion>(again), powers);
}

TEST(FamilyFile, Errors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      io::read_family<DirichletPolynomial>(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("monomial-family v1\nmember\n"), 1u);
  EXPECT_EQ(line_of("dirichlet-family v1\n2 1 0\n"), 2u);
  EXPECT_EQ(line_of("dirichlet-family v1\n"), 1u);
  EXPECT_EQ(line_of("dirichlet-family v1\nmember\n2 1 0\nmember\n3 1 0\n3 1 0\n"), 6u);
  // An empty member is the zero polynomial.
  std::istringstream in("dirichlet-family v1\nmember\nmember\n5 1 0\n");
  const auto family = io::read_family<DirichletPolynomial>(in);
  ASSERT_EQ(family.size(), 2u);
  EXPECT_EQ(family[0].size(), 0u);
}

TEST(RunConfig, FixtureAndDefaults) {
  std::ifstream in(fixture("config.json"));
  std::stringstream buf;
  buf << in.rdbuf();
  const auto cfg = io::parse_run_config(buf.str());
  EXPECT_EQ(cfg.seed, 20260101u);
  EXPECT_EQ(cfg.quadrature.seed, 20260102u);
  EXPECT_EQ(cfg.p, 2.0);
  EXPECT_EQ(cfg.C, 1.0 / std::log(2.0));
  EXPECT_EQ(cfg.net_cap, 50000000u);
  EXPECT_EQ(cfg.schedule.build().size(), 2000u);
  EXPECT_EQ(cfg.schedule.build()[3], 0.25);

  const auto minimal = io::parse_run_config(R"({"seed": 7, "quadrature": {"seed": 8}})");
  const io::RunConfig defaults;
  EXPECT_EQ(minimal.seed, 7u);
  EXPECT_EQ(minimal.quadrature.seed, 8u);
  EXPECT_EQ(minimal.p, defaults.p);
  EXPECT_EQ(minimal.C, defaults.C);
  EXPECT_NEAR(minimal.C, 1.442695, 1e-6);
  EXPECT_EQ(minimal.audit_samples, defaults.audit_samples);
  EXPECT_EQ(minimal.quadrature.qmc_points, defaults.quadrature.qmc_points);

  const auto geo = io::parse_run_config(
      R"({"seed": 1, "quadrature": {"seed": 2}, "schedule": {"kind": "geometric", "count": 3, "first": 0.5, "ratio": 0.5}})");
  EXPECT_EQ(geo.schedule.build(), (std::vector<double>{0.5, 0.25, 0.125}));
}

TEST(RunConfig, Errors) {
  EXPECT_THROW(io::parse_run_config(R"({"quadrature": {"seed": 2}})"), ParseError);
  EXPECT_THROW(io::parse_run_config(R"({"seed": 1})"), ParseError);
  EXPECT_THROW(io::parse_run_config(R"({"seed": 1, "quadrature": {}})"), ParseError);
  EXPECT_THROW(io::parse_run_config(R"({"seed": 1, "quadrature": {"seed": 2}, "p": 0.5})"), ParseError);
  EXPECT_THROW(io::parse_run_config(R"({"seed": 1, "quadrature": {"seed": 2}, "C": -1})"), ParseError);
  EXPECT_THROW(io::parse_run_config(R"({"seed": "x", "quadrature": {"seed": 2}})"), ParseError);
  EXPECT_THROW(io::parse_run_config(R"({"seed": 1, "quadrature": {"seed": 2}, "schedule": {"kind": "cubic"}})"),
               ParseError);
  EXPECT_THROW(io::parse_run_config("[1, 2]"), ParseError);
  try {
    io::parse_run_config("{\n  \"seed\": 1,\n  \"p\": ,\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

}  // namespace
}  // namespace hardy

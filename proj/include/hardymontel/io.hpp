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

// Plain-text series and family files, the JSON run configuration, and
// locale-independent number formatting for CSV output.
//
// Series files:
//   dirichlet v1              monomial v1
//   <n> <re> <im>             <positions> <exponents> <re> <im>
// Positions and exponents are comma-joined integers ("1,3" and "2,1" for
// z1^2 z3); the empty index is written "- -". Records are sorted by n or in
// graded-lex order and never repeat an index. Blank lines and lines starting
// with '#' are ignored.
//
// Family files start with "dirichlet-family v1" or "monomial-family v1"; each
// member starts with a line "member" followed by its records.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hardymontel/bounds.hpp"
#include "hardymontel/errors.hpp"
#include "hardymontel/montel.hpp"
#include "hardymontel/polytorus.hpp"
#include "hardymontel/series.hpp"

namespace hardy::io {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

/// 17 significant digits, the precision used in series files.
inline std::string format_double_17(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_integer(std::uint64_t value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

/// First row of every CSV the tools emit.
inline std::string csv_header_comment(std::string_view kind) {
  return "# hardymontel-csv v1 " + std::string(kind);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline double parse_double(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError(line, "expected a finite decimal number, got '" + std::string(token) + "'");
  }
  return value;
}

template <typename Int>
Int parse_unsigned(std::string_view token, std::size_t line) {
  Int value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

/// Non-comment, non-blank lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto toks = tokens(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    out.emplace_back(number, line);
  }
  return out;
}

struct DirichletRecordParser {
  DirichletPolynomial series;
  std::optional<std::uint64_t> last;

  void add(std::string_view text, std::size_t line) {
    const auto toks = tokens(text);
    if (toks.size() != 3) throw ParseError(line, "dirichlet record needs 'n re im'");
    if (!toks[0].empty() && toks[0].front() == '-') throw ParseError(line, "Dirichlet index must be >= 1");
    const auto n = parse_unsigned<std::uint64_t>(toks[0], line);
    if (n == 0) throw ParseError(line, "Dirichlet index must be >= 1");
    if (last && n <= *last) {
      throw ParseError(line, n == *last ? "duplicate index " + std::to_string(n) : "records must be sorted by n");
    }
    last = n;
    series.set(n, {parse_double(toks[1], line), parse_double(toks[2], line)});
  }
};

struct MonomialRecordParser {
  MonomialExpansion series;
  std::optional<MultiIndex> last;

  void add(std::string_view text, std::size_t line) {
    const auto toks = tokens(text);
    if (toks.size() != 4) throw ParseError(line, "monomial record needs 'positions exponents re im'");
    std::vector<MultiIndex::Entry> entries;
    if (toks[0] == "-" || toks[1] == "-") {
      if (toks[0] != toks[1]) throw ParseError(line, "empty index must be written '- -'");
    } else {
      const auto pos = split(toks[0], ',');
      const auto exp = split(toks[1], ',');
      if (pos.size() != exp.size()) throw ParseError(line, "positions and exponents differ in length");
      for (std::size_t i = 0; i < pos.size(); ++i) {
        entries.push_back({parse_unsigned<std::uint32_t>(pos[i], line), parse_unsigned<std::uint32_t>(exp[i], line)});
      }
    }
    MultiIndex alpha;
    try {
      alpha = MultiIndex::from_entries(std::move(entries));
    } catch (const DomainError& e) {
      throw ParseError(line, e.what());
    }
    if (last && !(*last < alpha)) {
      throw ParseError(line, *last == alpha ? "duplicate index " + alpha.to_string()
                                            : "records must be in graded-lex order");
    }
    last = alpha;
    series.set(alpha, {parse_double(toks[2], line), parse_double(toks[3], line)});
  }
};

inline std::string join(std::span<const MultiIndex::Entry> entries, bool positions) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(positions ? entries[i].position : entries[i].exponent);
  }
  return out;
}

}  // namespace detail

using AnySeries = std::variant<DirichletPolynomial, MonomialExpansion>;

inline void write_records(std::ostream& out, const DirichletPolynomial& d) {
  for (const auto& [n, a] : d.terms()) {
    out << format_integer(n) << ' ' << format_double_17(a.real()) << ' ' << format_double_17(a.imag()) << '\n';
  }
}

inline void write_records(std::ostream& out, const MonomialExpansion& f) {
  for (const auto& [alpha, c] : f.terms()) {
    if (alpha.empty()) {
      out << "- -";
    } else {
      out << detail::join(alpha.entries(), true) << ' ' << detail::join(alpha.entries(), false);
    }
    out << ' ' << format_double_17(c.real()) << ' ' << format_double_17(c.imag()) << '\n';
  }
}

inline void write_series(std::ostream& out, const DirichletPolynomial& d) {
  out << "dirichlet v1\n";
  write_records(out, d);
}

inline void write_series(std::ostream& out, const MonomialExpansion& f) {
  out << "monomial v1\n";
  write_records(out, f);
}

inline void write_series(std::ostream& out, const AnySeries& s) {
  std::visit([&out](const auto& v) { write_series(out, v); }, s);
}

inline AnySeries read_series(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, "missing header 'dirichlet v1' or 'monomial v1'");
  const auto header = detail::tokens(lines.front().second);
  const auto header_line = lines.front().first;
  if (header.size() != 2 || header[1] != "v1") throw ParseError(header_line, "unsupported header");
  if (header[0] == "dirichlet") {
    detail::DirichletRecordParser parser;
    for (std::size_t i = 1; i < lines.size(); ++i) parser.add(lines[i].second, lines[i].first);
    return parser.series;
  }
  if (header[0] == "monomial") {
    detail::MonomialRecordParser parser;
    for (std::size_t i = 1; i < lines.size(); ++i) parser.add(lines[i].second, lines[i].first);
    return parser.series;
  }
  throw ParseError(header_line, "unknown series kind '" + std::string(header[0]) + "'");
}

inline AnySeries read_series(const std::string& text) {
  std::istringstream in(text);
  return read_series(in);
}

template <typename Family>
std::vector<Family> read_family(std::istream& in) {
  constexpr bool kDirichlet = std::is_same_v<Family, DirichletPolynomial>;
  const std::string_view expected = kDirichlet ? "dirichlet-family" : "monomial-family";
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, "missing header '" + std::string(expected) + " v1'");
  const auto header = detail::tokens(lines.front().second);
  if (header.size() != 2 || header[0] != expected || header[1] != "v1") {
    throw ParseError(lines.front().first, "expected header '" + std::string(expected) + " v1'");
  }
  using Parser = std::conditional_t<kDirichlet, detail::DirichletRecordParser, detail::MonomialRecordParser>;
  std::vector<Family> out;
  std::optional<Parser> current;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto toks = detail::tokens(lines[i].second);
    if (toks.size() == 1 && toks[0] == "member") {
      if (current) out.push_back(current->series);
      current.emplace();
      continue;
    }
    if (!current) throw ParseError(lines[i].first, "record before the first 'member' line");
    current->add(lines[i].second, lines[i].first);
  }
  if (current) out.push_back(current->series);
  if (out.empty()) throw ParseError(lines.front().first, "family has no members");
  return out;
}

template <typename Family>
void write_family(std::ostream& out, const std::vector<Family>& members) {
  out << (std::is_same_v<Family, DirichletPolynomial> ? "dirichlet-family v1\n" : "monomial-family v1\n");
  for (const auto& m : members) {
    out << "member\n";
    write_records(out, m);
  }
}

// ---------------------------------------------------------------------------
// Run configuration

struct ScheduleConfig {
  enum class Kind { harmonic, geometric } kind = Kind::harmonic;
  std::size_t count = 2000;
  double first = 1.0;
  double ratio = 0.9;

  std::vector<double> build() const {
    return kind == Kind::harmonic ? harmonic_schedule(count) : geometric_schedule(count, first, ratio);
  }
};

struct RunConfig {
  double p = 2.0;
  QuadratureConfig quadrature;
  /// Constant of the truncation inequality; valid at p = 2.
  double C = kDefaultTruncationConstant;
  ScheduleConfig schedule;
  std::size_t net_cap = EpsNet::kDefaultCap;
  std::size_t audit_samples = 4096;
  std::uint64_t seed = 20260101;
};

namespace detail {

template <typename T>
void read_field(const nlohmann::json& obj, const char* key, T& field) {
  if (obj.contains(key)) field = obj.at(key).get<T>();
}

inline std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

/// Parses a JSON run configuration. Missing fields keep their defaults except
/// the seeds ("seed" and "quadrature.seed"), which are mandatory.
inline RunConfig parse_run_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(detail::line_of_byte(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError(1, "config must be a JSON object");
  RunConfig cfg;
  try {
    if (!doc.contains("seed")) throw ParseError(1, "config field 'seed' is mandatory");
    detail::read_field(doc, "seed", cfg.seed);
    detail::read_field(doc, "p", cfg.p);
    detail::read_field(doc, "C", cfg.C);
    detail::read_field(doc, "net_cap", cfg.net_cap);
    detail::read_field(doc, "audit_samples", cfg.audit_samples);
    if (doc.contains("quadrature")) {
      const auto& q = doc.at("quadrature");
      if (!q.contains("seed")) throw ParseError(1, "config field 'quadrature.seed' is mandatory");
      detail::read_field(q, "seed", cfg.quadrature.seed);
      detail::read_field(q, "grid_points", cfg.quadrature.grid_points);
      detail::read_field(q, "max_grid_dims", cfg.quadrature.max_grid_dims);
      detail::read_field(q, "max_total_points", cfg.quadrature.max_total_points);
      detail::read_field(q, "refine_tol", cfg.quadrature.refine_tol);
      detail::read_field(q, "qmc_points", cfg.quadrature.qmc_points);
      detail::read_field(q, "qmc_shifts", cfg.quadrature.qmc_shifts);
      detail::read_field(q, "radius", cfg.quadrature.radius);
    } else {
      throw ParseError(1, "config field 'quadrature.seed' is mandatory");
    }
    if (doc.contains("schedule")) {
      const auto& s = doc.at("schedule");
      std::string kind = "harmonic";
      detail::read_field(s, "kind", kind);
      if (kind == "harmonic") {
        cfg.schedule.kind = ScheduleConfig::Kind::harmonic;
      } else if (kind == "geometric") {
        cfg.schedule.kind = ScheduleConfig::Kind::geometric;
      } else {
        throw ParseError(1, "schedule.kind must be 'harmonic' or 'geometric'");
      }
      detail::read_field(s, "count", cfg.schedule.count);
      detail::read_field(s, "first", cfg.schedule.first);
      detail::read_field(s, "ratio", cfg.schedule.ratio);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("config: ") + e.what());
  }

  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParseError(1, std::string("config: ") + what);
  };
  require(cfg.p >= 1.0 && std::isfinite(cfg.p), "p must satisfy 1 <= p < inf");
  require(cfg.C > 0.0 && std::isfinite(cfg.C), "C must be positive");
  require(cfg.quadrature.max_grid_dims >= 1, "quadrature.max_grid_dims must be >= 1");
  require(cfg.quadrature.max_total_points >= 1, "quadrature.max_total_points must be >= 1");
  require(cfg.quadrature.refine_tol > 0.0, "quadrature.refine_tol must be positive");
  require(cfg.quadrature.qmc_points >= 1 && cfg.quadrature.qmc_shifts >= 1, "QMC budget must be positive");
  require(cfg.quadrature.radius > 0.0 && cfg.quadrature.radius <= 1.0, "quadrature.radius must lie in (0, 1]");
  require(cfg.schedule.count >= 1, "schedule.count must be >= 1");
  require(cfg.schedule.first > 0.0 && cfg.schedule.ratio > 0.0 && cfg.schedule.ratio <= 1.0,
          "schedule needs first > 0 and 0 < ratio <= 1");
  require(cfg.net_cap >= 1, "net_cap must be >= 1");
  return cfg;
}

}  // namespace hardy::io

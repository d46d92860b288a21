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

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hardymontel/hardymontel.hpp"

namespace hardy::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

io::AnySeries load_series(const std::string& path) { return io::read_series(read_file(path)); }

template <typename T>
T load_as(const std::string& path, const char* command) {
  auto any = load_series(path);
  if (auto* v = std::get_if<T>(&any)) return std::move(*v);
  throw DomainError(std::string(command) + ": expected a " +
                    (std::is_same_v<T, DirichletPolynomial> ? "dirichlet" : "monomial") + " series");
}

MonomialExpansion load_expansion(const std::string& path) {
  auto any = load_series(path);
  if (auto* d = std::get_if<DirichletPolynomial>(&any)) return bohr_lift(*d);
  return std::get<MonomialExpansion>(std::move(any));
}

std::string fmt(double v) { return io::format_double(v); }
std::string fmt(std::uint64_t v) { return io::format_integer(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

void write_norm_row(std::ostream& out, const char* kind, double p, const NormEstimate& e) {
  out << io::csv_header_comment(kind) << '\n'
      << "p,value,method,error_proxy,grid_points,samples,window\n"
      << fmt(p) << ',' << fmt(e.value) << ',' << to_string(e.method) << ',' << fmt(e.error_proxy) << ','
      << fmt(static_cast<std::uint64_t>(e.grid_points)) << ',' << fmt(static_cast<std::uint64_t>(e.samples)) << ','
      << fmt(e.window) << '\n';
}

std::string join_members(std::span<const std::size_t> indices) {
  std::string s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ' ';
    s += fmt(static_cast<std::uint64_t>(indices[i] + 1));
  }
  return s;
}

void write_stages_csv(std::ostream& out, const ExtractionReport& report) {
  out << io::csv_header_comment("stages") << '\n'
      << "stage,point,tolerance,diameter,representative_re,representative_im,survivors\n";
  for (const auto& s : report.stages) {
    out << fmt(static_cast<std::uint64_t>(s.stage)) << ',' << fmt(s.point) << ',' << fmt(s.tolerance) << ','
        << fmt(s.diameter) << ',' << fmt(s.representative.real()) << ',' << fmt(s.representative.imag()) << ','
        << fmt(static_cast<std::uint64_t>(s.survivors)) << '\n';
  }
}

// Members are numbered from 1 in file order.
void write_report(std::ostream& out, const char* kind, const ExtractionReport& r) {
  out << "# hardymontel-report v1 " << kind << '\n';
  out << "members_selected: " << join_members(r.selected_indices) << '\n';
  out << "members_audited: " << join_members(r.audited_indices) << '\n';
  out << "stages: " << fmt(static_cast<std::uint64_t>(r.stages.size())) << '\n';
  out << "complete: " << fmt(r.complete) << '\n';
  if (r.truncation_index) out << "truncation_index: " << fmt(*r.truncation_index) << '\n';
  if (r.gap_tolerance) out << "gap_tolerance: " << fmt(*r.gap_tolerance) << '\n';
  out << "cauchy_modulus: " << fmt(r.cauchy_modulus) << '\n';
  out << "cauchy_target: " << fmt(r.cauchy_target) << '\n';
  out << "certified: " << fmt(r.certified) << '\n';
  out << "family_bound: " << fmt(r.family_bound) << '\n';
  out << "limit_norm: " << fmt(r.limit_norm) << '\n';
  out << "limit_norm_bound: " << fmt(r.limit_norm_bound) << '\n';
  out << "limit_norm_holds: " << fmt(r.limit_norm <= r.limit_norm_bound * (1.0 + kBoundRelTol)) << '\n';
  out << "limit:\n";
  std::visit(
      [&out](const auto& limit) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(limit)>, std::monostate>) io::write_series(out, limit);
      },
      r.limit);
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> radii;
  std::size_t line = 1;
  for (const auto tok : io::detail::split(text, ',')) {
    if (tok.empty()) continue;
    radii.push_back(io::detail::parse_double(tok, line));
  }
  return radii;
}

struct Options {
  std::string config_path;
  std::string output_path;
  std::string input;
  std::optional<double> p;
  bool force_quadrature = false;
  std::size_t degree = 0;
  std::optional<std::size_t> dims;
  std::size_t grid = 0;
  double radius = 1.0;
  double drop_below = 1e-12;
  double eps = 0.0;
  double eta = 0.0;
  double x = 0.0;
  double window = 1e4;
  std::size_t samples = 200000;
  std::string suite = "all";
  std::size_t count = 100;
  std::string radii = "0.5";
  std::optional<std::size_t> dense_points;
  std::string stages_path;
  std::size_t terms = 0;
  std::uint64_t max_n = 0;
  std::string law = "gaussian";
  std::optional<std::uint64_t> seed;
  std::size_t members = 0;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy spaces of Dirichlet series: norms, bounds and Montel extraction", "hardymontel"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("-o,--output", o.output_path, "Write results here instead of stdout");

  auto* lift = app.add_subcommand("lift", "Dirichlet polynomial to monomial expansion");
  auto* drop = app.add_subcommand("drop", "Monomial expansion to Dirichlet polynomial");
  auto* norm = app.add_subcommand("norm", "H_p norm of a series");
  auto* coeffs = app.add_subcommand("coeffs", "Coefficients from samples on the scaled torus grid");
  auto* translate_cmd = app.add_subcommand("translate", "Multiply a_n by n^-eps");
  auto* truncate_cmd = app.add_subcommand("truncate", "Keep the terms with n <= x");
  auto* verify = app.add_subcommand("verify-bounds", "Run the randomized bound suites");
  auto* montel = app.add_subcommand("montel-extract", "Diagonal extraction on a monomial family");
  auto* dmontel = app.add_subcommand("dirichlet-montel", "Translated-norm extraction on a Dirichlet family");
  auto* bayart = app.add_subcommand("bayart-mean", "Finite-window line mean of a Dirichlet polynomial");
  auto* gen = app.add_subcommand("gen-random", "Seeded random Dirichlet polynomial");

  for (auto* sub : {lift, drop, norm, coeffs, translate_cmd, truncate_cmd, bayart}) {
    sub->add_option("input", o.input, "Series file")->required();
  }
  for (auto* sub : {montel, dmontel}) sub->add_option("family", o.input, "Family file")->required();
  for (auto* sub : {norm, bayart}) sub->add_option("--p", o.p, "Exponent p >= 1");
  norm->add_flag("--force-quadrature", o.force_quadrature, "Use quadrature even at p = 2");
  coeffs->add_option("--degree", o.degree, "Per-variable degree bound")->required();
  coeffs->add_option("--dims", o.dims, "Number of variables (default: highest active position)");
  coeffs->add_option("--grid", o.grid, "Nodes per circle (default degree + 1)");
  coeffs->add_option("--radius", o.radius, "Contour radius in (0, 1]");
  coeffs->add_option("--drop-below", o.drop_below, "Omit coefficients of modulus <= this");
  translate_cmd->add_option("--eps", o.eps, "Translation eps >= 0")->required();
  truncate_cmd->add_option("--x", o.x, "Cut-off x >= 1")->required();
  verify->add_option("--suite", o.suite, "all, pointwise, disc, two-point, lipschitz, truncation or abel");
  verify->add_option("--count", o.count, "Instances per suite");
  montel->add_option("--radii", o.radii, "Comma-separated box radii");
  montel->add_option("--eps", o.eps, "Uniform Cauchy tolerance")->required();
  montel->add_option("--dense-points", o.dense_points, "Dense points (default: schedule count)");
  for (auto* sub : {montel, dmontel}) sub->add_option("--stages-csv", o.stages_path, "Write the stage CSV here");
  dmontel->add_option("--eps", o.eps, "Translation eps > 0")->required();
  dmontel->add_option("--eta", o.eta, "Target eta > 0")->required();
  bayart->add_option("--R", o.window, "Half window R > 0");
  bayart->add_option("--samples", o.samples, "Trapezoid nodes");
  gen->add_option("--terms", o.terms, "Number of terms")->required();
  gen->add_option("--max-n", o.max_n, "Largest index n")->required();
  gen->add_option("--law", o.law, "uniform-disc, gaussian or unit-circle");
  gen->add_option("--seed", o.seed, "Seed (or the config seed)");
  gen->add_option("--members", o.members, "Write a family of this many members instead");

  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" || arg == "-o" || arg == "--output") {
      ++i;
      continue;
    }
    if (arg.starts_with('-')) continue;
    if (!app.get_subcommand_no_throw(std::string(arg))) {
      err << "error: unknown subcommand '" << arg << "'\n\n" << app.help();
      return kExitUsage;
    }
    break;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    io::RunConfig cfg;
    if (!o.config_path.empty()) cfg = io::parse_run_config(read_file(o.config_path));
    std::ofstream file;
    if (!o.output_path.empty()) {
      file.open(o.output_path, std::ios::binary);
      if (!file) throw DomainError("cannot write '" + o.output_path + "'");
    }
    std::ostream& sink = o.output_path.empty() ? out : file;
    int status = kExitOk;

    if (*lift) {
      io::write_series(sink, bohr_lift(load_as<DirichletPolynomial>(o.input, "lift")));
    } else if (*drop) {
      io::write_series(sink, bohr_drop(load_as<MonomialExpansion>(o.input, "drop")));
    } else if (*norm) {
      const double p = o.p.value_or(cfg.p);
      auto q = cfg.quadrature;
      q.force_quadrature = o.force_quadrature;
      write_norm_row(sink, "norm", p, hp_norm(load_expansion(o.input), HpIndex(p), q));
    } else if (*coeffs) {
      const auto f = load_expansion(o.input);
      ExtractConfig ec;
      ec.grid_points = o.grid;
      ec.radius = o.radius;
      ec.drop_below = o.drop_below;
      ec.max_total_points = cfg.quadrature.max_total_points;
      const std::size_t dims = o.dims.value_or(f.max_position());
      io::write_series(sink, extract_coefficients(evaluator(f), dims, o.degree, ec));
    } else if (*translate_cmd) {
      io::write_series(sink, translate(load_as<DirichletPolynomial>(o.input, "translate"), o.eps));
    } else if (*truncate_cmd) {
      io::write_series(sink, truncate(load_as<DirichletPolynomial>(o.input, "truncate"), o.x));
    } else if (*verify) {
      SuiteConfig sc;
      sc.count = o.count;
      sc.seed = cfg.seed;
      sc.quadrature = cfg.quadrature;
      sc.truncation_constant = cfg.C;
      const auto rows = o.suite == "all" ? run_all_bound_suites(sc) : run_bound_suite(o.suite, sc);
      sink << io::csv_header_comment("bounds") << '\n' << "suite,instance,lhs,rhs,slack,holds,verdict\n";
      for (const auto& row : rows) {
        const auto& r = row.report;
        sink << row.suite << ',' << fmt(static_cast<std::uint64_t>(row.instance)) << ',' << fmt(r.lhs) << ','
             << fmt(r.rhs) << ',' << fmt(r.slack) << ',' << fmt(r.holds) << ',' << to_string(r.verdict) << '\n';
        if (r.verdict == Verdict::fails) status = kExitDomain;
      }
      if (status != kExitOk) err << "verify-bounds: some bounds failed\n";
    } else if (*montel) {
      std::ifstream in(o.input, std::ios::binary);
      if (!in) throw DomainError("cannot open '" + o.input + "'");
      const auto family = io::read_family<MonomialExpansion>(in);
      MontelConfig mc;
      mc.p = cfg.p;
      mc.quadrature = cfg.quadrature;
      mc.dense_points = o.dense_points.value_or(cfg.schedule.count);
      auto sched = cfg.schedule;
      sched.count = mc.dense_points;
      mc.schedule = sched.build();
      mc.audit.audit_samples = cfg.audit_samples;
      mc.audit.seed = cfg.seed;
      mc.audit.net_cap = cfg.net_cap;
      const auto report = montel_extract(family, CompactBox(parse_radii(o.radii)), o.eps, mc);
      write_report(sink, "montel-extract", report);
      if (o.stages_path.empty()) {
        write_stages_csv(sink, report);
      } else {
        std::ofstream stages(o.stages_path, std::ios::binary);
        if (!stages) throw DomainError("cannot write '" + o.stages_path + "'");
        write_stages_csv(stages, report);
      }
    } else if (*dmontel) {
      std::ifstream in(o.input, std::ios::binary);
      if (!in) throw DomainError("cannot open '" + o.input + "'");
      const auto family = io::read_family<DirichletPolynomial>(in);
      const auto report = dirichlet_montel(family, o.eps, o.eta, cfg.C);
      write_report(sink, "dirichlet-montel", report);
      if (o.stages_path.empty()) {
        write_stages_csv(sink, report);
      } else {
        std::ofstream stages(o.stages_path, std::ios::binary);
        if (!stages) throw DomainError("cannot write '" + o.stages_path + "'");
        write_stages_csv(stages, report);
      }
    } else if (*bayart) {
      const double p = o.p.value_or(cfg.p);
      write_norm_row(sink, "bayart-mean", p,
                     bayart_mean_norm(load_as<DirichletPolynomial>(o.input, "bayart-mean"), HpIndex(p), o.window,
                                      o.samples));
    } else if (*gen) {
      if (!o.seed && o.config_path.empty()) throw DomainError("gen-random needs --seed or a config file");
      SeededRng rng(o.seed.value_or(cfg.seed));
      const auto law = parse_coefficient_law(o.law);
      if (o.members == 0) {
        io::write_series(sink, random_dirichlet(rng, o.terms, o.max_n, law));
      } else {
        std::vector<DirichletPolynomial> family;
        for (std::size_t i = 0; i < o.members; ++i) family.push_back(random_dirichlet(rng, o.terms, o.max_n, law));
        io::write_family(sink, family);
      }
    }
    sink.flush();
    if (!sink) throw DomainError("write failed");
    return status;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace hardy::cli

// Copyright 2026 The spectral_metrics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end.  Commands print a human-readable summary to
// stdout plus a machine-readable record (JSON, or CSV for `surface`) that
// is byte-identical across runs with identical arguments and seed.
//
// Exit codes: 0 success, 2 spec/argument parse failure, 3 numeric error,
// 4 I/O error, 5 verification failure, 6 solver failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spectral/distances.hpp"
#include "spectral/error.hpp"
#include "spectral/geodesics.hpp"
#include "spectral/moments.hpp"
#include "spectral/prediction.hpp"
#include "spectral/spectrum_spec.hpp"

namespace {

using namespace spectral;

constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;
constexpr int kExitVerifyFail = 5;
constexpr int kExitSolverFail = 6;

// 17 significant digits round-trips doubles exactly.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string json_number_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += fmt17(v[i]);
  }
  out += "]";
  return out;
}

// Emits the record to --out when given, otherwise to stdout.
int emit_record(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return kExitIo;
  }
  out << text;
  out.flush();
  if (!out.good()) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return kExitIo;
  }
  return 0;
}

MeanOrder parse_order(const std::string& token) {
  if (token == "inf" || token == "+inf") return MeanOrder::plus_infinity();
  if (token == "-inf") return MeanOrder::minus_infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw SpecParseError("measure: cannot parse mean order '" + token + "'");
  }
  if (used != token.size()) {
    throw SpecParseError("measure: cannot parse mean order '" + token + "'");
  }
  return MeanOrder::finite(value);
}

struct Measure {
  std::string name;  // normalized label for the record
  DistanceValue (*simple)(const SpectrumGrid&, const SpectrumGrid&) = nullptr;
  std::optional<MeanOrder> r;
  std::optional<MeanOrder> s;

  DistanceValue evaluate(const SpectrumGrid& a, const SpectrumGrid& b) const {
    if (simple != nullptr) return simple(a, b);
    return delta_rs(a, b, *r, *s);
  }
};

Measure parse_measure(const std::string& text) {
  if (text == "ag") return {"ag", &delta_ag, {}, {}};
  if (text == "sym") return {"sym", &delta_sym, {}, {}};
  if (text == "kl") return {"kl", &delta_kl, {}, {}};
  if (text == "smooth") return {"smooth", &delta_smooth, {}, {}};
  if (text.rfind("rs(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(3, text.size() - 4);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos) {
      throw SpecParseError("measure: rs needs two orders, e.g. rs(0,1)");
    }
    Measure m;
    m.r = parse_order(inner.substr(0, comma));
    m.s = parse_order(inner.substr(comma + 1));
    m.name = "rs(" + m.r->to_string() + "," + m.s->to_string() + ")";
    return m;
  }
  throw SpecParseError("measure: unknown measure '" + text +
                       "' (expected ag, sym, kl, smooth or rs(r,s))");
}

// Grid size for a command: --n when given, otherwise the size fixed by any
// Samples spec, otherwise 4096.  Samples specs must agree with the result.
std::size_t resolve_grid_size(std::size_t flag_n,
                              const std::vector<const SpectrumSpec*>& specs) {
  std::optional<std::size_t> fixed;
  for (const SpectrumSpec* s : specs) {
    const auto size = spec_fixed_size(*s);
    if (!size) continue;
    if (fixed && *fixed != *size) {
      throw SpecParseError("sample specs disagree on grid size (" +
                           std::to_string(*fixed) + " vs " +
                           std::to_string(*size) + ")");
    }
    fixed = size;
  }
  const std::size_t n = flag_n != 0 ? flag_n : fixed.value_or(4096);
  if (fixed && *fixed != n) {
    throw SpecParseError("--n " + std::to_string(n) +
                         " conflicts with sample spec of length " +
                         std::to_string(*fixed));
  }
  return n;
}

unsigned worker_count(std::size_t cells) {
  unsigned cap = 0;
  if (const char* env = std::getenv("SPECTRAL_METRICS_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env) cap = static_cast<unsigned>(parsed);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned workers = (cap == 0) ? hw : cap;
  if (workers > cells) workers = static_cast<unsigned>(cells);
  return workers == 0 ? 1 : workers;
}

int cmd_dist(const std::string& spec1, const std::string& spec2,
             const std::string& measure_text, std::size_t flag_n,
             const std::string& out_path) {
  const SpectrumSpec s1 = load_spectrum_spec(spec1);
  const SpectrumSpec s2 = load_spectrum_spec(spec2);
  const Measure measure = parse_measure(measure_text);
  const std::size_t n = resolve_grid_size(flag_n, {&s1, &s2});
  const SpectrumGrid f1 = realize(s1, n);
  const SpectrumGrid f2 = realize(s2, n);
  const DistanceValue d = measure.evaluate(f1, f2);

  std::cout << fmt12(d.value) << "\n";
  // JSON has no infinity literal; an overflowed mean reports null.
  const std::string value_field =
      std::isfinite(d.value) ? fmt17(d.value) : "null";
  const std::string record =
      "{\"command\":\"dist\",\"measure\":\"" + measure.name +
      "\",\"n\":" + std::to_string(n) + ",\"inputs\":[\"" + spec_digest(s1) +
      "\",\"" + spec_digest(s2) + "\"],\"value\":" + value_field + "}\n";
  return emit_record(record, out_path);
}

int cmd_surface(const std::string& spec1, const std::string& spec2,
                const std::string& spec3, std::size_t steps,
                std::size_t flag_n, const std::string& out_path) {
  if (steps < 2) throw SpecParseError("surface: --steps must be >= 2");
  const SpectrumSpec s1 = load_spectrum_spec(spec1);
  const SpectrumSpec s2 = load_spectrum_spec(spec2);
  const SpectrumSpec s3 = load_spectrum_spec(spec3);
  const std::size_t n = resolve_grid_size(flag_n, {&s1, &s2, &s3});
  const SpectrumGrid f1 = realize(s1, n);
  const SpectrumGrid f2 = realize(s2, n);
  const SpectrumGrid f3 = realize(s3, n);

  const std::size_t side = steps + 1;
  const std::size_t cells = side * side;
  std::vector<std::string> rows(cells);

  // Cells are independent; rows land in canonical tau-major order no
  // matter which worker computes them.
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells) return;
      const std::size_t i = idx / side;
      const std::size_t j = idx % side;
      const double tau =
          (i == steps) ? 1.0
                       : static_cast<double>(i) / static_cast<double>(steps);
      const double sigma =
          (j == steps) ? 1.0
                       : static_cast<double>(j) / static_cast<double>(steps);
      const SpectrumGrid blend =
          log_interval(f1, log_interval(f2, f3, sigma), tau);
      const double ag = delta_ag(f1, blend).value;
      const double sym = delta_sym(f1, blend).value;
      const double kl = delta_kl(f1, blend).value;
      rows[idx] = fmt17(tau) + "," + fmt17(sigma) + "," + fmt17(ag) + "," +
                  fmt17(sym) + "," + fmt17(kl) + "\n";
    }
  };
  const unsigned workers = worker_count(cells);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::string csv = "tau,sigma,delta_ag,delta_sym,delta_kl\n";
  for (const std::string& row : rows) csv += row;
  const int rc = emit_record(csv, out_path);
  if (rc == 0 && !out_path.empty()) {
    std::cout << "wrote " << cells << " rows to " << out_path << "\n";
  }
  return rc;
}

int cmd_geodesic(const std::string& spec1, const std::string& spec2,
                 std::size_t frames, std::size_t flag_n,
                 const std::string& out_path) {
  const SpectrumSpec s1 = load_spectrum_spec(spec1);
  const SpectrumSpec s2 = load_spectrum_spec(spec2);
  const std::size_t n = resolve_grid_size(flag_n, {&s1, &s2});
  const SpectrumGrid f0 = realize(s1, n);
  const SpectrumGrid f1 = realize(s2, n);

  const double exact = logpath_length(f0, f1);
  const GeodesicPath path = GeodesicPath::log_path(f0, f1, frames);
  const double discrete = path_length(path);
  std::string residual_field = "null";
  std::string note;
  try {
    residual_field = fmt17(geodesic_residual(path));
  } catch (const ZeroSpeed&) {
    note =
        "zero-speed frames: the endpoints lie on one ray, the normalized "
        "velocity field is undefined";
  }

  std::cout << "logpath_length = " << fmt12(exact) << "\n";
  std::cout << "path_length    = " << fmt12(discrete) << " (" << frames
            << " frames)\n";
  std::cout << "residual       = "
            << (note.empty() ? residual_field : "n/a (" + note + ")") << "\n";

  std::string record =
      "{\"command\":\"geodesic\",\"n\":" + std::to_string(n) +
      ",\"frames\":" + std::to_string(frames) + ",\"inputs\":[\"" +
      spec_digest(s1) + "\",\"" + spec_digest(s2) +
      "\"],\"logpath_length\":" + fmt17(exact) +
      ",\"path_length\":" + fmt17(discrete) +
      ",\"geodesic_residual\":" + residual_field;
  if (!note.empty()) record += ",\"note\":\"" + note + "\"";
  record += "}\n";
  return emit_record(record, out_path);
}

int cmd_verify(const std::string& spec_true, const std::string& spec_model,
               std::uint64_t samples, std::size_t filter_len,
               std::uint64_t seed, std::size_t flag_n,
               const std::string& out_path) {
  const SpectrumSpec st = load_spectrum_spec(spec_true);
  const SpectrumSpec sm = load_spectrum_spec(spec_model);
  const std::size_t n = resolve_grid_size(flag_n, {&st, &sm});
  const SpectrumGrid f_true = realize(st, n);
  const SpectrumGrid f_model = realize(sm, n);

  const SimulationReport rep =
      simulate_prediction(f_true, f_model, filter_len, samples, seed);
  const double ratio_target =
      std::exp(delta_ag(f_true, f_model).value) * prediction_variance(f_true);
  const bool pass = std::abs(rep.empirical_variance - rep.analytic_variance) <=
                    4.0 * rep.standard_error;

  std::cout << "empirical  = " << fmt12(rep.empirical_variance) << "\n";
  std::cout << "analytic   = " << fmt12(rep.analytic_variance) << "\n";
  std::cout << "exp(d_ag)*g_true = " << fmt12(ratio_target) << "\n";
  std::cout << "std_error  = " << fmt12(rep.standard_error) << "\n";
  std::cout << (pass ? "PASS" : "FAIL") << " (4 standard error window)\n";

  const std::string record =
      "{\"command\":\"verify\",\"n\":" + std::to_string(n) +
      ",\"inputs\":[\"" + spec_digest(st) + "\",\"" + spec_digest(sm) +
      "\"],\"empirical_variance\":" + fmt17(rep.empirical_variance) +
      ",\"analytic_variance\":" + fmt17(rep.analytic_variance) +
      ",\"standard_error\":" + fmt17(rep.standard_error) +
      ",\"exp_delta_ag_times_g\":" + fmt17(ratio_target) +
      ",\"samples\":" + std::to_string(rep.samples) +
      ",\"filter_len\":" + std::to_string(rep.filter_len) +
      ",\"seed\":" + std::to_string(rep.seed) +
      ",\"pass\":" + (pass ? "true" : "false") + "}\n";
  const int rc = emit_record(record, out_path);
  if (rc != 0) return rc;
  return pass ? 0 : kExitVerifyFail;
}

int cmd_moments(const std::string& source_spec, const std::string& moments_csv,
                const std::string& prior_spec, std::size_t n_moments,
                double tol, std::size_t max_iter, std::size_t flag_n,
                const std::string& out_path) {
  if (source_spec.empty() == moments_csv.empty()) {
    throw SpecParseError(
        "moments: give exactly one of SOURCE spec or --moments list");
  }
  const SpectrumSpec prior_s = load_spectrum_spec(prior_spec);

  std::vector<double> r;
  std::size_t n = 0;
  std::string source_digest;
  if (!moments_csv.empty()) {
    std::stringstream ss(moments_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        r.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw SpecParseError("moments: cannot parse value '" + tok + "'");
      }
    }
    if (r.empty()) throw SpecParseError("moments: empty --moments list");
    n = resolve_grid_size(flag_n, {&prior_s});
    source_digest = "moments";
  } else {
    const SpectrumSpec src = load_spectrum_spec(source_spec);
    n = resolve_grid_size(flag_n, {&src, &prior_s});
    const SpectrumGrid f = realize(src, n);
    const MomentVector mv = compute_moments(f, n_moments);
    r = mv.values();
    source_digest = spec_digest(src);
  }

  const MomentVector moments{std::vector<double>(r)};
  const SpectrumGrid prior = realize(prior_s, n);
  const MomentSolution sol = solve_ag_closest(moments, prior, tol, max_iter);

  std::cout << "kappa      = " << fmt12(sol.kappa) << "\n";
  std::cout << "lambda     =";
  for (double l : sol.lambdas) std::cout << " " << fmt12(l);
  std::cout << "\n";
  std::cout << "residual   = " << fmt12(sol.residual) << "\n";
  std::cout << "iterations = " << sol.iterations << "\n";

  const std::string record =
      "{\"command\":\"moments\",\"n\":" + std::to_string(n) +
      ",\"source\":\"" + source_digest + "\",\"prior\":\"" +
      spec_digest(prior_s) + "\",\"moments\":" + json_number_array(r) +
      ",\"lambdas\":" + json_number_array(sol.lambdas) +
      ",\"kappa\":" + fmt17(sol.kappa) +
      ",\"residual\":" + fmt17(sol.residual) +
      ",\"iterations\":" + std::to_string(sol.iterations) + "}\n";
  std::cout << record;

  if (!out_path.empty()) {
    return emit_record(samples_spec_json(sol.density), out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Distance measures between power spectral densities: prediction- and "
      "smoothing-motivated distances, logarithmic-interval geodesics, "
      "moment-constrained approximation, and a Monte-Carlo filtering "
      "check.\n\nSpectrum arguments accept a JSON spec file path, "
      "'builtin:NAME' or a bare builtin name.\nBuiltins:\n" +
      builtin_descriptions()};
  app.require_subcommand(1);

  std::string spec1, spec2, spec3, prior_spec, measure = "ag", out_path;
  std::string moments_csv;
  std::size_t n = 0, steps = 40, frames = 1001, filter_len = 256;
  std::size_t n_moments = 4, max_iter = 200;
  std::uint64_t samples = 1000000, seed = 0;
  double tol = 1e-9;

  CLI::App* dist = app.add_subcommand("dist", "Distance between two spectra");
  dist->add_option("spec1", spec1)->required();
  dist->add_option("spec2", spec2)->required();
  dist->add_option("--measure", measure, "ag | sym | kl | smooth | rs(r,s)");
  dist->add_option("--n", n, "grid size (default 4096)");
  dist->add_option("--out", out_path, "write the JSON record here");

  CLI::App* surface = app.add_subcommand(
      "surface",
      "Distance surface over the logarithmic triangle spanned by three "
      "spectra (CSV)");
  surface->add_option("spec1", spec1)->required();
  surface->add_option("spec2", spec2)->required();
  surface->add_option("spec3", spec3)->required();
  surface->add_option("--steps", steps, "grid steps per axis (default 40)");
  surface->add_option("--n", n, "grid size (default 4096)");
  surface->add_option("--out", out_path, "CSV output path")->required();

  CLI::App* geodesic = app.add_subcommand(
      "geodesic", "Logarithmic-path length and geodesic residual");
  geodesic->add_option("spec1", spec1)->required();
  geodesic->add_option("spec2", spec2)->required();
  geodesic->add_option("--frames", frames, "path frames (default 1001)");
  geodesic->add_option("--n", n, "grid size (default 4096)");
  geodesic->add_option("--out", out_path, "write the JSON report here");

  CLI::App* verify = app.add_subcommand(
      "verify",
      "Monte-Carlo check: simulate prediction with a mismatched model and "
      "compare the empirical error variance with the analytic value");
  verify->add_option("spec_true", spec1)->required();
  verify->add_option("spec_model", spec2)->required();
  verify->add_option("--samples", samples, "sample count (default 10^6)");
  verify->add_option("--filter-len", filter_len,
                     "synthesis/predictor length (default 256)");
  verify->add_option("--seed", seed, "RNG seed (default 0)");
  verify->add_option("--n", n, "grid size (default 4096)");
  verify->add_option("--out", out_path, "write the JSON report here");

  CLI::App* moments = app.add_subcommand(
      "moments",
      "Moment-constrained closest density to a prior (solves the "
      "constrained approximation problem)");
  moments->add_option("source", spec1,
                      "spectrum spec whose moments are matched");
  moments->add_option("--moments", moments_csv,
                      "comma-separated R_0..R_n (alternative to source)");
  moments->add_option("--prior", prior_spec, "prior spectrum spec")
      ->required();
  moments->add_option("--n-moments", n_moments,
                      "moment count when a source spectrum is given");
  moments->add_option("--tol", tol, "moment residual tolerance");
  moments->add_option("--max-iter", max_iter, "Newton iteration cap");
  moments->add_option("--n", n, "grid size (default 4096)");
  moments->add_option("--out", out_path,
                      "write the solution density as a samples spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (dist->parsed()) return cmd_dist(spec1, spec2, measure, n, out_path);
    if (surface->parsed()) {
      return cmd_surface(spec1, spec2, spec3, steps, n, out_path);
    }
    if (geodesic->parsed()) {
      return cmd_geodesic(spec1, spec2, frames, n, out_path);
    }
    if (verify->parsed()) {
      return cmd_verify(spec1, spec2, samples, filter_len, seed, n, out_path);
    }
    if (moments->parsed()) {
      return cmd_moments(spec1, moments_csv, prior_spec, n_moments, tol,
                         max_iter, n, out_path);
    }
  } catch (const SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFail;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}

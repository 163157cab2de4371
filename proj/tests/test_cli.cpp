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
// End-to-end checks of the command-line tool: flags, exit codes, record
// formats and determinism.  The binary path comes from the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectral/distances.hpp"
#include "spectral/spectrum_spec.hpp"
#include "test_support.hpp"

using namespace spectral;
using namespace spectral::testing;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string out_file = "/tmp/spectral_cli_stdout.txt";
  const std::string cmd = std::string(SPECTRAL_CLI_PATH) + " " + args + " > " +
                          out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream text;
  text << in.rdbuf();
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return RunResult{code, text.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

const char* kMa1File = "/tmp/spectral_cli_ma1.json";
const char* kFlatFile = "/tmp/spectral_cli_flat.json";

void write_fixture_specs() {
  write_file(kMa1File, R"({"type":"rational","num":[1,-0.5],"den":[1]})");
  write_file(kFlatFile, R"({"type":"rational","num":[1],"den":[1]})");
}

}  // namespace

TEST_CASE("dist: identical builtins give exactly zero") {
  const RunResult r = run_cli("dist paper_f1 paper_f1 --measure ag");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() >= 2);
  CHECK(std::stod(lines[0]) == 0.0);
}

TEST_CASE("dist: worked AR(1) value and record fields") {
  write_fixture_specs();
  const RunResult r = run_cli(std::string("dist ") + kFlatFile + " " +
                              kMa1File + " --measure ag --n 8192");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(std::abs(std::stod(lines[0]) - 0.287682) < 1e-6);

  const nlohmann::json record = nlohmann::json::parse(lines[1]);
  CHECK(record["command"] == "dist");
  CHECK(record["measure"] == "ag");
  CHECK(record["n"] == 8192);
  CHECK(record["inputs"].size() == 2);

  // Pass-through contract: the record value is the library result, bit for
  // bit, through the 17-digit round trip.
  const double expected =
      delta_ag(ones(8192), ma1_grid(8192)).value;
  CHECK(record["value"].get<double>() == expected);
}

TEST_CASE("dist: samples spec fixes the grid size") {
  write_fixture_specs();
  const char* samples_file = "/tmp/spectral_cli_ones8192.json";
  {
    std::ofstream out(samples_file);
    out << R"({"type":"samples","values":[1)";
    for (int i = 1; i < 8192; ++i) out << ",1";
    out << "]}";
  }
  const RunResult r = run_cli(std::string("dist ") + samples_file + " " +
                              kMa1File + " --measure ag --n 8192");
  CHECK(r.exit_code == 0);
  CHECK(std::abs(std::stod(split_lines(r.out)[0]) - 0.287682) < 1e-6);

  // Omitting --n adopts the samples length; a conflicting --n is rejected.
  CHECK(run_cli(std::string("dist ") + samples_file + " " + kMa1File).exit_code ==
        0);
  CHECK(run_cli(std::string("dist ") + samples_file + " " + kMa1File +
                " --n 4096")
            .exit_code == 2);
  std::remove(samples_file);
}

TEST_CASE("dist: an overflowed distance reports a null record value") {
  const char* big = "/tmp/spectral_cli_big.json";
  const char* tiny = "/tmp/spectral_cli_tiny.json";
  auto samples16 = [](const char* path, const char* v) {
    std::ofstream out(path);
    out << R"({"type":"samples","values":[)" << v;
    for (int i = 1; i < 16; ++i) out << "," << v;
    out << "]}";
  };
  samples16(big, "1e308");
  samples16(tiny, "1e-308");
  const RunResult r =
      run_cli(std::string("dist ") + big + " " + tiny + " --measure ag");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "inf");
  const nlohmann::json record = nlohmann::json::parse(lines[1]);
  CHECK(record["value"].is_null());
  std::remove(big);
  std::remove(tiny);
}

TEST_CASE("dist: every measure name parses") {
  for (const char* m : {"ag", "sym", "kl", "smooth", "rs(0,1)", "rs(-1,1)",
                        "rs(-inf,inf)"}) {
    const RunResult r = run_cli(
        std::string("dist paper_f1 paper_f2 --n 1024 --measure '") + m + "'");
    CHECK(r.exit_code == 0);
  }
  CHECK(run_cli("dist paper_f1 paper_f2 --measure wobble").exit_code == 2);
  CHECK(run_cli("dist paper_f1 paper_f2 --measure 'rs(1,0)'").exit_code == 2);
}

TEST_CASE("surface: header, corners and determinism") {
  const char* out1 = "/tmp/spectral_cli_surface1.csv";
  const char* out2 = "/tmp/spectral_cli_surface2.csv";
  const std::string base =
      "surface paper_f1 paper_f2 paper_f3 --steps 4 --n 1024 --out ";
  CHECK(run_cli(base + out1).exit_code == 0);
  CHECK(run_cli(base + out2).exit_code == 0);

  const std::string csv = slurp(out1);
  CHECK(csv == slurp(out2));

  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 1 + 25);
  CHECK(lines[0] == "tau,sigma,delta_ag,delta_sym,delta_kl");

  const SpectrumGrid f1 = paper_spectrum("paper_f1", 1024);
  const SpectrumGrid f2 = paper_spectrum("paper_f2", 1024);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::istringstream row(lines[li]);
    std::string field;
    std::vector<double> vals;
    while (std::getline(row, field, ',')) vals.push_back(std::stod(field));
    REQUIRE(vals.size() == 5);
    // Nonnegative everywhere; exactly zero on the tau = 0 edge.
    CHECK(vals[2] >= 0.0);
    CHECK(vals[3] >= 0.0);
    CHECK(vals[4] >= 0.0);
    if (vals[0] == 0.0) {
      CHECK(vals[2] == 0.0);
      CHECK(vals[3] == 0.0);
      CHECK(vals[4] == 0.0);
    }
    if (vals[0] == 1.0 && vals[1] == 0.0) {
      CHECK(std::abs(vals[2] - delta_ag(f1, f2).value) <= 1e-12);
      CHECK(std::abs(vals[3] - delta_sym(f1, f2).value) <= 1e-12);
      CHECK(std::abs(vals[4] - delta_kl(f1, f2).value) <= 1e-12);
    }
  }
  std::remove(out1);
  std::remove(out2);
}

TEST_CASE("surface: output is independent of the worker count") {
  const char* out1 = "/tmp/spectral_cli_threads1.csv";
  const char* out8 = "/tmp/spectral_cli_threads8.csv";
  const std::string base =
      "surface paper_f1 paper_f2 paper_f3 --steps 3 --n 1024 --out ";
  CHECK(std::system(("SPECTRAL_METRICS_THREADS=1 " +
                     std::string(SPECTRAL_CLI_PATH) + " " + base + out1 +
                     " > /dev/null")
                        .c_str()) == 0);
  CHECK(std::system(("SPECTRAL_METRICS_THREADS=8 " +
                     std::string(SPECTRAL_CLI_PATH) + " " + base + out8 +
                     " > /dev/null")
                        .c_str()) == 0);
  CHECK(slurp(out1) == slurp(out8));
  CHECK(!slurp(out1).empty());
  std::remove(out1);
  std::remove(out8);
}

TEST_CASE("geodesic: ray endpoints report a zero-speed note") {
  const RunResult r = run_cli("geodesic paper_f2 paper_f2 --frames 11 --n 1024");
  CHECK(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(!lines.empty());
  const nlohmann::json record = nlohmann::json::parse(lines.back());
  CHECK(record["logpath_length"].get<double>() == 0.0);
  CHECK(std::abs(record["path_length"].get<double>()) <= 1e-12);
  CHECK(record["geodesic_residual"].is_null());
  CHECK(record.contains("note"));
}

TEST_CASE("geodesic: log-path length of the AR(1) pair") {
  write_fixture_specs();
  const RunResult r = run_cli(std::string("geodesic ") + kFlatFile + " " +
                              kMa1File + " --frames 1001 --n 4096");
  CHECK(r.exit_code == 0);
  const nlohmann::json record =
      nlohmann::json::parse(split_lines(r.out).back());
  const double expected = std::sqrt(2.0 * dilog(0.25));
  CHECK(std::abs(record["logpath_length"].get<double>() - expected) < 1e-4);
  CHECK(std::abs(record["path_length"].get<double>() - expected) < 1e-4);
  CHECK(record["geodesic_residual"].get<double>() <= 1e-9);
}

TEST_CASE("verify: deterministic PASS on the matched case") {
  write_fixture_specs();
  const std::string cmd = std::string("verify ") + kMa1File + " " + kMa1File +
                          " --samples 20000 --filter-len 64 --seed 42 --n 1024";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("PASS") != std::string::npos);

  const nlohmann::json record = nlohmann::json::parse(split_lines(a.out).back());
  CHECK(record["pass"] == true);
  CHECK(record["samples"] == 20000);
  CHECK(record["seed"] == 42);
}

TEST_CASE("verify: a synthesis filter far too short for the spectrum fails") {
  // paper_f2's outer factor is an exact degree-2 polynomial, so the
  // factorization gate passes at any length, but its synthesis filter
  // decays like 0.995^k: 64 taps cannot carry the process correlation and
  // the empirical variance falls far outside the analytic window.
  const RunResult r = run_cli(
      "verify paper_f2 paper_f2 --samples 200000 --filter-len 64 --seed 3 "
      "--n 4096");
  CHECK(r.exit_code == 5);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("moments: white noise fixed point and density reuse") {
  const char* density_file = "/tmp/spectral_cli_density.json";
  const RunResult r = run_cli(
      std::string("moments --moments 1,0 --prior builtin:paper_f1 --n 1024 ") +
      "--out " + density_file + " --tol 1e-9");
  // Prior is f1 here, so this exercises the homotopy; the white-noise
  // fixed point is specific to a flat prior.
  CHECK(r.exit_code == 0);

  const RunResult flat = run_cli(std::string("moments --moments 1,0 --prior ") +
                                 kFlatFile + " --n 1024");
  CHECK(flat.exit_code == 0);
  const nlohmann::json record =
      nlohmann::json::parse(split_lines(flat.out).back());
  CHECK(std::abs(record["kappa"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(record["lambdas"][1].get<double>()) < 1e-9);

  // The emitted density is a loadable samples spec.
  const SpectrumSpec s = load_spectrum_spec(density_file);
  CHECK(spec_fixed_size(s) == std::size_t{1024});
  std::remove(density_file);
}

TEST_CASE("moments: a feasible prior converges with near-zero distance") {
  const RunResult r = run_cli(
      "moments paper_f2 --prior paper_f2 --n-moments 4 --n 1024");
  CHECK(r.exit_code == 0);
  const nlohmann::json record = nlohmann::json::parse(split_lines(r.out).back());
  CHECK(record["residual"].get<double>() <= 1e-9);
}

TEST_CASE("moments: AR(1) reconstruction from two moments") {
  write_fixture_specs();
  const RunResult r = run_cli(
      std::string("moments --moments 1.3333333333333333,0.6666666666666666 ") +
      "--prior " + kFlatFile + " --n 4096 --out /tmp/spectral_cli_ar1.json");
  CHECK(r.exit_code == 0);
  const SpectrumGrid density =
      realize(load_spectrum_spec("/tmp/spectral_cli_ar1.json"), 4096);
  const SpectrumGrid expected = ar1_grid(4096);
  for (std::size_t k = 0; k < density.size(); k += 113) {
    CHECK(rel_close(density[k], expected[k], 1e-5));
  }
  std::remove("/tmp/spectral_cli_ar1.json");
}

TEST_CASE("exit codes for the documented failure classes") {
  // 2: unparsable spec file.
  write_file("/tmp/spectral_cli_bad.json", "{not json");
  CHECK(run_cli("dist /tmp/spectral_cli_bad.json paper_f1").exit_code == 2);
  CHECK(run_cli("dist paper_f1").exit_code == 2);  // missing argument
  CHECK(run_cli("dist missing_file.json paper_f1").exit_code == 2);

  // 3: numeric failure (denominator root lands on the sampling grid).
  write_file("/tmp/spectral_cli_polezero.json",
             R"({"type":"rational","num":[1],"den":[-1,1]})");
  CHECK(run_cli("dist /tmp/spectral_cli_polezero.json paper_f1 --n 4096")
            .exit_code == 3);

  // 4: unwritable output path.
  CHECK(run_cli("surface paper_f1 paper_f2 paper_f3 --steps 2 --n 1024 "
                "--out /nonexistent-dir/surface.csv")
            .exit_code == 4);

  // 6: solver starved of iterations.
  CHECK(run_cli("moments paper_f1 --prior paper_f2 --n-moments 4 --n 1024 "
                "--max-iter 1")
            .exit_code == 6);

  std::remove("/tmp/spectral_cli_bad.json");
  std::remove("/tmp/spectral_cli_polezero.json");
}

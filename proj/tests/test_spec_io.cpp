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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "spectral/spectrum_spec.hpp"
#include "test_support.hpp"

using namespace spectral;
using namespace spectral::testing;

TEST_CASE("parsing the tagged union") {
  const SpectrumSpec r = parse_spectrum_spec(
      R"({"type":"rational","num":[-0.99,1],"den":[0.99,0.6,1]})");
  CHECK(std::holds_alternative<RationalSpec>(r));

  const SpectrumSpec b = parse_spectrum_spec(
      R"({"type":"builtin","name":"paper_f2"})");
  CHECK(std::holds_alternative<BuiltinSpec>(b));

  std::string samples = R"({"type":"samples","values":[)";
  for (int i = 0; i < 16; ++i) samples += (i ? ",1.5" : "1.5");
  samples += "]}";
  const SpectrumSpec s = parse_spectrum_spec(samples);
  CHECK(std::holds_alternative<SamplesSpec>(s));
  CHECK(spec_fixed_size(s) == std::size_t{16});
  CHECK(!spec_fixed_size(r).has_value());
}

TEST_CASE("schema violations name the offending field") {
  CHECK_THROWS_AS(parse_spectrum_spec("{"), SpecParseError);
  CHECK_THROWS_AS(parse_spectrum_spec(R"({"type":"wobble"})"), SpecParseError);
  CHECK_THROWS_AS(parse_spectrum_spec(R"({"type":"rational","num":[1]})"),
                  SpecParseError);
  CHECK_THROWS_AS(
      parse_spectrum_spec(R"({"type":"rational","num":["x"],"den":[1]})"),
      SpecParseError);
  CHECK_THROWS_AS(parse_spectrum_spec(R"({"type":"builtin","name":"f9"})"),
                  SpecParseError);
  // 12 samples: not a power of two >= 16.
  CHECK_THROWS_AS(
      parse_spectrum_spec(
          R"({"type":"samples","values":[1,1,1,1,1,1,1,1,1,1,1,1]})"),
      SpecParseError);
}

TEST_CASE("builtins expand to their exact rational forms") {
  const SpectrumGrid via_builtin =
      realize(BuiltinSpec{"paper_f1"}, 4096);
  const SpectrumGrid direct =
      sample_rational(RationalPsd({-0.99, 1.0}, {0.99, 0.6, 1.0}), 4096);
  for (std::size_t k = 0; k < via_builtin.size(); ++k) {
    CHECK(via_builtin[k] == direct[k]);
  }

  // f3: numerator (z+0.9)(z^2+0.6z+0.99), denominator (z^2+0.9z+0.99)^2.
  const RationalPsd f3 = builtin_psd("paper_f3");
  const std::vector<double> num_expected = {0.891, 1.53, 1.5, 1.0};
  const std::vector<double> den_expected = {0.9801, 1.782, 2.79, 1.8, 1.0};
  REQUIRE(f3.num_coeffs().size() == num_expected.size());
  REQUIRE(f3.den_coeffs().size() == den_expected.size());
  for (std::size_t i = 0; i < num_expected.size(); ++i) {
    CHECK(f3.num_coeffs()[i] == doctest::Approx(num_expected[i]).epsilon(1e-15));
  }
  for (std::size_t i = 0; i < den_expected.size(); ++i) {
    CHECK(f3.den_coeffs()[i] == doctest::Approx(den_expected[i]).epsilon(1e-15));
  }
}

TEST_CASE("load_spectrum_spec resolves builtins and files") {
  CHECK(std::holds_alternative<BuiltinSpec>(load_spectrum_spec("paper_f1")));
  CHECK(std::holds_alternative<BuiltinSpec>(
      load_spectrum_spec("builtin:paper_f3")));
  CHECK_THROWS_AS(load_spectrum_spec("builtin:nope"), SpecParseError);
  CHECK_THROWS_AS(load_spectrum_spec("/no/such/file.json"), SpecParseError);

  const std::string path = "/tmp/spectral_spec_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"type":"rational","num":[1,-0.5],"den":[1]})";
  }
  const SpectrumSpec s = load_spectrum_spec(path);
  const SpectrumGrid g = realize(s, 4096);
  const SpectrumGrid expected = ma1_grid(4096);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(g[k] == expected[k]);
  std::remove(path.c_str());
}

TEST_CASE("samples realize only at their own length") {
  std::vector<double> v(32, 2.0);
  const SamplesSpec s{v};
  const SpectrumGrid g = realize(s, 32);
  CHECK(g.size() == 32);
  CHECK_THROWS_AS(realize(SpectrumSpec{s}, 64), LengthMismatch);
}

TEST_CASE("digests are stable and discriminating") {
  const SpectrumSpec a = BuiltinSpec{"paper_f1"};
  const SpectrumSpec b = BuiltinSpec{"paper_f2"};
  CHECK(spec_digest(a) == spec_digest(a));
  CHECK(spec_digest(a) != spec_digest(b));
  CHECK(spec_digest(a).size() == 16);
}

TEST_CASE("samples spec JSON round-trips bit-exactly") {
  const SpectrumGrid g = random_grid(64, 123);
  const std::string json = samples_spec_json(g);
  const SpectrumSpec s = parse_spectrum_spec(json);
  const SpectrumGrid back = realize(s, 64);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(back[k] == g[k]);
}

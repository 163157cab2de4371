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

#include <cmath>
#include <vector>

#include "spectral/distances.hpp"
#include "spectral/error.hpp"
#include "spectral/geodesics.hpp"
#include "spectral/prediction.hpp"
#include "test_support.hpp"

using namespace spectral;
using namespace spectral::testing;

TEST_CASE("AR(1) worked values at n = 8192") {
  const std::size_t n = 8192;
  const SpectrumGrid one = ones(n);
  const SpectrumGrid ma = ma1_grid(n);

  CHECK(std::abs(delta_ag(one, ma).value - std::log(4.0 / 3.0)) < 1e-9);
  CHECK(std::abs(delta_sym(one, ma).value - std::log(5.0 / 3.0)) < 1e-9);
  CHECK(std::abs(delta_kl(one, ma).value - std::log(1.25)) < 1e-9);
  CHECK(std::abs(rho_smooth(one, ma) - 5.0 / 3.0) < 1e-9);
  CHECK(std::abs(delta_smooth(one, ma).value - std::log(5.0 / 3.0)) < 1e-9);
}

TEST_CASE("identical and proportional spectra have distance exactly zero") {
  const SpectrumGrid f = random_grid(1024, 17);
  const SpectrumGrid cf = scale_grid(f, 7.3);

  CHECK(delta_ag(f, f).value == 0.0);
  CHECK(delta_ag(f, cf).value == 0.0);
  CHECK(delta_sym(f, cf).value == 0.0);
  CHECK(delta_kl(f, cf).value == 0.0);
  CHECK(delta_smooth(f, cf).value == 0.0);
  CHECK(delta_rs(f, cf, MeanOrder::finite(-1.0), MeanOrder::finite(1.0))
            .value == 0.0);
  CHECK(std::abs(rho_smooth(f, f) - 1.0) < 1e-12);
}

TEST_CASE("delta_sym is symmetric and consistent with its two forms") {
  const std::size_t n = 4096;
  const SpectrumGrid f1 = paper_spectrum("paper_f1", n);
  const SpectrumGrid f2 = paper_spectrum("paper_f2", n);

  CHECK(std::abs(delta_sym(f1, f2).value - delta_sym(f2, f1).value) < 1e-13);

  const double sum_form = delta_ag(f1, f2).value + delta_ag(f2, f1).value;
  CHECK(std::abs(delta_sym(f1, f2).value - sum_form) < 1e-12);

  // Product-of-arithmetic-means form.
  const double prod_form =
      std::log(mean(ratio(f1, f2)) * mean(ratio(f2, f1)));
  CHECK(std::abs(delta_sym(f1, f2).value - prod_form) < 1e-12);
}

TEST_CASE("delta_rs specializations and ordering errors") {
  const std::size_t n = 8192;
  const SpectrumGrid one = ones(n);
  const SpectrumGrid ma = ma1_grid(n);
  const SpectrumGrid f1 = paper_spectrum("paper_f1", n);
  const SpectrumGrid f2 = paper_spectrum("paper_f2", n);

  CHECK(std::abs(delta_rs(one, ma, MeanOrder::zero(), MeanOrder::finite(1.0))
                     .value -
                 std::log(4.0 / 3.0)) < 1e-9);
  CHECK(std::abs(
            delta_rs(one, ma, MeanOrder::finite(-1.0), MeanOrder::finite(1.0))
                .value -
            std::log(5.0 / 3.0)) < 1e-9);

  CHECK(std::abs(delta_rs(f1, f2, MeanOrder::zero(), MeanOrder::finite(1.0))
                     .value -
                 delta_ag(f1, f2).value) < 1e-12);
  CHECK(std::abs(
            delta_rs(f1, f2, MeanOrder::finite(-1.0), MeanOrder::finite(1.0))
                .value -
            delta_sym(f1, f2).value) < 1e-12);

  CHECK_THROWS_AS(
      delta_rs(f1, f2, MeanOrder::finite(1.0), MeanOrder::finite(-1.0)),
      BadOrder);
  CHECK_THROWS_AS(delta_rs(f1, f2, MeanOrder::zero(), MeanOrder::zero()),
                  BadOrder);

  const DistanceValue d = delta_rs(f1, f2, MeanOrder::minus_infinity(),
                                   MeanOrder::plus_infinity());
  CHECK(d.value > 0.0);
  CHECK(d.order_r.has_value());
  CHECK(d.order_s.has_value());
}

TEST_CASE("nonnegativity on random pairs") {
  const std::vector<std::pair<MeanOrder, MeanOrder>> rs = {
      {MeanOrder::finite(-2.0), MeanOrder::finite(2.0)},
      {MeanOrder::minus_infinity(), MeanOrder::zero()},
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SpectrumGrid a = random_grid(512, seed);
    const SpectrumGrid b = random_grid(512, seed + 1000);
    CHECK(delta_ag(a, b).value >= 0.0);
    CHECK(delta_sym(a, b).value >= 0.0);
    CHECK(delta_kl(a, b).value >= 0.0);
    CHECK(delta_smooth(a, b).value >= 0.0);
    CHECK(rho_smooth(a, b) >= 1.0 - 1e-12);
    for (const auto& [r, s] : rs) {
      CHECK(delta_rs(a, b, r, s).value >= 0.0);
    }
  }
}

TEST_CASE("scale invariance of every measure") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectrumGrid a = random_grid(512, seed);
    const SpectrumGrid b = random_grid(512, seed + 500);
    const SpectrumGrid ca = scale_grid(a, 12.75);
    const SpectrumGrid cb = scale_grid(b, 0.031);

    auto check_invariant = [&](double base, double scaled) {
      CHECK(std::abs(base - scaled) <=
            1e-11 * std::max({std::abs(base), std::abs(scaled), 1e-30}));
    };
    check_invariant(delta_ag(a, b).value, delta_ag(ca, cb).value);
    check_invariant(delta_sym(a, b).value, delta_sym(ca, cb).value);
    check_invariant(delta_kl(a, b).value, delta_kl(ca, cb).value);
    check_invariant(delta_smooth(a, b).value, delta_smooth(ca, cb).value);
    check_invariant(
        delta_rs(a, b, MeanOrder::finite(-2.0), MeanOrder::finite(2.0)).value,
        delta_rs(ca, cb, MeanOrder::finite(-2.0), MeanOrder::finite(2.0))
            .value);
  }
}

TEST_CASE("monotonicity along log intervals from f1") {
  const std::size_t n = 4096;
  const SpectrumGrid f1 = paper_spectrum("paper_f1", n);
  for (const char* other : {"paper_f2", "paper_f3"}) {
    const SpectrumGrid fb = paper_spectrum(other, n);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double tau = static_cast<double>(i) / 100.0;
      const double d = delta_ag(f1, log_interval(f1, fb, tau)).value;
      CHECK(d >= prev - 1e-10);
      prev = d;
    }
  }
}

TEST_CASE("convexity of delta_ag along the f2->f3 interval") {
  const std::size_t n = 4096;
  const SpectrumGrid f1 = paper_spectrum("paper_f1", n);
  const SpectrumGrid f2 = paper_spectrum("paper_f2", n);
  const SpectrumGrid f3 = paper_spectrum("paper_f3", n);
  std::vector<double> vals(101);
  for (int i = 0; i <= 100; ++i) {
    const double tau = static_cast<double>(i) / 100.0;
    vals[i] = delta_ag(f1, log_interval(f2, f3, tau)).value;
  }
  for (int i = 1; i < 100; ++i) {
    CHECK(vals[i + 1] - 2.0 * vals[i] + vals[i - 1] >= -1e-8);
  }
}

TEST_CASE("filtering-oracle equivalence through the closed forms") {
  const std::size_t n = 8192;
  const SpectrumGrid f1 = paper_spectrum("paper_f1", n);
  const SpectrumGrid f2 = paper_spectrum("paper_f2", n);

  const double pred_ratio =
      mismatched_prediction_variance(f1, f2, 2048, VarianceMode::kClosedForm) /
      prediction_variance(f1);
  CHECK(rel_close(std::exp(delta_ag(f1, f2).value), pred_ratio, 1e-8));

  const double smooth_ratio =
      mismatched_smoothing_variance(f1, f2) / smoothing_variance(f1);
  CHECK(rel_close(std::exp(delta_smooth(f1, f2).value), smooth_ratio, 1e-10));
}

TEST_CASE("delta_smooth homogeneity in both arguments") {
  const std::size_t n = 4096;
  const SpectrumGrid f1 = paper_spectrum("paper_f1", n);
  const SpectrumGrid f2 = paper_spectrum("paper_f2", n);
  const double base = delta_smooth(f1, f2).value;
  const double scaled =
      delta_smooth(scale_grid(f1, 3.0), scale_grid(f2, 5.0)).value;
  CHECK(std::abs(base - scaled) < 1e-12);
}

TEST_CASE("overflowing ratios produce the +inf marker") {
  const SpectrumGrid big = SpectrumGrid::constant(16, 1e308);
  const SpectrumGrid tiny = SpectrumGrid::constant(16, 1e-308);
  CHECK(delta_ag(big, tiny).is_infinite());
  CHECK(delta_rs(big, tiny, MeanOrder::finite(-1.0), MeanOrder::finite(1.0))
            .is_infinite());
}

TEST_CASE("length mismatch is rejected") {
  const SpectrumGrid a = ones(64);
  const SpectrumGrid b = ones(128);
  CHECK_THROWS_AS(delta_ag(a, b), LengthMismatch);
  CHECK_THROWS_AS(delta_kl(a, b), LengthMismatch);
  CHECK_THROWS_AS(rho_smooth(a, b), LengthMismatch);
}

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

#ifndef SPECTRAL_TESTS_TEST_SUPPORT_HPP
#define SPECTRAL_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spectral/grid.hpp"
#include "spectral/spectrum_spec.hpp"

namespace spectral::testing {

// The worked AR(1) shapes: a monic MA(1) spectrum and its all-pole inverse.
inline SpectrumGrid ma1_grid(std::size_t n) {  // |1 - 0.5 e^{j theta}|^2
  return sample_rational(RationalPsd({1.0, -0.5}, {1.0}), n);
}

inline SpectrumGrid ar1_grid(std::size_t n) {  // 1 / |1 - 0.5 e^{j theta}|^2
  return sample_rational(RationalPsd({1.0}, {1.0, -0.5}), n);
}

inline SpectrumGrid ones(std::size_t n) {
  return SpectrumGrid::constant(n, 1.0);
}

inline SpectrumGrid paper_spectrum(const char* name, std::size_t n) {
  return sample_rational(builtin_psd(name), n);
}

// Li_2(x) by its defining series; converges to full precision for x <= 1/4
// well before 60 terms.
inline double dilog(double x) {
  double sum = 0.0;
  double xv = 1.0;
  for (int k = 1; k <= 60; ++k) {
    xv *= x;
    sum += xv / (static_cast<double>(k) * k);
  }
  return sum;
}

// Random strictly positive grid with values in [lo, hi], log-uniform.
inline SpectrumGrid random_grid(std::size_t n, std::uint64_t seed,
                                double lo = 0.2, double hi = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(u(rng));
  return SpectrumGrid(std::move(v));
}

// Random even-in-theta grid (a real-process spectrum): a positive cosine
// polynomial exponentiated.
inline SpectrumGrid random_even_grid(std::size_t n, std::uint64_t seed,
                                     int degree = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<double> coef(static_cast<std::size_t>(degree) + 1);
  for (auto& c : coef) c = u(rng);
  std::vector<double> v(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double th = theta_at(n, l);
    double x = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k) {
      x += coef[k] * std::cos(static_cast<double>(k) * th);
    }
    v[l] = std::exp(x);
  }
  return SpectrumGrid(std::move(v));
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace spectral::testing

#endif  // SPECTRAL_TESTS_TEST_SUPPORT_HPP

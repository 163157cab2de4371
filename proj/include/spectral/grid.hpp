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

#ifndef SPECTRAL_GRID_HPP
#define SPECTRAL_GRID_HPP

#include <cstddef>
#include <vector>

namespace spectral {

inline constexpr std::size_t kMinGridSize = 16;

// Grid point k of an n-point uniform frequency grid over [-pi, pi).
double theta_at(std::size_t n, std::size_t k);

// A strictly positive power spectral density sampled on the uniform grid
// theta_k = -pi + 2*pi*k/n.  The grid itself is implicit: only the samples
// are stored.  Every sample is finite and > 0; n >= 16.  Immutable after
// construction.
class SpectrumGrid {
 public:
  explicit SpectrumGrid(std::vector<double> values);

  static SpectrumGrid constant(std::size_t n, double value);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double theta(std::size_t k) const { return theta_at(values_.size(), k); }

 private:
  std::vector<double> values_;
};

// A real-valued grid without the positivity invariant.  Log-spectra and
// perturbation directions live here so a SpectrumGrid can never hold a
// nonpositive sample.
class SignedGrid {
 public:
  explicit SignedGrid(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double theta(std::size_t k) const { return theta_at(values_.size(), k); }

 private:
  std::vector<double> values_;
};

// PSD given as |num(e^{j*theta})|^2 / |den(e^{j*theta})|^2 with real
// polynomial coefficients in ascending powers of z.  The denominator must
// not vanish on the unit circle (checked on a fine grid at construction);
// the numerator must not be identically zero.
class RationalPsd {
 public:
  RationalPsd(std::vector<double> num_coeffs, std::vector<double> den_coeffs);

  const std::vector<double>& num_coeffs() const { return num_; }
  const std::vector<double>& den_coeffs() const { return den_; }

  // Value at angle theta; the exact arithmetic path sample_rational uses.
  double eval(double theta) const;

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

// Samples a rational PSD on the n-point grid.  Throws
// DenominatorZeroOnCircle when |den| falls below 1e-12 at a grid point and
// NonpositiveSample when the numerator vanishes at a grid point.
SpectrumGrid sample_rational(const RationalPsd& psd, std::size_t n);

// Pointwise operations.  ratio/product/pow_grid/scale_grid preserve
// positivity; log_grid returns the relaxed signed type.
SpectrumGrid ratio(const SpectrumGrid& f, const SpectrumGrid& g);
SpectrumGrid product(const SpectrumGrid& f, const SpectrumGrid& g);
SignedGrid log_grid(const SpectrumGrid& f);
SpectrumGrid pow_grid(const SpectrumGrid& f, double p);
SpectrumGrid scale_grid(const SpectrumGrid& f, double c);  // c > 0

// f / mean(f): the returned grid has mean 1 up to accumulation rounding.
SpectrumGrid normalize(const SpectrumGrid& f);

}  // namespace spectral

#endif  // SPECTRAL_GRID_HPP

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

#include "spectral/grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "spectral/error.hpp"
#include "spectral/kahan.hpp"

namespace spectral {

namespace {

constexpr double kDenominatorTol = 1e-12;
// Size of the circle scan used to validate RationalPsd denominators.  Odd,
// so it does not alias with power-of-two sample grids and constructor
// checks stay independent of later sampling choices.
constexpr std::size_t kConstructionScanSize = 8191;

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw LengthMismatch(std::string(what) + ": grid sizes differ (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

std::complex<double> horner(const std::vector<double>& coeffs,
                            std::complex<double> z) {
  std::complex<double> v(0.0, 0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    v = v * z + coeffs[i];
  }
  return v;
}

}  // namespace

double theta_at(std::size_t n, std::size_t k) {
  return -std::numbers::pi +
         (2.0 * std::numbers::pi / static_cast<double>(n)) *
             static_cast<double>(k);
}

SpectrumGrid::SpectrumGrid(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < kMinGridSize) {
    throw InvalidArgument("SpectrumGrid: need at least " +
                          std::to_string(kMinGridSize) + " samples, got " +
                          std::to_string(values_.size()));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double v = values_[k];
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidArgument("SpectrumGrid: sample " + std::to_string(k) +
                            " is not finite and strictly positive (" +
                            std::to_string(v) + ")");
    }
  }
}

SpectrumGrid SpectrumGrid::constant(std::size_t n, double value) {
  return SpectrumGrid(std::vector<double>(n, value));
}

SignedGrid::SignedGrid(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < kMinGridSize) {
    throw InvalidArgument("SignedGrid: need at least " +
                          std::to_string(kMinGridSize) + " samples");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw InvalidArgument("SignedGrid: sample " + std::to_string(k) +
                            " is not finite");
    }
  }
}

RationalPsd::RationalPsd(std::vector<double> num_coeffs,
                         std::vector<double> den_coeffs)
    : num_(std::move(num_coeffs)), den_(std::move(den_coeffs)) {
  if (num_.empty() || den_.empty()) {
    throw InvalidArgument("RationalPsd: empty coefficient array");
  }
  for (double c : num_) {
    if (!std::isfinite(c)) throw InvalidArgument("RationalPsd: non-finite numerator coefficient");
  }
  for (double c : den_) {
    if (!std::isfinite(c)) throw InvalidArgument("RationalPsd: non-finite denominator coefficient");
  }
  bool num_nonzero = false;
  for (double c : num_) num_nonzero = num_nonzero || c != 0.0;
  if (!num_nonzero) {
    throw InvalidArgument("RationalPsd: numerator is identically zero");
  }
  for (std::size_t k = 0; k < kConstructionScanSize; ++k) {
    const double th = theta_at(kConstructionScanSize, k);
    const std::complex<double> z(std::cos(th), std::sin(th));
    if (std::abs(horner(den_, z)) < kDenominatorTol) {
      throw DenominatorZeroOnCircle(
          "RationalPsd: denominator vanishes on the unit circle near theta = " +
          std::to_string(th));
    }
  }
}

double RationalPsd::eval(double theta) const {
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  const double nv = std::norm(horner(num_, z));
  const double dv = std::norm(horner(den_, z));
  return nv / dv;
}

SpectrumGrid sample_rational(const RationalPsd& psd, std::size_t n) {
  if (n < kMinGridSize) {
    throw InvalidArgument("sample_rational: grid size must be >= " +
                          std::to_string(kMinGridSize));
  }
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = theta_at(n, k);
    const std::complex<double> z(std::cos(th), std::sin(th));
    if (std::abs(horner(psd.den_coeffs(), z)) < kDenominatorTol) {
      throw DenominatorZeroOnCircle(
          "sample_rational: |den| below 1e-12 at theta = " +
          std::to_string(th));
    }
    const double v = psd.eval(th);
    if (v == 0.0) {
      throw NonpositiveSample("sample_rational: numerator vanishes at theta = " +
                              std::to_string(th));
    }
    if (!std::isfinite(v)) {
      throw OverflowError("sample_rational: sample overflowed at theta = " +
                          std::to_string(th));
    }
    out[k] = v;
  }
  return SpectrumGrid(std::move(out));
}

SpectrumGrid ratio(const SpectrumGrid& f, const SpectrumGrid& g) {
  check_sizes(f.size(), g.size(), "ratio");
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] / g[k];
  return SpectrumGrid(std::move(out));
}

SpectrumGrid product(const SpectrumGrid& f, const SpectrumGrid& g) {
  check_sizes(f.size(), g.size(), "product");
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] * g[k];
  return SpectrumGrid(std::move(out));
}

SignedGrid log_grid(const SpectrumGrid& f) {
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::log(f[k]);
  return SignedGrid(std::move(out));
}

SpectrumGrid pow_grid(const SpectrumGrid& f, double p) {
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::pow(f[k], p);
  return SpectrumGrid(std::move(out));
}

SpectrumGrid scale_grid(const SpectrumGrid& f, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidArgument("scale_grid: factor must be positive and finite");
  }
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] * c;
  return SpectrumGrid(std::move(out));
}

SpectrumGrid normalize(const SpectrumGrid& f) {
  CompensatedSum acc;
  for (double v : f.values()) acc.add(v);
  const double m = acc.value() / static_cast<double>(f.size());
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] / m;
  return SpectrumGrid(std::move(out));
}

}  // namespace spectral

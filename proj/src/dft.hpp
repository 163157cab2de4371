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

#ifndef SPECTRAL_SRC_DFT_HPP
#define SPECTRAL_SRC_DFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace spectral::detail {

// Bins 0..n/2 of sum_l x[l] * e^{-2*pi*i*k*l/n} for real input x.
std::vector<std::complex<double>> real_dft_halfspectrum(
    const std::vector<double>& x);

// |p(e^{j*theta_l})|^2 on the n-point grid theta_l = -pi + 2*pi*l/n for a
// real-coefficient polynomial p in ascending powers (len(coeffs) <= n).
std::vector<double> poly_magnitude_squared_on_grid(
    const std::vector<double>& coeffs, std::size_t n);

}  // namespace spectral::detail

#endif  // SPECTRAL_SRC_DFT_HPP

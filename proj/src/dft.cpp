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

#include "dft.hpp"

#include <fftw3.h>

#include <mutex>

#include "spectral/error.hpp"

namespace spectral::detail {

namespace {

// FFTW's planner is not thread-safe; execution on plan-owned buffers is
// done under the same lock since plans here are created per call.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<std::complex<double>> real_dft_halfspectrum(
    const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument("real_dft_halfspectrum: empty input");
  const std::size_t bins = n / 2 + 1;
  std::vector<std::complex<double>> out(bins);

  std::lock_guard<std::mutex> lock(fftw_mutex());
  double* in = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(bins);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, spec,
                                        FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  for (std::size_t i = 0; i < n; ++i) in[i] = x[i];
  fftw_execute(plan);
  for (std::size_t k = 0; k < bins; ++k) {
    out[k] = std::complex<double>(spec[k][0], spec[k][1]);
  }
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(spec);
  return out;
}

std::vector<double> poly_magnitude_squared_on_grid(
    const std::vector<double>& coeffs, std::size_t n) {
  if (coeffs.size() > n) {
    throw InvalidArgument(
        "poly_magnitude_squared_on_grid: polynomial longer than grid");
  }
  // p(e^{j*theta_l}) = sum_k c_k (-1)^k e^{+2*pi*i*k*l/n}; magnitudes match
  // the conjugate forward transform of q_k = (-1)^k c_k.
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    q[k] = (k % 2 == 0) ? coeffs[k] : -coeffs[k];
  }
  const std::vector<std::complex<double>> spec = real_dft_halfspectrum(q);
  std::vector<double> out(n);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t bin = (l <= n / 2) ? l : n - l;
    out[l] = std::norm(spec[bin]);
  }
  return out;
}

}  // namespace spectral::detail

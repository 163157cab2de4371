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

#ifndef SPECTRAL_PREDICTION_HPP
#define SPECTRAL_PREDICTION_HPP

#include <cstdint>
#include <vector>

#include "spectral/grid.hpp"

namespace spectral {

// Outer spectral factorization f = g / |a(e^{j*theta})|^2 with
// a(z) = 1 + a_1 z + a_2 z^2 + ... analytic in the unit disc.  g is the
// geometric mean of f (the optimal one-step prediction error variance) and
// (-a_1, -a_2, ...) are the optimal predictor coefficients.
struct OuterFactorization {
  double g;
  std::vector<double> a_coeffs;  // a_coeffs[0] == 1
  // Relative reconstruction error of g/|a|^2 against the source grid.
  double max_rel_residual;
  double mean_rel_residual;
};

// Cepstral factorization: Fourier coefficients c_k of log f via the DFT of
// the log-sample grid, then a = exp(-sum_{k>=1} c_k z^k) truncated at m
// power-series coefficients.  Requires m <= n/2 and an even-in-theta
// spectrum (real-process spectra are even; throws AsymmetricSpectrum
// otherwise).  Throws GridTooCoarse when the mean relative reconstruction
// residual exceeds 1e-3, signalling that m or n is too small for this
// spectrum.
OuterFactorization factorize(const SpectrumGrid& f, std::size_t m);

// Default coefficient count: a quarter of the grid.
OuterFactorization factorize(const SpectrumGrid& f);

// Szego-Kolmogorov optimal one-step prediction error variance: the
// geometric mean of f.  (Grids are strictly positive, so log f is always
// grid-integrable; the degenerate deterministic case, variance zero, is
// out of numerical scope.)
double prediction_variance(const SpectrumGrid& f);

// Optimal (past-and-future) smoothing error variance: the harmonic mean.
double smoothing_variance(const SpectrumGrid& f);

enum class VarianceMode {
  // mean(|a_model(e^{j*theta})|^2 * f_true) with the length-m truncated
  // factorization evaluated on the grid; the independent filtering route.
  kTruncatedFilter,
  // mean(f_true/f_model) * g_model, the limit of the above as m grows.
  kClosedForm,
};

// Error variance of the one-step predictor designed for f_model and run
// against a process with spectrum f_true.
double mismatched_prediction_variance(
    const SpectrumGrid& f_true, const SpectrumGrid& f_model, std::size_t m,
    VarianceMode mode = VarianceMode::kTruncatedFilter);

// Optimal smoothing filter for f: h = harmonic mean, b = h/f pointwise
// (the Kolmogorov image of the smoothing error; mean(b) = 1).
struct SmoothingFilter {
  double h;
  SpectrumGrid b_values;
};

SmoothingFilter smoothing_filter(const SpectrumGrid& f);

// mean((h_model/f_model)^2 * f_true): smoothing error variance of the
// f_model-optimal smoother against f_true.  Dividing by
// smoothing_variance(f_true) gives rho_smooth(f_true, f_model).
double mismatched_smoothing_variance(const SpectrumGrid& f_true,
                                     const SpectrumGrid& f_model);

struct SimulationReport {
  double empirical_variance;
  double analytic_variance;
  double standard_error;
  std::uint64_t samples;
  std::size_t filter_len;
  std::uint64_t seed;
};

// Monte-Carlo check of the mismatched prediction variance: synthesize a
// process with spectrum f_true by filtering unit-variance white Gaussian
// noise through the truncated outer filter, run the predictor built from
// f_model, and report the empirical variance of the prediction error
// against the analytic target mean(|a_model|^2 f_true).  A warm-up prefix
// of 4*filter_len samples is discarded.  Deterministic given the seed.
// Requires filter_len <= 4096 and samples >= 10^4.
SimulationReport simulate_prediction(const SpectrumGrid& f_true,
                                     const SpectrumGrid& f_model,
                                     std::size_t filter_len,
                                     std::uint64_t samples,
                                     std::uint64_t seed);

}  // namespace spectral

#endif  // SPECTRAL_PREDICTION_HPP

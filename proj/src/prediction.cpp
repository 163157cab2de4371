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

#include "spectral/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "dft.hpp"
#include "spectral/error.hpp"
#include "spectral/kahan.hpp"
#include "spectral/means.hpp"

namespace spectral {

namespace {

// Mean relative reconstruction error above which a factorization is
// rejected outright.  The sup-norm residual is reported but not gated:
// spectra with near-circle zeros (e.g. a dip from a root of modulus ~0.995)
// concentrate slow cepstral decay at isolated frequencies while every
// variance integral still converges.
constexpr double kReconstructionGate = 1e-3;

// Largest imaginary residue tolerated in the outer coefficients; even
// spectra produce rounding-level imaginary parts only.
constexpr double kImagTol = 1e-7;

// Gaussian deviates via Box-Muller on top of mt19937_64.  The standard
// leaves normal_distribution unspecified across implementations, and the
// simulation contract is bit-identical output for a given seed.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // [0, 1)
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Power-series inverse of a(z) with a[0] = 1, truncated to len terms.
std::vector<double> invert_series(const std::vector<double>& a,
                                  std::size_t len) {
  std::vector<double> psi(len, 0.0);
  psi[0] = 1.0;
  for (std::size_t k = 1; k < len; ++k) {
    double s = 0.0;
    const std::size_t top = std::min(k, a.size() - 1);
    for (std::size_t i = 1; i <= top; ++i) s += a[i] * psi[k - i];
    psi[k] = -s;
  }
  return psi;
}

double truncated_filter_variance(const SpectrumGrid& f_true,
                                 const std::vector<double>& a_model) {
  const std::vector<double> mag2 =
      detail::poly_magnitude_squared_on_grid(a_model, f_true.size());
  CompensatedSum acc;
  for (std::size_t k = 0; k < f_true.size(); ++k) acc.add(mag2[k] * f_true[k]);
  return acc.value() / static_cast<double>(f_true.size());
}

}  // namespace

OuterFactorization factorize(const SpectrumGrid& f, std::size_t m) {
  const std::size_t n = f.size();
  if (m < 1 || m > n / 2) {
    throw InvalidArgument("factorize: need 1 <= m <= n/2, got m = " +
                          std::to_string(m) + ", n = " + std::to_string(n));
  }
  std::vector<double> logf(n);
  for (std::size_t k = 0; k < n; ++k) logf[k] = std::log(f[k]);
  const std::vector<std::complex<double>> bins =
      detail::real_dft_halfspectrum(logf);

  // c_k = (-1)^k * bin_k / n: Fourier coefficients of log f on the
  // [-pi, pi) grid.
  std::vector<std::complex<double>> c(m);
  for (std::size_t k = 0; k < m; ++k) {
    c[k] = bins[k] / static_cast<double>(n);
    if (k % 2 == 1) c[k] = -c[k];
  }
  const double g = std::exp(c[0].real());

  // a = exp(-sum_{k>=1} c_k z^k) by the series-exponential recurrence
  // k*a_k = -sum_{i=1}^{k} i*c_i*a_{k-i}.
  std::vector<std::complex<double>> a(m);
  a[0] = 1.0;
  for (std::size_t k = 1; k < m; ++k) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 1; i <= k; ++i) {
      s += static_cast<double>(i) * c[i] * a[k - i];
    }
    a[k] = -s / static_cast<double>(k);
  }

  double max_abs = 1.0;
  double max_imag = 0.0;
  std::vector<double> a_real(m);
  for (std::size_t k = 0; k < m; ++k) {
    max_abs = std::max(max_abs, std::abs(a[k].real()));
    max_imag = std::max(max_imag, std::abs(a[k].imag()));
    a_real[k] = a[k].real();
  }
  a_real[0] = 1.0;
  if (max_imag > kImagTol * max_abs) {
    throw AsymmetricSpectrum(
        "factorize: spectrum is not even in theta (imaginary cepstral "
        "residue " +
        std::to_string(max_imag) + ")");
  }

  const std::vector<double> mag2 =
      detail::poly_magnitude_squared_on_grid(a_real, n);
  double max_rel = 0.0;
  CompensatedSum rel_acc;
  for (std::size_t k = 0; k < n; ++k) {
    const double rel = std::abs(g / mag2[k] - f[k]) / f[k];
    max_rel = std::max(max_rel, rel);
    rel_acc.add(rel);
  }
  const double mean_rel = rel_acc.value() / static_cast<double>(n);
  if (!(mean_rel <= kReconstructionGate)) {
    throw GridTooCoarse(
        "factorize: mean relative reconstruction residual " +
        std::to_string(mean_rel) + " exceeds 1e-3; increase m or n");
  }
  return OuterFactorization{g, std::move(a_real), max_rel, mean_rel};
}

OuterFactorization factorize(const SpectrumGrid& f) {
  return factorize(f, f.size() / 4);
}

double prediction_variance(const SpectrumGrid& f) { return geometric_mean(f); }

double smoothing_variance(const SpectrumGrid& f) { return harmonic_mean(f); }

double mismatched_prediction_variance(const SpectrumGrid& f_true,
                                      const SpectrumGrid& f_model,
                                      std::size_t m, VarianceMode mode) {
  if (f_true.size() != f_model.size()) {
    throw LengthMismatch("mismatched_prediction_variance: grid sizes differ");
  }
  if (mode == VarianceMode::kClosedForm) {
    CompensatedSum acc;
    for (std::size_t k = 0; k < f_true.size(); ++k) {
      acc.add(f_true[k] / f_model[k]);
    }
    const double ratio_mean =
        acc.value() / static_cast<double>(f_true.size());
    return ratio_mean * geometric_mean(f_model);
  }
  const OuterFactorization fac = factorize(f_model, m);
  return truncated_filter_variance(f_true, fac.a_coeffs);
}

SmoothingFilter smoothing_filter(const SpectrumGrid& f) {
  const double h = harmonic_mean(f);
  std::vector<double> b(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) b[k] = h / f[k];
  SpectrumGrid b_grid(std::move(b));
  if (std::abs(mean(b_grid) - 1.0) > 1e-10) {
    throw Error("smoothing_filter: mean(b) deviates from 1");
  }
  return SmoothingFilter{h, std::move(b_grid)};
}

double mismatched_smoothing_variance(const SpectrumGrid& f_true,
                                     const SpectrumGrid& f_model) {
  if (f_true.size() != f_model.size()) {
    throw LengthMismatch("mismatched_smoothing_variance: grid sizes differ");
  }
  const double h = harmonic_mean(f_model);
  CompensatedSum acc;
  for (std::size_t k = 0; k < f_true.size(); ++k) {
    const double b = h / f_model[k];
    acc.add(b * b * f_true[k]);
  }
  return acc.value() / static_cast<double>(f_true.size());
}

SimulationReport simulate_prediction(const SpectrumGrid& f_true,
                                     const SpectrumGrid& f_model,
                                     std::size_t filter_len,
                                     std::uint64_t samples,
                                     std::uint64_t seed) {
  if (f_true.size() != f_model.size()) {
    throw LengthMismatch("simulate_prediction: grid sizes differ");
  }
  if (filter_len < 2 || filter_len > 4096) {
    throw InvalidArgument("simulate_prediction: filter_len must be in [2, 4096]");
  }
  if (samples < 10000) {
    throw InvalidArgument("simulate_prediction: need at least 10^4 samples");
  }

  const OuterFactorization fac_true = factorize(f_true, filter_len);
  const OuterFactorization fac_model = factorize(f_model, filter_len);

  // Synthesis filter: u = sqrt(g) / a_true applied to white noise.
  std::vector<double> synth = invert_series(fac_true.a_coeffs, filter_len);
  const double root_g = std::sqrt(fac_true.g);
  for (double& v : synth) v *= root_g;
  const std::vector<double>& predictor = fac_model.a_coeffs;

  const std::size_t L = filter_len;
  const std::size_t warmup = 4 * L;
  GaussianSampler noise(seed);

  // Block processing with L samples of history at the front of each
  // buffer; no modular indexing in the inner loops.
  const std::size_t block = 8192;
  std::vector<double> w(L + block, 0.0);
  std::vector<double> u(L + block, 0.0);
  CompensatedSum sq_acc;
  std::uint64_t produced = 0;
  const std::uint64_t total = warmup + samples;
  while (produced < total) {
    const std::size_t b =
        static_cast<std::size_t>(std::min<std::uint64_t>(block, total - produced));
    for (std::size_t i = 0; i < b; ++i) {
      w[L + i] = noise.next();
      double acc = 0.0;
      for (std::size_t k = 0; k < L; ++k) acc += synth[k] * w[L + i - k];
      u[L + i] = acc;
      if (produced + i >= warmup) {
        double e = 0.0;
        for (std::size_t k = 0; k < L; ++k) e += predictor[k] * u[L + i - k];
        sq_acc.add(e * e);
      }
    }
    std::copy(w.end() - static_cast<std::ptrdiff_t>(L), w.end(), w.begin());
    std::copy(u.end() - static_cast<std::ptrdiff_t>(L), u.end(), u.begin());
    produced += b;
  }

  const double empirical =
      sq_acc.value() / static_cast<double>(samples);
  const double analytic =
      truncated_filter_variance(f_true, fac_model.a_coeffs);
  const double se =
      empirical * std::sqrt(2.0 / (static_cast<double>(samples) - 1.0));
  return SimulationReport{empirical, analytic, se, samples, filter_len, seed};
}

}  // namespace spectral

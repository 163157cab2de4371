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

#ifndef SPECTRAL_DISTANCES_HPP
#define SPECTRAL_DISTANCES_HPP

#include <optional>

#include "spectral/grid.hpp"
#include "spectral/means.hpp"

namespace spectral {

enum class DistanceKind { kAg, kSym, kKl, kSmooth, kRs };

// A nonnegative scalar distance (or +inf when an underlying mean
// overflowed).  Values within 1e-12 of zero are clamped to exactly 0 so
// that "distance zero" is a testable predicate.
struct DistanceValue {
  double value;
  DistanceKind kind;
  // Orders of the generalized-mean family; set only when kind == kRs.
  std::optional<MeanOrder> order_r;
  std::optional<MeanOrder> order_s;

  bool is_infinite() const;
};

// log(mean(f1/f2)) - mean(log(f1/f2)): the log ratio of arithmetic over
// geometric mean of the likelihood-like ratio f1/f2.  Equals the log
// relative degradation of the one-step predictor designed for f2 and run
// against f1.
DistanceValue delta_ag(const SpectrumGrid& f1, const SpectrumGrid& f2);

// delta_ag(f1,f2) + delta_ag(f2,f1), the symmetrized distance; equal to
// log(mean(f1/f2) * mean(f2/f1)) (arithmetic over harmonic mean).
DistanceValue delta_sym(const SpectrumGrid& f1, const SpectrumGrid& f2);

// Kullback-Leibler divergence of the mean-normalized densities.
DistanceValue delta_kl(const SpectrumGrid& f1, const SpectrumGrid& f2);

// mean(f1/f2^2) * mean(1/f1) / mean(1/f2)^2: the relative degradation of
// the smoothing filter designed for f2 and run against f1.  Always >= 1 up
// to rounding.  Internally cross-checked against the weighted-mean form
// (mean square over squared mean of f1/f2 under the 1/f1 measure).
double rho_smooth(const SpectrumGrid& f1, const SpectrumGrid& f2);

// log(rho_smooth).
DistanceValue delta_smooth(const SpectrumGrid& f1, const SpectrumGrid& f2);

// log M_s(f1/f2) - log M_r(f1/f2) for orders r < s; nonnegative by the
// power-mean inequality.  (r,s) = (0,1) reproduces delta_ag and (-1,1)
// reproduces delta_sym.  Throws BadOrder when r >= s.
DistanceValue delta_rs(const SpectrumGrid& f1, const SpectrumGrid& f2,
                       const MeanOrder& r, const MeanOrder& s);

}  // namespace spectral

#endif  // SPECTRAL_DISTANCES_HPP

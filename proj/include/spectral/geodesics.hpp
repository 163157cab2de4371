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

#ifndef SPECTRAL_GEODESICS_HPP
#define SPECTRAL_GEODESICS_HPP

#include <vector>

#include "spectral/grid.hpp"

namespace spectral {

// Pointwise fa^{1-tau} * fb^{tau}.  tau must lie in [0, 1]; the endpoints
// reproduce fa and fb exactly.
SpectrumGrid log_interval(const SpectrumGrid& fa, const SpectrumGrid& fb,
                          double tau);

// A sampled path f_tau, tau in [0,1]: strictly increasing parameter values
// with tau_0 = 0, tau_{m-1} = 1, and one grid per parameter value (all
// sharing the same size).
class GeodesicPath {
 public:
  GeodesicPath(std::vector<double> taus, std::vector<SpectrumGrid> frames);

  // The logarithmic interval between f0 and f1 sampled at m uniform
  // parameter values.
  static GeodesicPath log_path(const SpectrumGrid& f0, const SpectrumGrid& f1,
                               std::size_t m);

  std::size_t frame_count() const { return frames_.size(); }
  std::size_t grid_size() const { return frames_.front().size(); }
  const std::vector<double>& taus() const { return taus_; }
  const std::vector<SpectrumGrid>& frames() const { return frames_; }

 private:
  std::vector<double> taus_;
  std::vector<SpectrumGrid> frames_;
};

enum class QuadraticFormKind { kSym, kAg, kKl };

// Second-order coefficient of the matching distance at f in direction
// delta:
//   kSym: mean((delta/f)^2) - mean(delta/f)^2
//   kAg:  half of kSym
//   kKl:  (mean(delta^2/f) - mean(delta)^2) / 2, requiring mean(f) = 1
//         (throws UnnormalizedDensity otherwise).
double quadratic_form(const SpectrumGrid& f, const SignedGrid& delta,
                      QuadraticFormKind kind);

// |d(f, f + eps*delta) - eps^2 * quadratic_form(f, delta, kind)| where d is
// the distance matching `kind`.  Decays at least as fast as eps^3.  Throws
// PerturbationTooLarge unless |eps*delta/f| < 1 samplewise.
double expansion_residual(const SpectrumGrid& f, const SignedGrid& delta,
                          double eps, QuadraticFormKind kind);

// Closed-form length of the logarithmic path between f0 and f1:
// sqrt(mean(u^2) - mean(u)^2) with u = log(f1/f0).
double logpath_length(const SpectrumGrid& f0, const SpectrumGrid& f1);

// Length of a sampled path: tau-derivatives of x = log f by second-order
// finite differences (central inside, one-sided at the endpoints),
// integrated by the trapezoid rule.  Converges at order 2 in the frame
// count for smooth paths.
double path_length(const GeodesicPath& path);

// Deviation of the path from the geodesic stationarity condition: the
// normalized velocity field v = (xdot - mean(xdot)) / sqrt(var(xdot)) must
// be the same function of theta at every tau.  Returns the largest
// sup-norm difference between the per-frame fields.  Throws ZeroSpeed when
// a frame's speed falls below the 1e-12 floor.
double geodesic_residual(const GeodesicPath& path);

}  // namespace spectral

#endif  // SPECTRAL_GEODESICS_HPP

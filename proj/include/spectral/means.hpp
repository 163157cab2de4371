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

#ifndef SPECTRAL_MEANS_HPP
#define SPECTRAL_MEANS_HPP

#include <string>

#include "spectral/grid.hpp"

namespace spectral {

// Order r of the generalized mean M_r, as an extended real.  r = 0 (the
// geometric mean) is a distinct marker, never a small float, so callers can
// request it exactly.
class MeanOrder {
 public:
  // finite(0.0) collapses to the exact-zero marker.
  static MeanOrder finite(double r);
  static MeanOrder zero() { return MeanOrder(Kind::kZero, 0.0); }
  static MeanOrder plus_infinity() { return MeanOrder(Kind::kPlusInf, 0.0); }
  static MeanOrder minus_infinity() { return MeanOrder(Kind::kMinusInf, 0.0); }

  bool is_zero() const { return kind_ == Kind::kZero; }
  bool is_finite() const {
    return kind_ == Kind::kFinite || kind_ == Kind::kZero;
  }
  bool is_plus_infinity() const { return kind_ == Kind::kPlusInf; }
  bool is_minus_infinity() const { return kind_ == Kind::kMinusInf; }

  // Exponent for finite orders (0 for the zero marker).
  double exponent() const { return r_; }

  std::string to_string() const;

  // Extended-real order.
  friend bool operator<(const MeanOrder& a, const MeanOrder& b);
  friend bool operator==(const MeanOrder& a, const MeanOrder& b);

 private:
  enum class Kind { kFinite, kZero, kPlusInf, kMinusInf };
  MeanOrder(Kind kind, double r) : kind_(kind), r_(r) {}

  Kind kind_;
  double r_;
};

// Uniform-grid quadrature of f over [-pi, pi) normalized by 2*pi: the
// sample average (trapezoid = rectangle rule for periodic integrands).
double mean(const SpectrumGrid& f);
double mean(const SignedGrid& f);

// exp(mean(log f)): the Szego geometric mean g_f.
double geometric_mean(const SpectrumGrid& f);

// (mean(1/f))^{-1}: the harmonic mean h_f.
double harmonic_mean(const SpectrumGrid& f);

// M_r(f).  Finite r != 0 computes (mean(f^r))^{1/r}; r = 0 the geometric
// mean; r = +/-inf the max/min sample.  M_1 and M_{-1} route through
// mean/harmonic_mean exactly.  Throws OverflowError when f^r overflows.
double generalized_mean(const SpectrumGrid& f, const MeanOrder& r);

// sum(g*w) / sum(w) for a caller-supplied weight density w (normalized
// internally).
double weighted_mean(const SpectrumGrid& g, const SpectrumGrid& weight);

}  // namespace spectral

#endif  // SPECTRAL_MEANS_HPP

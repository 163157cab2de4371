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

#ifndef SPECTRAL_ERROR_HPP
#define SPECTRAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectral {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on arguments was violated (bad sizes, out-of-range
// parameters, non-finite inputs, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two grids that must share a length do not.
class LengthMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Rational PSD denominator vanishes (within tolerance) on a grid point.
class DenominatorZeroOnCircle : public Error {
 public:
  using Error::Error;
};

// Rational PSD numerator vanishes on a grid point, producing a zero sample.
class NonpositiveSample : public Error {
 public:
  using Error::Error;
};

// An intermediate quantity overflowed the working precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Generalized-mean orders supplied in the wrong relation (r >= s).
class BadOrder : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// The KL quadratic form requires a density with mean 1.
class UnnormalizedDensity : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An expansion probe eps*delta/f reached magnitude >= 1 somewhere.
class PerturbationTooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A discretized path has fewer frames than the stencils need.
class TooFewFrames : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A path frame has (numerically) zero speed, so the normalized velocity
// field of the geodesic condition is undefined there.
class ZeroSpeed : public Error {
 public:
  using Error::Error;
};

// Spectral factorization cannot reconstruct the input to the required
// accuracy; grid size or coefficient count is too small for this spectrum.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

// Real-coefficient factorization asked of a spectrum that is not even in
// theta (i.e. not the spectrum of a real process).
class AsymmetricSpectrum : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// More moments requested than the grid resolution supports.
class TooManyMoments : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A Toeplitz moment matrix is numerically singular (|reflection| ~ 1).
class NumericallySingular : public Error {
 public:
  using Error::Error;
};

// The moment solver's max-entropy initialization was infeasible.  Cannot
// occur for a validated MomentVector.
class InfeasibleStart : public Error {
 public:
  using Error::Error;
};

// The moment solver exhausted its iteration budget.
class NotConverged : public Error {
 public:
  NotConverged(std::size_t iterations, double residual)
      : Error("moment solver did not converge after " +
              std::to_string(iterations) +
              " iterations, residual = " + std::to_string(residual)),
        iterations(iterations),
        residual(residual) {}

  std::size_t iterations;
  double residual;
};

}  // namespace spectral

#endif  // SPECTRAL_ERROR_HPP

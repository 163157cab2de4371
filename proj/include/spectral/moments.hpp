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

#ifndef SPECTRAL_MOMENTS_HPP
#define SPECTRAL_MOMENTS_HPP

#include <cstddef>
#include <vector>

#include "spectral/grid.hpp"

namespace spectral {

// Autocorrelation samples R_0..R_n of a real process (R_{-k} = R_k).  The
// associated (n+1)x(n+1) Toeplitz matrix must be positive definite, which
// is checked at construction via the Levinson-Durbin recursion; throws
// NumericallySingular otherwise.
class MomentVector {
 public:
  explicit MomentVector(std::vector<double> r);

  std::size_t order() const { return r_.size() - 1; }  // n
  const std::vector<double>& values() const { return r_; }
  double operator[](std::size_t k) const { return r_[k]; }

 private:
  std::vector<double> r_;
};

// R_k = mean(f * cos(k*theta)) for k = 0..n_moments (real-density
// convention: the cosine projections are structurally real, and odd
// components of f do not contribute).  Requires n_moments + 1 <= n/4.
MomentVector compute_moments(const SpectrumGrid& f, std::size_t n_moments);

// The unique all-pole density matching the moments (Levinson-Durbin),
// sampled on a grid_size-point grid.  This is the flat-prior special case
// of solve_ag_closest and serves as its independent oracle.
SpectrumGrid max_entropy_reference(const MomentVector& moments,
                                   std::size_t grid_size);

// Solution of the constrained approximation problem: Lagrange multipliers,
// the coupling scalar kappa = mean(density/f_prior), the reconstructed
// density kappa*f_prior / (1 - kappa*f_prior*(lambda_0 + 2*sum lambda_k
// cos(k*theta))), the final moment mismatch, and the Newton iteration
// count.
struct MomentSolution {
  std::vector<double> lambdas;  // lambda_0..lambda_n (lambda_{-k} = lambda_k)
  double kappa;
  SpectrumGrid density;
  double residual;
  std::size_t iterations;
};

// Finds the density closest to f_prior in the arithmetic-over-geometric
// sense subject to the moment constraints.  Solved as a damped Newton
// root-finding problem in (lambda_0..lambda_n, kappa), warm-started from
// the flat-prior maximum-entropy solution and continued along the prior
// homotopy f_prior^s, s = 0 -> 1.  Denominator positivity is maintained by
// step damping.  Throws NotConverged on iteration exhaustion.
MomentSolution solve_ag_closest(const MomentVector& moments,
                                const SpectrumGrid& f_prior,
                                double tol = 1e-9, std::size_t max_iter = 200);

namespace detail {

// Residual and analytic Jacobian of the stationarity system at
// (lambdas, kappa); the seam the solver iterates on, exposed so tests can
// validate the Jacobian against finite differences.
void moment_system(const MomentVector& moments, const SpectrumGrid& f_prior,
                   const std::vector<double>& lambdas, double kappa,
                   std::vector<double>* residual,
                   std::vector<std::vector<double>>* jacobian);

}  // namespace detail

}  // namespace spectral

#endif  // SPECTRAL_MOMENTS_HPP

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

#include "spectral/moments.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "spectral/error.hpp"
#include "spectral/kahan.hpp"
#include "spectral/means.hpp"

namespace spectral {

namespace {

constexpr double kReflectionLimit = 1.0 - 1e-12;
constexpr double kDenominatorFloor = 1e-10;
constexpr std::size_t kHomotopySteps = 8;
constexpr std::size_t kMaxHalvings = 40;

struct LevinsonResult {
  std::vector<double> ar;  // a_1..a_n of 1 + a_1 z + ... (whitening filter)
  double variance;         // innovation variance
};

// Levinson-Durbin on R_0..R_n for the model u_t + sum a_i u_{t-i} = e_t.
// Positive definiteness of the Toeplitz matrix is equivalent to every
// reflection coefficient staying inside the unit interval.
LevinsonResult levinson(const std::vector<double>& r) {
  if (r.empty() || !(r[0] > 0.0) || !std::isfinite(r[0])) {
    throw NumericallySingular("levinson: R_0 must be positive");
  }
  const std::size_t n = r.size() - 1;
  std::vector<double> a;
  double err = r[0];
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = r[k];
    for (std::size_t i = 1; i < k; ++i) acc += a[i - 1] * r[k - i];
    const double refl = -acc / err;
    if (!(std::abs(refl) < kReflectionLimit)) {
      throw NumericallySingular(
          "levinson: reflection coefficient " + std::to_string(refl) +
          " at lag " + std::to_string(k) +
          "; Toeplitz moment matrix is not (numerically) positive definite");
    }
    std::vector<double> next(k);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      next[i] = a[i] + refl * a[k - 2 - i];
    }
    next[k - 1] = refl;
    a = std::move(next);
    err *= 1.0 - refl * refl;
  }
  return LevinsonResult{std::move(a), err};
}

// cos(k*theta_l) rows for k = 0..n_m.
std::vector<std::vector<double>> cosine_table(std::size_t n_m, std::size_t n) {
  std::vector<std::vector<double>> table(n_m + 1, std::vector<double>(n));
  for (std::size_t l = 0; l < n; ++l) {
    const double th = theta_at(n, l);
    for (std::size_t k = 0; k <= n_m; ++k) {
      table[k][l] = std::cos(static_cast<double>(k) * th);
    }
  }
  return table;
}

// Dense solve by Gaussian elimination with partial pivoting; the systems
// here are (n+2) x (n+2) with n <= a dozen.
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (a[pivot][col] == 0.0) {
      throw NumericallySingular("solve_dense: singular Jacobian");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t j = row + 1; j < n; ++j) s -= a[row][j] * x[j];
    x[row] = s / a[row][row];
  }
  return x;
}

// State of the root-finding problem at a fixed prior.
struct SolverWorkspace {
  const std::vector<double>* prior;                 // p(theta), current homotopy stage
  const std::vector<std::vector<double>>* cosines;  // cos(k theta) rows
  const std::vector<double>* targets;               // R_0..R_n
  std::size_t n_m;
  std::size_t grid_n;

  std::vector<double> potential;  // L(theta) = lambda_0 + 2 sum lambda_k cos
  std::vector<double> denom;      // D = 1 - kappa p L
  std::vector<double> density;    // f = kappa p / D

  void refresh(const std::vector<double>& lambdas, double kappa) {
    const auto& cos_t = *cosines;
    const auto& p = *prior;
    potential.assign(grid_n, lambdas[0]);
    for (std::size_t k = 1; k <= n_m; ++k) {
      const double two_l = 2.0 * lambdas[k];
      for (std::size_t l = 0; l < grid_n; ++l) {
        potential[l] += two_l * cos_t[k][l];
      }
    }
    denom.resize(grid_n);
    density.resize(grid_n);
    for (std::size_t l = 0; l < grid_n; ++l) {
      denom[l] = 1.0 - kappa * p[l] * potential[l];
      density[l] = kappa * p[l] / denom[l];
    }
  }

  double min_denom() const {
    double m = denom[0];
    for (double d : denom) m = std::min(m, d);
    return m;
  }

  // Residual: moment mismatches, then the kappa-consistency equation.
  std::vector<double> residual(double kappa) const {
    const auto& cos_t = *cosines;
    std::vector<double> f_res(n_m + 2);
    for (std::size_t k = 0; k <= n_m; ++k) {
      CompensatedSum acc;
      for (std::size_t l = 0; l < grid_n; ++l) {
        acc.add(density[l] * cos_t[k][l]);
      }
      f_res[k] = acc.value() / static_cast<double>(grid_n) - (*targets)[k];
    }
    CompensatedSum acc;
    for (std::size_t l = 0; l < grid_n; ++l) acc.add(1.0 / denom[l]);
    f_res[n_m + 1] =
        kappa * (1.0 - acc.value() / static_cast<double>(grid_n));
    return f_res;
  }

  // Analytic Jacobian of the residual map: df/dlambda_j = f^2 e_j,
  // df/dkappa = p/D^2, with e_0 = 1 and e_j = 2 cos(j theta).
  std::vector<std::vector<double>> jacobian() const {
    const auto& cos_t = *cosines;
    const auto& p = *prior;
    std::vector<std::vector<double>> jac(n_m + 2,
                                         std::vector<double>(n_m + 2, 0.0));
    std::vector<double> f_sq(grid_n);
    std::vector<double> dk(grid_n);
    for (std::size_t l = 0; l < grid_n; ++l) {
      f_sq[l] = density[l] * density[l];
      dk[l] = p[l] / (denom[l] * denom[l]);
    }
    for (std::size_t j = 0; j <= n_m; ++j) {
      const double basis_scale = (j == 0) ? 1.0 : 2.0;
      for (std::size_t k = 0; k <= n_m; ++k) {
        CompensatedSum acc;
        for (std::size_t l = 0; l < grid_n; ++l) {
          acc.add(f_sq[l] * basis_scale * cos_t[j][l] * cos_t[k][l]);
        }
        jac[k][j] = acc.value() / static_cast<double>(grid_n);
      }
      CompensatedSum acc;
      for (std::size_t l = 0; l < grid_n; ++l) {
        acc.add(f_sq[l] * basis_scale * cos_t[j][l] / p[l]);
      }
      jac[n_m + 1][j] = -acc.value() / static_cast<double>(grid_n);
    }
    for (std::size_t k = 0; k <= n_m; ++k) {
      CompensatedSum acc;
      for (std::size_t l = 0; l < grid_n; ++l) acc.add(dk[l] * cos_t[k][l]);
      jac[k][n_m + 1] = acc.value() / static_cast<double>(grid_n);
    }
    CompensatedSum acc;
    for (std::size_t l = 0; l < grid_n; ++l) {
      acc.add(1.0 / (denom[l] * denom[l]));
    }
    jac[n_m + 1][n_m + 1] = 1.0 - acc.value() / static_cast<double>(grid_n);
    return jac;
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double max_abs_moment_residual(const std::vector<double>& f_res,
                               std::size_t n_m) {
  double m = 0.0;
  for (std::size_t k = 0; k <= n_m; ++k) m = std::max(m, std::abs(f_res[k]));
  return m;
}

}  // namespace

MomentVector::MomentVector(std::vector<double> r) : r_(std::move(r)) {
  if (r_.empty()) {
    throw InvalidArgument("MomentVector: need at least R_0");
  }
  for (double v : r_) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("MomentVector: non-finite moment");
    }
  }
  levinson(r_);  // positive-definiteness check
}

MomentVector compute_moments(const SpectrumGrid& f, std::size_t n_moments) {
  if ((n_moments + 1) * 4 > f.size()) {
    throw TooManyMoments("compute_moments: need n_moments + 1 <= grid/4");
  }
  std::vector<double> r(n_moments + 1);
  for (std::size_t k = 0; k <= n_moments; ++k) {
    CompensatedSum acc;
    for (std::size_t l = 0; l < f.size(); ++l) {
      acc.add(f[l] * std::cos(static_cast<double>(k) * f.theta(l)));
    }
    r[k] = acc.value() / static_cast<double>(f.size());
  }
  return MomentVector(std::move(r));
}

SpectrumGrid max_entropy_reference(const MomentVector& moments,
                                   std::size_t grid_size) {
  const LevinsonResult lev = levinson(moments.values());
  std::vector<double> out(grid_size);
  for (std::size_t l = 0; l < grid_size; ++l) {
    const double th = theta_at(grid_size, l);
    std::complex<double> a(1.0, 0.0);
    const std::complex<double> z(std::cos(th), std::sin(th));
    std::complex<double> zk(1.0, 0.0);
    for (double c : lev.ar) {
      zk *= z;
      a += c * zk;
    }
    out[l] = lev.variance / std::norm(a);
  }
  return SpectrumGrid(std::move(out));
}

MomentSolution solve_ag_closest(const MomentVector& moments,
                                const SpectrumGrid& f_prior, double tol,
                                std::size_t max_iter) {
  if (tol < 1e-12) {
    throw InvalidArgument("solve_ag_closest: tol must be >= 1e-12");
  }
  const std::size_t n_m = moments.order();
  const std::size_t n = f_prior.size();
  if ((n_m + 1) * 4 > n) {
    throw TooManyMoments("solve_ag_closest: prior grid too small for order");
  }
  const auto cos_t = cosine_table(n_m, n);

  // Work at unit moment scale: the functional form is closed under
  // density scaling (f -> cf maps (lambda, kappa) -> (lambda/c, c*kappa)),
  // and conditioning of the Newton system degrades with the square of the
  // scale.  Targets, tolerance and the returned solution are mapped back.
  const double scale = moments.values()[0];
  std::vector<double> targets(moments.values());
  for (double& t : targets) t /= scale;
  const double scaled_tol = tol / scale;

  // Flat-prior maximum-entropy start: the all-pole density is itself of
  // the stationary functional form, so its implied (lambda, kappa) is an
  // exact warm start.
  const MomentVector scaled_moments{std::vector<double>(targets)};
  const SpectrumGrid f_me = max_entropy_reference(scaled_moments, n);
  double kappa = mean(f_me);
  std::vector<double> lambdas(n_m + 1);
  {
    std::vector<double> potential(n);
    for (std::size_t l = 0; l < n; ++l) {
      potential[l] = 1.0 / kappa - 1.0 / f_me[l];
    }
    for (std::size_t k = 0; k <= n_m; ++k) {
      CompensatedSum acc;
      for (std::size_t l = 0; l < n; ++l) acc.add(potential[l] * cos_t[k][l]);
      lambdas[k] = acc.value() / static_cast<double>(n);
    }
  }

  bool flat_prior = true;
  for (std::size_t l = 0; l < n && flat_prior; ++l) {
    flat_prior = std::abs(f_prior[l] - 1.0) < 1e-14;
  }

  SolverWorkspace ws;
  ws.cosines = &cos_t;
  ws.targets = &targets;
  ws.n_m = n_m;
  ws.grid_n = n;

  std::vector<double> stage_prior;
  std::size_t total_iters = 0;
  const std::size_t stages = flat_prior ? 1 : kHomotopySteps + 1;
  for (std::size_t stage = 0; stage < stages; ++stage) {
    if (flat_prior) {
      stage_prior.assign(n, 1.0);
    } else if (stage == stages - 1) {
      stage_prior = f_prior.values();
    } else {
      const double s =
          static_cast<double>(stage) / static_cast<double>(kHomotopySteps);
      stage_prior.resize(n);
      for (std::size_t l = 0; l < n; ++l) {
        stage_prior[l] = std::pow(f_prior[l], s);
      }
    }
    ws.prior = &stage_prior;

    // The prior just moved under the iterate; shrink the multipliers until
    // the denominator is positive again before running Newton.
    ws.refresh(lambdas, kappa);
    if (ws.min_denom() < 1e-8) {
      double shrink = 1.0;
      bool feasible = false;
      std::vector<double> scaled(lambdas.size());
      for (std::size_t attempt = 0; attempt < 60; ++attempt) {
        shrink *= 0.5;
        for (std::size_t k = 0; k <= n_m; ++k) scaled[k] = shrink * lambdas[k];
        ws.refresh(scaled, kappa);
        if (ws.min_denom() >= 1e-8) {
          lambdas = scaled;
          feasible = true;
          break;
        }
      }
      if (!feasible) {
        if (stage == 0) {
          throw InfeasibleStart(
              "solve_ag_closest: max-entropy start infeasible");
        }
        throw NotConverged(total_iters,
                           std::numeric_limits<double>::infinity());
      }
    }

    std::vector<double> f_res = ws.residual(kappa);
    for (std::size_t iter = 0;; ++iter) {
      const double moment_res = max_abs_moment_residual(f_res, n_m);
      const double kappa_res = std::abs(f_res[n_m + 1]);
      // The self-consistency equation must hold to 1e-8 relative at least;
      // tighter moment tolerances tighten it alongside.
      if (moment_res <= scaled_tol &&
          kappa_res <= std::min(1e-8, tol) * std::abs(kappa)) {
        break;
      }
      if (iter >= max_iter) {
        throw NotConverged(total_iters, moment_res * scale);
      }

      const std::vector<std::vector<double>> jac = ws.jacobian();
      std::vector<double> rhs(n_m + 2);
      for (std::size_t k = 0; k < n_m + 2; ++k) rhs[k] = -f_res[k];
      std::vector<double> step = solve_dense(jac, rhs);
      // One round of iterative refinement: the Jacobian turns badly
      // conditioned for high orders against wide-dynamic-range priors.
      {
        std::vector<double> r2(n_m + 2);
        for (std::size_t k = 0; k < n_m + 2; ++k) {
          CompensatedSum acc;
          acc.add(-f_res[k]);
          for (std::size_t j = 0; j < n_m + 2; ++j) {
            acc.add(-jac[k][j] * step[j]);
          }
          r2[k] = acc.value();
        }
        const std::vector<double> correction = solve_dense(jac, r2);
        for (std::size_t k = 0; k < n_m + 2; ++k) step[k] += correction[k];
      }

      // Damping: halve until the denominator stays positive and the
      // residual norm decreases.
      const double base_norm = norm2(f_res);
      double alpha = 1.0;
      bool accepted = false;
      std::vector<double> lam_try(n_m + 1);
      for (std::size_t halving = 0; halving <= kMaxHalvings; ++halving) {
        for (std::size_t k = 0; k <= n_m; ++k) {
          lam_try[k] = lambdas[k] + alpha * step[k];
        }
        const double kappa_try = kappa + alpha * step[n_m + 1];
        if (kappa_try > 0.0) {
          ws.refresh(lam_try, kappa_try);
          if (ws.min_denom() >= kDenominatorFloor) {
            std::vector<double> res_try = ws.residual(kappa_try);
            if (norm2(res_try) < base_norm) {
              lambdas = lam_try;
              kappa = kappa_try;
              f_res = std::move(res_try);
              accepted = true;
              break;
            }
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        throw NotConverged(total_iters,
                           max_abs_moment_residual(f_res, n_m) * scale);
      }
      ++total_iters;
    }
  }

  ws.prior = flat_prior ? &stage_prior : &f_prior.values();
  ws.refresh(lambdas, kappa);
  const std::vector<double> f_res = ws.residual(kappa);

  // Map back to the caller's moment scale.
  std::vector<double> out_lambdas(n_m + 1);
  for (std::size_t k = 0; k <= n_m; ++k) out_lambdas[k] = lambdas[k] / scale;
  std::vector<double> out_density(ws.density);
  for (double& v : out_density) v *= scale;
  return MomentSolution{std::move(out_lambdas), kappa * scale,
                        SpectrumGrid(std::move(out_density)),
                        max_abs_moment_residual(f_res, n_m) * scale,
                        total_iters};
}

namespace detail {

void moment_system(const MomentVector& moments, const SpectrumGrid& f_prior,
                   const std::vector<double>& lambdas, double kappa,
                   std::vector<double>* residual,
                   std::vector<std::vector<double>>* jacobian) {
  const std::size_t n_m = moments.order();
  if (lambdas.size() != n_m + 1) {
    throw InvalidArgument("moment_system: need order + 1 multipliers");
  }
  const auto cos_t = cosine_table(n_m, f_prior.size());
  SolverWorkspace ws;
  ws.prior = &f_prior.values();
  ws.cosines = &cos_t;
  ws.targets = &moments.values();
  ws.n_m = n_m;
  ws.grid_n = f_prior.size();
  ws.refresh(lambdas, kappa);
  if (residual != nullptr) *residual = ws.residual(kappa);
  if (jacobian != nullptr) *jacobian = ws.jacobian();
}

}  // namespace detail

}  // namespace spectral

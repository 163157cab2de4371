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

#include "spectral/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "spectral/distances.hpp"
#include "spectral/error.hpp"
#include "spectral/kahan.hpp"
#include "spectral/means.hpp"

namespace spectral {

namespace {

constexpr double kSpeedFloor = 1e-12;

// Derivative weights of the quadratic through (ta,tb,tc), evaluated at t.
std::array<double, 3> lagrange_derivative_weights(double t, double ta,
                                                  double tb, double tc) {
  return {(2.0 * t - tb - tc) / ((ta - tb) * (ta - tc)),
          (2.0 * t - ta - tc) / ((tb - ta) * (tb - tc)),
          (2.0 * t - ta - tb) / ((tc - ta) * (tc - tb))};
}

// Frame indices of the three-point stencil at frame i: central inside,
// one-sided at the endpoints (second order throughout).
std::array<std::size_t, 3> stencil_nodes(std::size_t i, std::size_t m) {
  if (i == 0) return {0, 1, 2};
  if (i == m - 1) return {m - 3, m - 2, m - 1};
  return {i - 1, i, i + 1};
}

// Lazily computed log-frames; stencils advance monotonically so a handful
// of rows suffices.
class LogFrameCache {
 public:
  explicit LogFrameCache(const GeodesicPath& path) : path_(path) {}

  const std::vector<double>& get(std::size_t i) {
    auto it = rows_.find(i);
    if (it == rows_.end()) {
      std::vector<double> row(path_.grid_size());
      const SpectrumGrid& frame = path_.frames()[i];
      for (std::size_t k = 0; k < row.size(); ++k) row[k] = std::log(frame[k]);
      it = rows_.emplace(i, std::move(row)).first;
      while (rows_.size() > 4) rows_.erase(rows_.begin());
    }
    return it->second;
  }

 private:
  const GeodesicPath& path_;
  std::map<std::size_t, std::vector<double>> rows_;
};

struct FrameVelocity {
  std::array<const std::vector<double>*, 3> rows;
  std::array<double, 3> weights;

  double operator()(std::size_t k) const {
    return weights[0] * (*rows[0])[k] + weights[1] * (*rows[1])[k] +
           weights[2] * (*rows[2])[k];
  }
};

FrameVelocity frame_velocity(const GeodesicPath& path, LogFrameCache& cache,
                             std::size_t i) {
  const auto nodes = stencil_nodes(i, path.frame_count());
  const auto& taus = path.taus();
  FrameVelocity v;
  v.weights = lagrange_derivative_weights(taus[i], taus[nodes[0]],
                                          taus[nodes[1]], taus[nodes[2]]);
  // Fetch in ascending order so cache eviction never drops a needed row.
  for (int j = 0; j < 3; ++j) v.rows[j] = &cache.get(nodes[j]);
  return v;
}

// Mean and centered variance of xdot over the grid (two passes; the
// centered form is exactly zero for constant fields).
void velocity_stats(const FrameVelocity& v, std::size_t n, double* mu,
                    double* var) {
  CompensatedSum acc;
  for (std::size_t k = 0; k < n; ++k) acc.add(v(k));
  *mu = acc.value() / static_cast<double>(n);
  CompensatedSum sq;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = v(k) - *mu;
    sq.add(d * d);
  }
  *var = sq.value() / static_cast<double>(n);
}

}  // namespace

SpectrumGrid log_interval(const SpectrumGrid& fa, const SpectrumGrid& fb,
                          double tau) {
  if (fa.size() != fb.size()) {
    throw LengthMismatch("log_interval: grid sizes differ");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw InvalidArgument("log_interval: tau must lie in [0, 1], got " +
                          std::to_string(tau));
  }
  if (tau == 0.0) return fa;
  if (tau == 1.0) return fb;
  std::vector<double> out(fa.size());
  for (std::size_t k = 0; k < fa.size(); ++k) {
    out[k] = std::pow(fa[k], 1.0 - tau) * std::pow(fb[k], tau);
  }
  return SpectrumGrid(std::move(out));
}

GeodesicPath::GeodesicPath(std::vector<double> taus,
                           std::vector<SpectrumGrid> frames)
    : taus_(std::move(taus)), frames_(std::move(frames)) {
  if (taus_.size() != frames_.size()) {
    throw InvalidArgument("GeodesicPath: one parameter value per frame");
  }
  if (taus_.size() < 2) {
    throw TooFewFrames("GeodesicPath: need at least 2 frames");
  }
  if (taus_.front() != 0.0 || taus_.back() != 1.0) {
    throw InvalidArgument("GeodesicPath: parameter range must be [0, 1]");
  }
  for (std::size_t i = 1; i < taus_.size(); ++i) {
    if (!(taus_[i] > taus_[i - 1])) {
      throw InvalidArgument("GeodesicPath: parameters must strictly increase");
    }
  }
  const std::size_t n = frames_.front().size();
  for (const SpectrumGrid& f : frames_) {
    if (f.size() != n) {
      throw LengthMismatch("GeodesicPath: frames must share a grid size");
    }
  }
}

GeodesicPath GeodesicPath::log_path(const SpectrumGrid& f0,
                                    const SpectrumGrid& f1, std::size_t m) {
  if (m < 2) throw TooFewFrames("log_path: need at least 2 frames");
  std::vector<double> taus(m);
  std::vector<SpectrumGrid> frames;
  frames.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    taus[i] = (i == m - 1) ? 1.0
                           : static_cast<double>(i) / static_cast<double>(m - 1);
    frames.push_back(log_interval(f0, f1, taus[i]));
  }
  return GeodesicPath(std::move(taus), std::move(frames));
}

double quadratic_form(const SpectrumGrid& f, const SignedGrid& delta,
                      QuadraticFormKind kind) {
  if (f.size() != delta.size()) {
    throw LengthMismatch("quadratic_form: grid sizes differ");
  }
  const double n = static_cast<double>(f.size());
  if (kind == QuadraticFormKind::kKl) {
    if (std::abs(mean(f) - 1.0) > 1e-9) {
      throw UnnormalizedDensity(
          "quadratic_form: KL form requires mean(f) = 1 (within 1e-9)");
    }
    CompensatedSum m1;
    CompensatedSum m2;
    for (std::size_t k = 0; k < f.size(); ++k) {
      m1.add(delta[k]);
      m2.add(delta[k] * delta[k] / f[k]);
    }
    const double mu = m1.value() / n;
    double v = 0.5 * (m2.value() / n - mu * mu);
    if (v < 0.0 && v >= -1e-12) v = 0.0;
    return v;
  }
  // SYM and AG: (centered) variance of delta/f.
  CompensatedSum m1;
  for (std::size_t k = 0; k < f.size(); ++k) m1.add(delta[k] / f[k]);
  const double mu = m1.value() / n;
  CompensatedSum sq;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double d = delta[k] / f[k] - mu;
    sq.add(d * d);
  }
  const double var = sq.value() / n;
  return kind == QuadraticFormKind::kAg ? 0.5 * var : var;
}

double expansion_residual(const SpectrumGrid& f, const SignedGrid& delta,
                          double eps, QuadraticFormKind kind) {
  if (f.size() != delta.size()) {
    throw LengthMismatch("expansion_residual: grid sizes differ");
  }
  std::vector<double> perturbed(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!(std::abs(eps * delta[k] / f[k]) < 1.0)) {
      throw PerturbationTooLarge(
          "expansion_residual: |eps*delta/f| >= 1 at sample " +
          std::to_string(k));
    }
    perturbed[k] = f[k] + eps * delta[k];
  }
  const SpectrumGrid g(std::move(perturbed));
  double d = 0.0;
  switch (kind) {
    case QuadraticFormKind::kSym:
      d = delta_sym(f, g).value;
      break;
    case QuadraticFormKind::kAg:
      d = delta_ag(f, g).value;
      break;
    case QuadraticFormKind::kKl:
      d = delta_kl(f, g).value;
      break;
  }
  return std::abs(d - eps * eps * quadratic_form(f, delta, kind));
}

double logpath_length(const SpectrumGrid& f0, const SpectrumGrid& f1) {
  if (f0.size() != f1.size()) {
    throw LengthMismatch("logpath_length: grid sizes differ");
  }
  std::vector<double> u(f0.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < f0.size(); ++k) {
    u[k] = std::log(f1[k] / f0[k]);
    lo = std::min(lo, u[k]);
    hi = std::max(hi, u[k]);
  }
  // Constant ratio (within 1e-9) is length zero by definition; this keeps
  // "length zero" a clean predicate for rays.
  if (hi - lo <= 1e-9) return 0.0;
  CompensatedSum m1;
  for (double x : u) m1.add(x);
  const double mu = m1.value() / static_cast<double>(u.size());
  CompensatedSum sq;
  for (double x : u) {
    const double d = x - mu;
    sq.add(d * d);
  }
  return std::sqrt(std::max(0.0, sq.value() / static_cast<double>(u.size())));
}

double path_length(const GeodesicPath& path) {
  const std::size_t m = path.frame_count();
  if (m < 3) throw TooFewFrames("path_length: need at least 3 frames");
  LogFrameCache cache(path);
  const std::size_t n = path.grid_size();
  std::vector<double> speeds(m);
  for (std::size_t i = 0; i < m; ++i) {
    const FrameVelocity v = frame_velocity(path, cache, i);
    double mu = 0.0;
    double var = 0.0;
    velocity_stats(v, n, &mu, &var);
    speeds[i] = std::sqrt(std::max(0.0, var));
  }
  const auto& taus = path.taus();
  CompensatedSum length;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    length.add(0.5 * (speeds[i] + speeds[i + 1]) * (taus[i + 1] - taus[i]));
  }
  return length.value();
}

double geodesic_residual(const GeodesicPath& path) {
  const std::size_t m = path.frame_count();
  if (m < 3) throw TooFewFrames("geodesic_residual: need at least 3 frames");
  LogFrameCache cache(path);
  const std::size_t n = path.grid_size();
  std::vector<double> vmax(n, -std::numeric_limits<double>::infinity());
  std::vector<double> vmin(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < m; ++i) {
    const FrameVelocity v = frame_velocity(path, cache, i);
    double mu = 0.0;
    double var = 0.0;
    velocity_stats(v, n, &mu, &var);
    const double sd = std::sqrt(std::max(0.0, var));
    if (sd < kSpeedFloor) {
      throw ZeroSpeed("geodesic_residual: frame " + std::to_string(i) +
                      " has (numerically) zero speed");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double val = (v(k) - mu) / sd;
      vmax[k] = std::max(vmax[k], val);
      vmin[k] = std::min(vmin[k], val);
    }
  }
  double residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    residual = std::max(residual, vmax[k] - vmin[k]);
  }
  return residual;
}

}  // namespace spectral

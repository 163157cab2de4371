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

#include "spectral/distances.hpp"

#include <cmath>
#include <limits>

#include "spectral/error.hpp"
#include "spectral/kahan.hpp"

namespace spectral {

namespace {

constexpr double kZeroClamp = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Distances of numerically constant ratios come out as rounding-dominated
// Jensen gaps; snap those to an exact 0.
double clamp_zero(double v) { return std::abs(v) <= kZeroClamp ? 0.0 : v; }

void check_sizes(const SpectrumGrid& a, const SpectrumGrid& b,
                 const char* what) {
  if (a.size() != b.size()) {
    throw LengthMismatch(std::string(what) + ": grid sizes differ");
  }
}

DistanceValue make_value(double v, DistanceKind kind) {
  return DistanceValue{v, kind, std::nullopt, std::nullopt};
}

}  // namespace

bool DistanceValue::is_infinite() const { return std::isinf(value); }

DistanceValue delta_ag(const SpectrumGrid& f1, const SpectrumGrid& f2) {
  check_sizes(f1, f2, "delta_ag");
  CompensatedSum ratio_sum;
  CompensatedSum log_sum;
  for (std::size_t k = 0; k < f1.size(); ++k) {
    const double r = f1[k] / f2[k];
    ratio_sum.add(r);
    log_sum.add(std::log(r));
  }
  const double n = static_cast<double>(f1.size());
  const double arith = ratio_sum.value() / n;
  const double logmean = log_sum.value() / n;
  if (!std::isfinite(arith) || !std::isfinite(logmean)) {
    return make_value(kInf, DistanceKind::kAg);
  }
  return make_value(clamp_zero(std::log(arith) - logmean), DistanceKind::kAg);
}

DistanceValue delta_sym(const SpectrumGrid& f1, const SpectrumGrid& f2) {
  const DistanceValue fwd = delta_ag(f1, f2);
  const DistanceValue bwd = delta_ag(f2, f1);
  return make_value(clamp_zero(fwd.value + bwd.value), DistanceKind::kSym);
}

DistanceValue delta_kl(const SpectrumGrid& f1, const SpectrumGrid& f2) {
  check_sizes(f1, f2, "delta_kl");
  const double m1 = mean(f1);
  const double m2 = mean(f2);
  CompensatedSum acc;
  for (std::size_t k = 0; k < f1.size(); ++k) {
    const double a = f1[k] / m1;
    const double b = f2[k] / m2;
    acc.add(a * std::log(a / b));
  }
  const double v = acc.value() / static_cast<double>(f1.size());
  if (!std::isfinite(v)) return make_value(kInf, DistanceKind::kKl);
  return make_value(clamp_zero(v), DistanceKind::kKl);
}

double rho_smooth(const SpectrumGrid& f1, const SpectrumGrid& f2) {
  check_sizes(f1, f2, "rho_smooth");
  CompensatedSum a_sum;  // f1/f2^2
  CompensatedSum b_sum;  // 1/f1
  CompensatedSum c_sum;  // 1/f2
  for (std::size_t k = 0; k < f1.size(); ++k) {
    a_sum.add(f1[k] / (f2[k] * f2[k]));
    b_sum.add(1.0 / f1[k]);
    c_sum.add(1.0 / f2[k]);
  }
  const double n = static_cast<double>(f1.size());
  const double a = a_sum.value() / n;
  const double b = b_sum.value() / n;
  const double c = c_sum.value() / n;
  const double rho = a * b / (c * c);
  if (!std::isfinite(rho)) return rho;

  // Same quantity through the dphi_1-weighted route: mean square of f1/f2
  // over the squared mean, both weighted by 1/f1.
  const SpectrumGrid lam = ratio(f1, f2);
  const SpectrumGrid w = pow_grid(f1, -1.0);
  const double ms = weighted_mean(product(lam, lam), w);
  const double mw = weighted_mean(lam, w);
  const double rho_weighted = ms / (mw * mw);
  if (std::isfinite(rho) && std::isfinite(rho_weighted) &&
      std::abs(rho - rho_weighted) > 1e-12 * std::abs(rho)) {
    throw Error("rho_smooth: closed form and weighted-mean form disagree");
  }
  return rho;
}

DistanceValue delta_smooth(const SpectrumGrid& f1, const SpectrumGrid& f2) {
  const double rho = rho_smooth(f1, f2);
  if (!std::isfinite(rho)) return make_value(kInf, DistanceKind::kSmooth);
  return make_value(clamp_zero(std::log(rho)), DistanceKind::kSmooth);
}

DistanceValue delta_rs(const SpectrumGrid& f1, const SpectrumGrid& f2,
                       const MeanOrder& r, const MeanOrder& s) {
  check_sizes(f1, f2, "delta_rs");
  if (!(r < s)) {
    throw BadOrder("delta_rs: need r < s, got r = " + r.to_string() +
                   ", s = " + s.to_string());
  }
  double value;
  try {
    const SpectrumGrid lam = ratio(f1, f2);
    const double ms = generalized_mean(lam, s);
    const double mr = generalized_mean(lam, r);
    value = std::log(ms) - std::log(mr);
  } catch (const OverflowError&) {
    value = kInf;
  } catch (const InvalidArgument&) {
    // A pointwise ratio overflowed before any mean could be taken.
    value = kInf;
  }
  if (!std::isfinite(value)) value = kInf;
  DistanceValue out = make_value(std::isinf(value) ? value : clamp_zero(value),
                                 DistanceKind::kRs);
  out.order_r = r;
  out.order_s = s;
  return out;
}

}  // namespace spectral

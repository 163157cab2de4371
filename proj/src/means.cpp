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

#include "spectral/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <span>

#include "spectral/error.hpp"
#include "spectral/kahan.hpp"

namespace spectral {

namespace {

double mean_of(std::span<const double> v) {
  CompensatedSum acc;
  for (double x : v) acc.add(x);
  return acc.value() / static_cast<double>(v.size());
}

}  // namespace

MeanOrder MeanOrder::finite(double r) {
  if (!std::isfinite(r)) {
    throw InvalidArgument("MeanOrder::finite: exponent must be finite");
  }
  if (r == 0.0) return zero();
  return MeanOrder(Kind::kFinite, r);
}

std::string MeanOrder::to_string() const {
  switch (kind_) {
    case Kind::kZero:
      return "0";
    case Kind::kPlusInf:
      return "inf";
    case Kind::kMinusInf:
      return "-inf";
    case Kind::kFinite:
      break;
  }
  std::ostringstream os;
  os << r_;
  return os.str();
}

bool operator<(const MeanOrder& a, const MeanOrder& b) {
  auto key = [](const MeanOrder& m) {
    if (m.is_minus_infinity()) return -std::numeric_limits<double>::infinity();
    if (m.is_plus_infinity()) return std::numeric_limits<double>::infinity();
    return m.exponent();
  };
  return key(a) < key(b);
}

bool operator==(const MeanOrder& a, const MeanOrder& b) {
  return !(a < b) && !(b < a);
}

double mean(const SpectrumGrid& f) { return mean_of(f.values()); }
double mean(const SignedGrid& f) { return mean_of(f.values()); }

double geometric_mean(const SpectrumGrid& f) {
  CompensatedSum acc;
  for (double v : f.values()) acc.add(std::log(v));
  return std::exp(acc.value() / static_cast<double>(f.size()));
}

double harmonic_mean(const SpectrumGrid& f) {
  CompensatedSum acc;
  for (double v : f.values()) acc.add(1.0 / v);
  return static_cast<double>(f.size()) / acc.value();
}

double generalized_mean(const SpectrumGrid& f, const MeanOrder& r) {
  if (r.is_plus_infinity()) {
    return *std::max_element(f.values().begin(), f.values().end());
  }
  if (r.is_minus_infinity()) {
    return *std::min_element(f.values().begin(), f.values().end());
  }
  if (r.is_zero()) return geometric_mean(f);
  const double p = r.exponent();
  if (p == 1.0) return mean(f);
  if (p == -1.0) return harmonic_mean(f);
  CompensatedSum acc;
  double max_sample = 0.0;
  for (double v : f.values()) {
    max_sample = std::max(max_sample, v);
    acc.add(std::pow(v, p));
  }
  const double m = acc.value() / static_cast<double>(f.size());
  if (!std::isfinite(m)) {
    std::ostringstream os;
    os << "generalized_mean: f^r overflowed for r = " << p
       << ", max sample = " << max_sample;
    throw OverflowError(os.str());
  }
  return std::pow(m, 1.0 / p);
}

double weighted_mean(const SpectrumGrid& g, const SpectrumGrid& weight) {
  if (g.size() != weight.size()) {
    throw LengthMismatch("weighted_mean: grid sizes differ");
  }
  CompensatedSum num;
  CompensatedSum den;
  for (std::size_t k = 0; k < g.size(); ++k) {
    num.add(g[k] * weight[k]);
    den.add(weight[k]);
  }
  return num.value() / den.value();
}

}  // namespace spectral

// Copyright 2026 The nilelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nilelab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nilelab/error.hpp"

namespace nilelab {

SufficientSummary::SufficientSummary(FamilyKind kind,
                                     std::array<double, 2> components,
                                     std::size_t n)
    : kind_(kind), components_(components), n_(n) {
  if (n == 0) throw InputError("summary of an empty sample");
  if (!std::isfinite(components[0]) || !std::isfinite(components[1])) {
    throw InputError("summary components must be finite");
  }
  switch (kind) {
    case FamilyKind::kNile:
      if (!(components[0] > 0.0 && components[1] > 0.0)) {
        throw InputError("Nile summary requires positive means");
      }
      break;
    case FamilyKind::kBivariateGaussianCorr:
      if (components[0] < 0.0) {
        throw InputError("sum of squares must be nonnegative");
      }
      break;
    case FamilyKind::kNormalCV:
      if (n < 2) throw InsufficientSampleError("S needs n >= 2");
      if (components[1] < 0.0) throw InputError("S must be nonnegative");
      break;
    case FamilyKind::kUniformLocation:
      if (components[0] > components[1]) {
        throw InputError("sample minimum exceeds maximum");
      }
      break;
  }
}

bool SufficientSummary::degenerate() const noexcept {
  return kind_ == FamilyKind::kNormalCV && components_[1] == 0.0;
}

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw InputError("mean of an empty sample");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) throw InsufficientSampleError("S needs n >= 2");
  const double mean = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

SufficientSummary sufficient(const ObservationSet& obs) {
  const FamilyKind kind = obs.model().kind();
  const std::size_t n = obs.n();
  switch (kind) {
    case FamilyKind::kNile: {
      double sx = 0.0, sy = 0.0;
      for (const Pair& p : obs.pairs()) {
        sx += p.x;
        sy += p.y;
      }
      const double dn = static_cast<double>(n);
      return SufficientSummary(kind, {sx / dn, sy / dn}, n);
    }
    case FamilyKind::kBivariateGaussianCorr: {
      double squares = 0.0, cross = 0.0;
      for (const Pair& p : obs.pairs()) {
        squares += p.x * p.x + p.y * p.y;
        cross += p.x * p.y;
      }
      return SufficientSummary(kind, {squares, cross}, n);
    }
    case FamilyKind::kNormalCV: {
      const auto xs = obs.scalars();
      if (n < 2) throw InsufficientSampleError("S needs n >= 2");
      return SufficientSummary(kind, {sample_mean(xs), sample_sd(xs)}, n);
    }
    case FamilyKind::kUniformLocation: {
      const auto xs = obs.scalars();
      const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      return SufficientSummary(kind, {*lo, *hi}, n);
    }
  }
  throw InputError("unknown family kind");
}

AncillaryValue ancillary(const SufficientSummary& summary) {
  switch (summary.kind()) {
    case FamilyKind::kNile:
      return {AncillaryId::kNileProduct, summary.first() * summary.second()};
    case FamilyKind::kNormalCV:
      if (summary.degenerate()) {
        throw DegenerateSampleError("xbar / s undefined: all observations equal");
      }
      return {AncillaryId::kNormalCVRatio, summary.first() / summary.second()};
    case FamilyKind::kUniformLocation:
      return {AncillaryId::kUniformRange, summary.second() - summary.first()};
    case FamilyKind::kBivariateGaussianCorr:
      break;
  }
  throw UnsupportedError(
      "no ancillary function of the sufficient statistic for " +
      std::string(to_string(summary.kind())));
}

int first_order_H(const Pair& point) {
  const auto h = [](double u) { return std::abs(u) <= 1.0 ? 1 : 0; };
  return h(point.x) + h(point.y);
}

int positive_indicator(double x) { return x > 0.0 ? 1 : 0; }

std::vector<double> residuals(const ObservationSet& obs, bool standardized) {
  const auto xs = obs.scalars();
  if (xs.size() < 2) throw InsufficientSampleError("residuals need n >= 2");
  const double mean = sample_mean(xs);
  if (!standardized) {
    std::vector<double> out(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) out[i] = xs[i] - mean;
    return out;
  }
  const double s = sample_sd(xs);
  if (s == 0.0) {
    throw DegenerateSampleError("standardized residuals undefined: s == 0");
  }
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - mean) / s;
  return out;
}

}  // namespace nilelab

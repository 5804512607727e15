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

#ifndef NILELAB_STATISTICS_HPP_
#define NILELAB_STATISTICS_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "nilelab/families.hpp"

namespace nilelab {

// Minimal sufficient statistic of one sample.
//
//   Nile                   (xbar, ybar)
//   BivariateGaussianCorr  (sum(x^2 + y^2), sum(x y))
//   NormalCV               (xbar, s)     s with divisor n - 1
//   UniformLocation        (x_(1), x_(n))
//
// NormalCV is summarised by S rather than S^2; the map s -> s^2 is a
// bijection on s >= 0 so both carry the same information.
class SufficientSummary {
 public:
  SufficientSummary(FamilyKind kind, std::array<double, 2> components,
                    std::size_t n);

  FamilyKind kind() const noexcept { return kind_; }
  const std::array<double, 2>& components() const noexcept { return components_; }
  double first() const noexcept { return components_[0]; }
  double second() const noexcept { return components_[1]; }
  std::size_t n() const noexcept { return n_; }

  // NormalCV with s == 0: every observation equal.
  bool degenerate() const noexcept;

 private:
  FamilyKind kind_;
  std::array<double, 2> components_;
  std::size_t n_;
};

enum class AncillaryId {
  kNileProduct,       // xbar * ybar
  kNormalCVRatio,     // xbar / s
  kUniformRange,      // x_(n) - x_(1)
  kFirstOrderH,       // 1{|x| <= 1} + 1{|y| <= 1}
  kPositiveIndicator, // 1{x > 0}
  kStdResiduals,      // (x_i - xbar) / s
};

struct AncillaryValue {
  AncillaryId id;
  double value;
};

double sample_mean(std::span<const double> xs);
// Sample standard deviation with divisor n - 1. Requires n >= 2.
double sample_sd(std::span<const double> xs);

// Throws InsufficientSampleError for NormalCV with n < 2.
SufficientSummary sufficient(const ObservationSet& obs);

// The ancillary function of the sufficient statistic: xbar*ybar (Nile),
// xbar/s (NormalCV), range (UniformLocation). Throws DegenerateSampleError
// when s == 0 and UnsupportedError for the Gaussian pair, which has no
// known ancillary inside its sufficient statistic.
AncillaryValue ancillary(const SufficientSummary& summary);

// H(x, y) = 1{|x| <= 1} + 1{|y| <= 1}. Invariant under (x,y) -> (y,x) and
// (x,y) -> (-x,-y); its mean does not depend on rho.
int first_order_H(const Pair& point);

int positive_indicator(double x);

// standardized == false: the first n - 1 residuals x_i - xbar.
// standardized == true: all n values (x_i - xbar) / s.
// Requires a scalar sample with n >= 2.
std::vector<double> residuals(const ObservationSet& obs, bool standardized);

}  // namespace nilelab

#endif  // NILELAB_STATISTICS_HPP_

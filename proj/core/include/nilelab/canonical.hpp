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

#ifndef NILELAB_CANONICAL_HPP_
#define NILELAB_CANONICAL_HPP_

#include <array>
#include <optional>

#include "nilelab/families.hpp"

namespace nilelab {

// Natural parameters of the three exponential families and the polynomial
// constraint that curves each of them:
//
//   Nile                   eta = (-theta, -1/theta)
//                          eta1 eta2 - 1 = 0
//   BivariateGaussianCorr  eta = (-1/(2(1-rho^2)), rho/(1-rho^2))
//                          2 eta1 - eta2^2 + 4 eta1^2 = 0
//   NormalCV               eta = (1/(c^2 theta), -1/(2 c^2 theta^2))
//                          eta1^2 + (2/c^2) eta2 = 0
//
// NormalCV pairs eta1 with sum(x) and eta2 with sum(x^2). The swapped
// ordering eta' = (eta2, eta1) satisfies the equivalent constraint
// eta1' + (c^2/2) eta2'^2 = 0.
struct NaturalParams {
  FamilyKind kind;
  std::array<double, 2> eta;
  double residual;
  std::optional<double> c;  // set for NormalCV
};

// Throws UnsupportedError for the uniform location family, which is not
// an exponential family.
NaturalParams natural_params(const FamilyModel& model);

// Constraint polynomial at eta, summed with error-free transformations so
// that on-curve points evaluate to within a few ulps of the terms. Throws
// InputError for non-finite eta or when c is missing for NormalCV.
double constraint_residual(FamilyKind kind, const std::array<double, 2>& eta,
                           std::optional<double> c = std::nullopt);

}  // namespace nilelab

#endif  // NILELAB_CANONICAL_HPP_

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

#ifndef NILELAB_FAMILIES_HPP_
#define NILELAB_FAMILIES_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "nilelab/rng.hpp"

namespace nilelab {

enum class FamilyKind {
  kNile,                   // e^{-(x theta + y / theta)} on the positive quadrant
  kBivariateGaussianCorr,  // unit-variance Gaussian pair, correlation rho
  kNormalCV,               // N(theta, c^2 theta^2), theta > 0, c known
  kUniformLocation,        // U(theta - 1, theta + 1)
};

std::string_view to_string(FamilyKind kind);
// Accepts the kebab-case names used in config files ("nile", "normal-cv", ...).
FamilyKind parse_family_kind(std::string_view name);

// A fully specified population. Construction validates the parameter domain,
// so every FamilyModel in existence is a valid one.
class FamilyModel {
 public:
  static FamilyModel nile(double theta);
  static FamilyModel bivariate_gaussian(double rho);
  static FamilyModel normal_cv(double theta, double c = 1.0);
  static FamilyModel uniform_location(double theta);

  // Builds the model whose scalar parameter (theta, or rho for the Gaussian
  // pair) is `parameter`. `c` is only read for kNormalCV.
  static FamilyModel with_parameter(FamilyKind kind, double parameter,
                                    double c = 1.0);

  FamilyKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  double rho() const noexcept { return rho_; }
  double c() const noexcept { return c_; }
  double parameter() const noexcept;
  bool paired() const noexcept;

 private:
  FamilyModel(FamilyKind kind, double theta, double rho, double c)
      : kind_(kind), theta_(theta), rho_(rho), c_(c) {}

  FamilyKind kind_;
  double theta_;
  double rho_;
  double c_;
};

struct Pair {
  double x;
  double y;
};

using Observation = std::variant<double, Pair>;

// n observations drawn from (or attributed to) one FamilyModel.
class ObservationSet {
 public:
  ObservationSet(FamilyModel model, std::vector<double> points,
                 StreamId seed_trace = {});
  ObservationSet(FamilyModel model, std::vector<Pair> points,
                 StreamId seed_trace = {});

  const FamilyModel& model() const noexcept { return model_; }
  const StreamId& seed_trace() const noexcept { return seed_trace_; }
  std::size_t n() const noexcept;
  bool paired() const noexcept {
    return std::holds_alternative<std::vector<Pair>>(points_);
  }

  // Throw InputError when the set holds the other shape.
  std::span<const double> scalars() const;
  std::span<const Pair> pairs() const;

 private:
  void validate() const;

  FamilyModel model_;
  std::variant<std::vector<double>, std::vector<Pair>> points_;
  StreamId seed_trace_;
};

// f(point; parameters). Zero outside the support, including the Nile
// boundary x = 0 or y = 0. Throws InputError for non-finite points or a
// point of the wrong shape.
double density(const FamilyModel& model, const Observation& point);

// n i.i.d. draws. Nile: X ~ Exp(rate theta), Y ~ Exp(rate 1/theta) by
// inverse CDF. Gaussian pair: X = Z1, Y = rho Z1 + sqrt(1 - rho^2) Z2.
ObservationSet sample(const FamilyModel& model, std::size_t n,
                      RngStream& stream);

}  // namespace nilelab

#endif  // NILELAB_FAMILIES_HPP_

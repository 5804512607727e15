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

#include "nilelab/canonical.hpp"

#include <cmath>
#include <initializer_list>

#include "nilelab/error.hpp"

namespace nilelab {
namespace {

struct Expansion {
  double hi;
  double lo;
};

// a * b = hi + lo exactly.
Expansion two_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Neumaier summation.
double compensated_sum(std::initializer_list<double> terms) {
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      comp += (sum - s) + t;
    } else {
      comp += (t - s) + sum;
    }
    sum = s;
  }
  return sum + comp;
}

}  // namespace

NaturalParams natural_params(const FamilyModel& model) {
  switch (model.kind()) {
    case FamilyKind::kNile: {
      const std::array<double, 2> eta = {-model.theta(), -1.0 / model.theta()};
      return {model.kind(), eta, constraint_residual(model.kind(), eta), std::nullopt};
    }
    case FamilyKind::kBivariateGaussianCorr: {
      const double r = model.rho();
      const double d = 1.0 - r * r;
      const std::array<double, 2> eta = {-1.0 / (2.0 * d), r / d};
      return {model.kind(), eta, constraint_residual(model.kind(), eta), std::nullopt};
    }
    case FamilyKind::kNormalCV: {
      const double c2 = model.c() * model.c();
      const double t = model.theta();
      const std::array<double, 2> eta = {1.0 / (c2 * t), -1.0 / (2.0 * c2 * t * t)};
      return {model.kind(), eta, constraint_residual(model.kind(), eta, model.c()),
              model.c()};
    }
    case FamilyKind::kUniformLocation:
      break;
  }
  throw UnsupportedError("the uniform location family is not an exponential family");
}

double constraint_residual(FamilyKind kind, const std::array<double, 2>& eta,
                           std::optional<double> c) {
  if (!std::isfinite(eta[0]) || !std::isfinite(eta[1])) {
    throw InputError("natural parameters must be finite");
  }
  switch (kind) {
    case FamilyKind::kNile: {
      const Expansion p = two_product(eta[0], eta[1]);
      return compensated_sum({p.hi, -1.0, p.lo});
    }
    case FamilyKind::kBivariateGaussianCorr: {
      const Expansion sq2 = two_product(eta[1], eta[1]);
      const Expansion sq1 = two_product(eta[0], eta[0]);
      return compensated_sum(
          {2.0 * eta[0], -sq2.hi, 4.0 * sq1.hi, -sq2.lo, 4.0 * sq1.lo});
    }
    case FamilyKind::kNormalCV: {
      if (!c) throw InputError("NormalCV constraint needs c");
      if (!(*c > 0.0) || !std::isfinite(*c)) throw InputError("c must be positive");
      const Expansion sq = two_product(eta[0], eta[0]);
      const Expansion lin = two_product(2.0 / (*c * *c), eta[1]);
      return compensated_sum({sq.hi, lin.hi, sq.lo, lin.lo});
    }
    case FamilyKind::kUniformLocation:
      break;
  }
  throw UnsupportedError("the uniform location family has no natural parameters");
}

}  // namespace nilelab

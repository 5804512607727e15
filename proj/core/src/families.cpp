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

#include "nilelab/families.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nilelab/error.hpp"

namespace nilelab {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

double as_scalar(const Observation& point) {
  const double* x = std::get_if<double>(&point);
  if (x == nullptr) throw InputError("family expects a scalar observation");
  if (!std::isfinite(*x)) throw InputError("observation must be finite");
  return *x;
}

Pair as_pair(const Observation& point) {
  const Pair* p = std::get_if<Pair>(&point);
  if (p == nullptr) throw InputError("family expects a paired observation");
  if (!std::isfinite(p->x) || !std::isfinite(p->y)) {
    throw InputError("observation must be finite");
  }
  return *p;
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kNile:
      return "nile";
    case FamilyKind::kBivariateGaussianCorr:
      return "bivariate-gaussian";
    case FamilyKind::kNormalCV:
      return "normal-cv";
    case FamilyKind::kUniformLocation:
      return "uniform-location";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (FamilyKind k :
       {FamilyKind::kNile, FamilyKind::kBivariateGaussianCorr,
        FamilyKind::kNormalCV, FamilyKind::kUniformLocation}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown family '" + std::string(name) + "'");
}

FamilyModel FamilyModel::nile(double theta) {
  require_finite(theta, "theta");
  if (!(theta > 0.0)) throw DomainError("Nile family requires theta > 0");
  return FamilyModel(FamilyKind::kNile, theta, 0.0, 1.0);
}

FamilyModel FamilyModel::bivariate_gaussian(double rho) {
  require_finite(rho, "rho");
  if (!(rho > -1.0 && rho < 1.0)) {
    throw DomainError("bivariate Gaussian family requires -1 < rho < 1");
  }
  return FamilyModel(FamilyKind::kBivariateGaussianCorr, 0.0, rho, 1.0);
}

FamilyModel FamilyModel::normal_cv(double theta, double c) {
  require_finite(theta, "theta");
  require_finite(c, "c");
  if (!(theta > 0.0)) throw DomainError("N(theta, c^2 theta^2) requires theta > 0");
  if (!(c > 0.0)) throw DomainError("N(theta, c^2 theta^2) requires c > 0");
  return FamilyModel(FamilyKind::kNormalCV, theta, 0.0, c);
}

FamilyModel FamilyModel::uniform_location(double theta) {
  require_finite(theta, "theta");
  return FamilyModel(FamilyKind::kUniformLocation, theta, 0.0, 1.0);
}

FamilyModel FamilyModel::with_parameter(FamilyKind kind, double parameter,
                                        double c) {
  switch (kind) {
    case FamilyKind::kNile:
      return nile(parameter);
    case FamilyKind::kBivariateGaussianCorr:
      return bivariate_gaussian(parameter);
    case FamilyKind::kNormalCV:
      return normal_cv(parameter, c);
    case FamilyKind::kUniformLocation:
      return uniform_location(parameter);
  }
  throw InputError("unknown family kind");
}

double FamilyModel::parameter() const noexcept {
  return kind_ == FamilyKind::kBivariateGaussianCorr ? rho_ : theta_;
}

bool FamilyModel::paired() const noexcept {
  return kind_ == FamilyKind::kNile ||
         kind_ == FamilyKind::kBivariateGaussianCorr;
}

ObservationSet::ObservationSet(FamilyModel model, std::vector<double> points,
                               StreamId seed_trace)
    : model_(model), points_(std::move(points)), seed_trace_(seed_trace) {
  validate();
}

ObservationSet::ObservationSet(FamilyModel model, std::vector<Pair> points,
                               StreamId seed_trace)
    : model_(model), points_(std::move(points)), seed_trace_(seed_trace) {
  validate();
}

std::size_t ObservationSet::n() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, points_);
}

std::span<const double> ObservationSet::scalars() const {
  const auto* v = std::get_if<std::vector<double>>(&points_);
  if (v == nullptr) throw InputError("observation set holds pairs, not scalars");
  return *v;
}

std::span<const Pair> ObservationSet::pairs() const {
  const auto* v = std::get_if<std::vector<Pair>>(&points_);
  if (v == nullptr) throw InputError("observation set holds scalars, not pairs");
  return *v;
}

void ObservationSet::validate() const {
  if (n() == 0) throw InputError("observation set must be nonempty");
  if (paired() != model_.paired()) {
    throw InputError(std::string("observation shape does not match family ") +
                     std::string(to_string(model_.kind())));
  }
  if (paired()) {
    for (const Pair& p : pairs()) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw InputError("observations must be finite");
      }
      if (model_.kind() == FamilyKind::kNile && !(p.x > 0.0 && p.y > 0.0)) {
        throw InputError("Nile observations must be strictly positive");
      }
    }
  } else {
    for (double x : scalars()) {
      if (!std::isfinite(x)) throw InputError("observations must be finite");
    }
  }
}

double density(const FamilyModel& model, const Observation& point) {
  using std::numbers::pi;
  switch (model.kind()) {
    case FamilyKind::kNile: {
      const Pair p = as_pair(point);
      if (p.x <= 0.0 || p.y <= 0.0) return 0.0;
      return std::exp(-(p.x * model.theta() + p.y / model.theta()));
    }
    case FamilyKind::kBivariateGaussianCorr: {
      const Pair p = as_pair(point);
      const double r = model.rho();
      const double one_minus = 1.0 - r * r;
      const double q = p.x * p.x + p.y * p.y - 2.0 * r * p.x * p.y;
      return std::exp(-q / (2.0 * one_minus)) / (2.0 * pi * std::sqrt(one_minus));
    }
    case FamilyKind::kNormalCV: {
      const double x = as_scalar(point);
      const double sd = model.c() * model.theta();
      const double z = (x - model.theta()) / sd;
      return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * pi) * sd);
    }
    case FamilyKind::kUniformLocation: {
      const double x = as_scalar(point);
      return std::abs(x - model.theta()) <= 1.0 ? 0.5 : 0.0;
    }
  }
  return 0.0;
}

ObservationSet sample(const FamilyModel& model, std::size_t n,
                      RngStream& stream) {
  if (n == 0) throw InputError("sample size must be at least 1");
  switch (model.kind()) {
    case FamilyKind::kNile: {
      std::vector<Pair> pts(n);
      for (Pair& p : pts) {
        p.x = stream.exponential(model.theta());
        p.y = stream.exponential(1.0 / model.theta());
      }
      return ObservationSet(model, std::move(pts), stream.id());
    }
    case FamilyKind::kBivariateGaussianCorr: {
      const double r = model.rho();
      const double s = std::sqrt(1.0 - r * r);
      std::vector<Pair> pts(n);
      for (Pair& p : pts) {
        const double z1 = stream.standard_normal();
        const double z2 = stream.standard_normal();
        p.x = z1;
        p.y = r * z1 + s * z2;
      }
      return ObservationSet(model, std::move(pts), stream.id());
    }
    case FamilyKind::kNormalCV: {
      const double sd = model.c() * model.theta();
      std::vector<double> xs(n);
      for (double& x : xs) x = model.theta() + sd * stream.standard_normal();
      return ObservationSet(model, std::move(xs), stream.id());
    }
    case FamilyKind::kUniformLocation: {
      std::vector<double> xs(n);
      for (double& x : xs) x = stream.uniform(model.theta() - 1.0, model.theta() + 1.0);
      return ObservationSet(model, std::move(xs), stream.id());
    }
  }
  throw InputError("unknown family kind");
}

}  // namespace nilelab

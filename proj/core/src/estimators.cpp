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

#include "nilelab/estimators.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "nilelab/error.hpp"
#include "nilelab/quadrature.hpp"

namespace nilelab {
namespace {

void require_family(const SufficientSummary& s, FamilyKind kind,
                    const char* estimator) {
  if (s.kind() != kind) {
    throw UnsupportedError(std::string(estimator) + " does not apply to " +
                           std::string(to_string(s.kind())));
  }
}

// Lagrange interpolation at t over unit-spaced nodes first, first+1, ...
template <std::size_t N>
double lagrange(const std::array<double, N>& values, double first, double t) {
  double result = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double basis = 1.0;
    for (std::size_t j = 0; j < N; ++j) {
      if (j != i) {
        basis *= (t - (first + static_cast<double>(j))) /
                 static_cast<double>(static_cast<long>(i) - static_cast<long>(j));
      }
    }
    result += basis * values[i];
  }
  return result;
}

// Node k sits at ln w = k / 32; these bound w to [1e-8, 1e8].
constexpr long kFirstNode = -589;
constexpr long kLastNode = 589;

}  // namespace

EstimatorSpec EstimatorSpec::nile_mle() { return {EstimatorId::kNileMLE, {}, "nile-mle", 1.0}; }

EstimatorSpec EstimatorSpec::nile_equivariant(ScaleFunction h, std::string label) {
  if (!h) throw InputError("equivariant estimator needs a scale function");
  return {EstimatorId::kNileEquivariant, std::move(h), std::move(label), 1.0};
}

EstimatorSpec EstimatorSpec::nile_equivariant_star() {
  return {EstimatorId::kNileEquivariantStar, {}, "nile-equivariant-star", 1.0};
}

EstimatorSpec EstimatorSpec::normalcv_mle(double c) {
  return {EstimatorId::kNormalCVMLE, {}, "normalcv-mle", c};
}

EstimatorSpec EstimatorSpec::khan_linear(double c) {
  return {EstimatorId::kKhanLinear, {}, "khan-linear", c};
}

EstimatorSpec EstimatorSpec::pitman_midrange() {
  return {EstimatorId::kPitmanMidrange, {}, "pitman-midrange", 1.0};
}

EstimatorSpec EstimatorSpec::sample_mean() {
  return {EstimatorId::kSampleMean, {}, "sample-mean", 1.0};
}

std::string EstimatorSpec::name() const { return label; }

EstimatorSpec parse_estimator(const std::string& name, double c) {
  if (name == "nile-mle") return EstimatorSpec::nile_mle();
  if (name == "nile-equivariant-star") return EstimatorSpec::nile_equivariant_star();
  if (name == "nile-ybar") {
    return EstimatorSpec::nile_equivariant([](double) { return 1.0; }, name);
  }
  if (name == "nile-inverse-xbar") {
    return EstimatorSpec::nile_equivariant([](double w) { return 1.0 / w; }, name);
  }
  if (name == "normalcv-mle") return EstimatorSpec::normalcv_mle(c);
  if (name == "khan-linear") return EstimatorSpec::khan_linear(c);
  if (name == "pitman-midrange") return EstimatorSpec::pitman_midrange();
  if (name == "sample-mean") return EstimatorSpec::sample_mean();
  throw InputError("unknown estimator '" + name + "'");
}

double nile_mle(const SufficientSummary& summary) {
  require_family(summary, FamilyKind::kNile, "nile-mle");
  return std::sqrt(summary.second() / summary.first());
}

double nile_equivariant(const SufficientSummary& summary, const ScaleFunction& h) {
  require_family(summary, FamilyKind::kNile, "nile-equivariant");
  const double w = summary.first() * summary.second();
  const double hw = h(w);
  if (!std::isfinite(hw) || !(hw > 0.0)) {
    throw EvaluationError("scale function must be positive and finite, got " +
                          std::to_string(hw) + " at w = " + std::to_string(w));
  }
  return summary.second() * hw;
}

double h_star(double w, std::size_t n) { return 1.0 / cond_moment(1, w, n); }

HStarTable::HStarTable(std::size_t n) : n_(n) {
  if (n == 0) throw InputError("sample size must be at least 1");
}

HStarTable& HStarTable::shared(std::size_t n) {
  static std::mutex registry_mutex;
  static std::map<std::size_t, std::unique_ptr<HStarTable>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[n];
  if (!slot) slot = std::make_unique<HStarTable>(n);
  return *slot;
}

double HStarTable::node(long k) const {
  {
    std::shared_lock lock(mutex_);
    auto it = nodes_.find(k);
    if (it != nodes_.end()) return it->second;
  }
  const double value = std::log(h_star(std::exp(k * kGridStep), n_));
  std::unique_lock lock(mutex_);
  nodes_.emplace(k, value);
  return value;
}

double HStarTable::operator()(double w) const {
  if (!std::isfinite(w) || !(w > 0.0)) {
    throw DomainError("h* needs a positive finite w");
  }
  const double t = std::log(w) / kGridStep;
  const long base = static_cast<long>(std::floor(t));
  if (base - 3 < kFirstNode || base + 3 > kLastNode) {
    ++direct_;
    return h_star(w, n_);
  }
  std::array<double, 6> quintic{};
  std::array<double, 7> sextic{};
  for (long i = 0; i < 7; ++i) {
    const double v = node(base - 3 + i);
    sextic[i] = v;
    if (i >= 1) quintic[i - 1] = v;
  }
  const double lo5 = lagrange(quintic, static_cast<double>(base - 2), t);
  const double lo6 = lagrange(sextic, static_cast<double>(base - 3), t);
  if (std::abs(lo5 - lo6) > kInterpolationTolerance) {
    ++direct_;
    return h_star(w, n_);
  }
  ++interpolated_;
  return std::exp(lo5);
}

double nile_equivariant_star(const SufficientSummary& summary) {
  require_family(summary, FamilyKind::kNile, "nile-equivariant-star");
  const HStarTable& table = HStarTable::shared(summary.n());
  return summary.second() * table(summary.first() * summary.second());
}

double normalcv_mle(std::span<const double> xs, double c) {
  if (xs.empty()) throw InputError("MLE of an empty sample");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive");
  double sum = 0.0, squares = 0.0;
  for (double x : xs) {
    sum += x;
    squares += x * x;
  }
  if (!(squares > 0.0)) throw InputError("MLE undefined for an all-zero sample");
  const double n = static_cast<double>(xs.size());
  const double root = std::sqrt(sum * sum + 4.0 * n * c * c * squares);
  // Both forms equal the positive root; pick the one free of cancellation.
  return sum >= 0.0 ? 2.0 * squares / (sum + root)
                    : (root - sum) / (2.0 * n * c * c);
}

double normalcv_mle(const SufficientSummary& summary, double c) {
  require_family(summary, FamilyKind::kNormalCV, "normalcv-mle");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive");
  const double n = static_cast<double>(summary.n());
  const double mean = summary.first();
  const double s = summary.second();
  const double sum = n * mean;
  const double squares = (n - 1.0) * s * s + n * mean * mean;
  if (!(squares > 0.0)) throw InputError("MLE undefined for an all-zero sample");
  const double root = std::sqrt(sum * sum + 4.0 * n * c * c * squares);
  return sum >= 0.0 ? 2.0 * squares / (sum + root)
                    : (root - sum) / (2.0 * n * c * c);
}

double khan_b(std::size_t n) {
  if (n < 2) throw InsufficientSampleError("E[S] needs n >= 2");
  const double dn = static_cast<double>(n);
  return std::sqrt(2.0 / (dn - 1.0)) *
         std::exp(std::lgamma(0.5 * dn) - std::lgamma(0.5 * (dn - 1.0)));
}

LinearCoefficients khan_coefficients(std::size_t n, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive");
  const double bn = khan_b(n);
  const double beta = c * bn;
  const double spread = 1.0 - bn * bn;
  const double dn = static_cast<double>(n);
  const double d = dn * spread + beta * beta;
  return {dn * spread / d, beta / d};
}

double khan_linear(const SufficientSummary& summary, double c) {
  require_family(summary, FamilyKind::kNormalCV, "khan-linear");
  const LinearCoefficients k = khan_coefficients(summary.n(), c);
  return k.a * summary.first() + k.b * summary.second();
}

double pitman_midrange(const SufficientSummary& summary) {
  require_family(summary, FamilyKind::kUniformLocation, "pitman-midrange");
  return 0.5 * (summary.first() + summary.second());
}

double evaluate(const EstimatorSpec& spec, const ObservationSet& obs) {
  switch (spec.id) {
    case EstimatorId::kNileMLE:
      return nile_mle(sufficient(obs));
    case EstimatorId::kNileEquivariant:
      return nile_equivariant(sufficient(obs), spec.h);
    case EstimatorId::kNileEquivariantStar:
      return nile_equivariant_star(sufficient(obs));
    case EstimatorId::kNormalCVMLE:
      if (obs.model().kind() != FamilyKind::kNormalCV) break;
      return normalcv_mle(obs.scalars(), spec.c);
    case EstimatorId::kKhanLinear:
      return khan_linear(sufficient(obs), spec.c);
    case EstimatorId::kPitmanMidrange:
      return pitman_midrange(sufficient(obs));
    case EstimatorId::kSampleMean:
      if (obs.paired()) break;
      return sample_mean(obs.scalars());
  }
  throw UnsupportedError(spec.name() + " does not apply to " +
                         std::string(to_string(obs.model().kind())));
}

}  // namespace nilelab

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

#ifndef NILELAB_ESTIMATORS_HPP_
#define NILELAB_ESTIMATORS_HPP_

#include <atomic>
#include <cstddef>
#include <functional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>

#include "nilelab/families.hpp"
#include "nilelab/statistics.hpp"

namespace nilelab {

enum class EstimatorId {
  kNileMLE,              // sqrt(ybar / xbar)
  kNileEquivariant,      // ybar * h(xbar * ybar), user h
  kNileEquivariantStar,  // ybar * h*(W), h* = 1 / E_1(Ybar | W)
  kNormalCVMLE,
  kKhanLinear,
  kPitmanMidrange,
  kSampleMean,
};

// Positive function of the ancillary W used by equivariant Nile estimators.
using ScaleFunction = std::function<double(double)>;

struct EstimatorSpec {
  EstimatorId id = EstimatorId::kSampleMean;
  ScaleFunction h;     // kNileEquivariant only
  std::string label;   // display name; defaults to the id's name
  double c = 1.0;      // known coefficient of variation for NormalCV

  static EstimatorSpec nile_mle();
  static EstimatorSpec nile_equivariant(ScaleFunction h, std::string label);
  static EstimatorSpec nile_equivariant_star();
  static EstimatorSpec normalcv_mle(double c);
  static EstimatorSpec khan_linear(double c);
  static EstimatorSpec pitman_midrange();
  static EstimatorSpec sample_mean();

  std::string name() const;
};

// Parses the config-file names ("nile-mle", "khan-linear", ...). Besides
// the ids above, "nile-ybar" (h = 1) and "nile-inverse-xbar" (h = 1/w)
// name two fixed equivariant Nile estimators.
EstimatorSpec parse_estimator(const std::string& name, double c = 1.0);

struct EstimateRecord {
  EstimatorId id;
  double value;
  double theta_true;
  std::size_t replicate;
};

double nile_mle(const SufficientSummary& summary);

// ybar * h(xbar * ybar). Throws EvaluationError when h is not positive and
// finite at W.
double nile_equivariant(const SufficientSummary& summary, const ScaleFunction& h);

// h*(w) = 1 / E_1(Ybar | W = w), evaluated directly by quadrature.
double h_star(double w, std::size_t n);

// Memoized h*(., n): values of log h* are cached on the grid ln w = k / 32
// and interpolated with a degree-5 Lagrange stencil. When the degree-5 and
// degree-6 interpolants disagree by more than 1e-9, or w lies off the
// grid, h* is evaluated directly. Safe for concurrent use.
class HStarTable {
 public:
  explicit HStarTable(std::size_t n);

  // One shared table per sample size for the lifetime of the process.
  static HStarTable& shared(std::size_t n);

  double operator()(double w) const;

  std::size_t n() const noexcept { return n_; }
  std::size_t direct_evaluations() const noexcept { return direct_.load(); }
  std::size_t interpolations() const noexcept { return interpolated_.load(); }

  static constexpr double kGridStep = 1.0 / 32.0;
  static constexpr double kInterpolationTolerance = 1e-9;

 private:
  double node(long k) const;

  std::size_t n_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<long, double> nodes_;
  mutable std::atomic<std::size_t> direct_{0};
  mutable std::atomic<std::size_t> interpolated_{0};
};

// Unbiased equivariant estimator ybar * h*(W), through the shared table.
double nile_equivariant_star(const SufficientSummary& summary);

// Positive root of the score equation of N(theta, c^2 theta^2):
//   n c^2 theta^2 + (sum x) theta - sum x^2 = 0.
// Throws InputError for an all-zero sample.
double normalcv_mle(std::span<const double> xs, double c);
double normalcv_mle(const SufficientSummary& summary, double c);

// E[S] / (c theta) for a normal sample of size n:
// sqrt(2/(n-1)) Gamma(n/2) / Gamma((n-1)/2).
double khan_b(std::size_t n);

struct LinearCoefficients {
  double a;  // weight on xbar
  double b;  // weight on s
};

// Minimizes a^2/n + b^2 (1 - b_n^2), the variance of a xbar + b s in units
// of c^2 theta^2, subject to unbiasedness a + c b_n b = 1:
//   a = n (1 - b_n^2) / D,  b = c b_n / D,  D = n (1 - b_n^2) + c^2 b_n^2.
LinearCoefficients khan_coefficients(std::size_t n, double c);
double khan_linear(const SufficientSummary& summary, double c);

// (x_(1) + x_(n)) / 2.
double pitman_midrange(const SufficientSummary& summary);

// Applies `spec` to a sample. Throws UnsupportedError when the estimator
// does not apply to the sample's family.
double evaluate(const EstimatorSpec& spec, const ObservationSet& obs);

}  // namespace nilelab

#endif  // NILELAB_ESTIMATORS_HPP_

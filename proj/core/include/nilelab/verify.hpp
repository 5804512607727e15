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

#ifndef NILELAB_VERIFY_HPP_
#define NILELAB_VERIFY_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilelab/estimators.hpp"
#include "nilelab/families.hpp"
#include "nilelab/montecarlo.hpp"

namespace nilelab {

// Monte Carlo cannot prove an exact zero, only consistency with one, so
// verdicts are three-valued.
enum class Verdict { kPass, kFail, kInconclusive };
std::string_view to_string(Verdict v);

// Pairwise KS distances below kKsCoefficient * sqrt(2/N) pass: the
// asymptotic two-sample critical value at alpha ~ 0.001.
inline constexpr double kKsCoefficient = 1.95;
inline constexpr double kConsistentZ = 3.0;
inline constexpr double kViolationZ = 4.0;
inline constexpr double kIndependenceAlpha = 1e-3;
inline constexpr double kDependenceFactor = 4.0;
inline constexpr std::size_t kConditioningBins = 10;
// Replicates used to freeze the centering constant of a ZeroMeanSpec.
inline constexpr std::size_t kCalibrationReplicates = 1000000;

struct GridEstimate {
  double parameter;
  std::string label;
  double value;
  double se;
};

struct ReportStatistic {
  std::string name;
  double value;
  std::optional<double> parameter;
  std::optional<double> threshold;
};

struct ClaimVerdict {
  std::string claim;
  Verdict verdict;
  std::string reason;
};

struct VerificationReport {
  std::string claim;
  std::string reference;
  MCConfig config;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<double> grid;
  std::vector<GridEstimate> estimates;
  std::vector<ReportStatistic> statistics;
  std::vector<ClaimVerdict> verdicts;
  std::size_t excluded_replicates = 0;

  // kFail if any verdict fails, else kInconclusive if any is, else kPass.
  Verdict overall() const;
  const ReportStatistic* find_statistic(std::string_view name) const;
  const ClaimVerdict* find_verdict(std::string_view claim) const;
};

// A parametric population indexed by one scalar: one of the library
// families with its constant c, or the N(theta, 1) positive-control
// fixture. The fixture has a complete sufficient statistic (xbar), which
// makes it the reference case every harness must pass.
class Population {
 public:
  static Population family(FamilyKind kind, double c = 1.0);
  static Population unit_normal_fixture();
  // Family names plus "unit-normal-fixture".
  static Population parse(std::string_view name, double c = 1.0);

  // Samples tagged with the exact model; fixture draws are tagged as
  // N(theta, c^2 theta^2) with c = 1/theta, which is N(theta, 1).
  ObservationSet draw(double parameter, std::size_t n, RngStream& stream) const;

  FamilyKind kind() const noexcept { return kind_; }
  bool fixture() const noexcept { return fixture_; }
  double c() const noexcept { return c_; }
  std::string name() const;

 private:
  Population(FamilyKind kind, double c, bool fixture)
      : kind_(kind), c_(c), fixture_(fixture) {}

  FamilyKind kind_;
  double c_;
  bool fixture_;
};

// A named scalar function of a sample.
struct Statistic {
  std::string name;
  std::function<double(const ObservationSet&)> fn;
};

// Known names:
//   nile-product      xbar * ybar                 (ancillary, Nile)
//   normalcv-ratio    xbar / s                    (ancillary, NormalCV)
//   uniform-range     x_(n) - x_(1)               (ancillary, uniform)
//   std-residual      (x_1 - xbar) / s            (ancillary, location-scale)
//   first-order-h     mean of H(x_i, y_i)         (first-order ancillary)
//   positive-indicator mean of 1{x_i > 0}
//   cross-product     mean of x_i y_i             (E = rho; negative control)
//   mean-x            mean of the x coordinates   (negative control)
//   sample-sd         s
//   nile-mle          sqrt(ybar / xbar)
//   constant          0
Statistic statistic_by_name(std::string_view name);

// A statistic U with E_theta U = 0 for every theta. Built either as
// f(W) - E f(W) for an ancillary W, with E f(W) frozen from a calibration
// run (its SE kept in center_se), or as an exact contrast such as X1 - X2.
struct ZeroMeanSpec {
  std::string id;
  std::function<double(const ObservationSet&)> fn;
  double center = 0.0;
  double center_se = 0.0;
};

// f(W) - E f(W) with E f(W) estimated at parameter 1 from
// kCalibrationReplicates replicates (`calibration_replicates` overrides).
ZeroMeanSpec zero_mean_from_ancillary(std::string id, Statistic ancillary,
                                      std::function<double(double)> f,
                                      const Population& population,
                                      std::size_t n, std::uint64_t seed,
                                      std::size_t calibration_replicates =
                                          kCalibrationReplicates);

ZeroMeanSpec first_difference_contrast();

// "log-w", "w", "w-below-median" (1{W <= calibrated median}) built on the
// population's ancillary, or "x1-minus-x2".
ZeroMeanSpec zero_mean_by_name(std::string_view name, const Population& population,
                               std::size_t n, std::uint64_t seed,
                               std::size_t calibration_replicates =
                                   kCalibrationReplicates);

// Distributional invariance of `statistic` over config.theta_grid via all
// pairwise two-sample KS distances. Needs at least two grid points.
VerificationReport verify_ancillarity(const Population& population,
                                      const Statistic& statistic,
                                      const MCConfig& config);

// The constant E H = 2(2 Phi(1) - 1) for first-order-h on the Gaussian
// pair, P(X > 0) = Phi(1/c) for positive-indicator on NormalCV.
std::optional<double> known_first_order_mean(const Population& population,
                                             std::string_view statistic);

// Mean of `statistic` at every grid point within 3 SE of `target`, or of
// the inverse-variance pooled mean when no target is known.
VerificationReport verify_first_order(const Population& population,
                                      const Statistic& statistic,
                                      std::optional<double> target,
                                      const MCConfig& config);

// Decile-binned 10x10 chi-square independence test at every grid point.
VerificationReport verify_independence(const Statistic& a, const Statistic& b,
                                       const Population& population,
                                       const MCConfig& config);

// Estimates E_theta(g^k U) with its SE at every grid point. Consistent with
// the UMVUE necessary condition iff every |z| < 3, violates it iff some
// |z| > 4, inconclusive otherwise. Throws SelfCheckError when U's own mean
// is more than 4 SE from zero at some grid point.
VerificationReport rao_zero_cov(const EstimatorSpec& estimator,
                                const ZeroMeanSpec& u,
                                const Population& population,
                                const MCConfig& config, int power);

// E(g^k | conditioning statistic in decile bin) at one parameter value.
// Reports dependence when the spread of bin means exceeds 4 SE of the
// difference between the extreme bins. For ybar h*(W) with k = 2 on the
// Nile family, also compares each bin to theta^2 times the bin average of
// cond_second_moment_ratio(W, n).
VerificationReport cond_moment_dependence(const EstimatorSpec& estimator,
                                          const Statistic& conditioning,
                                          const Population& population,
                                          double theta, const MCConfig& config,
                                          int power);

// Monte Carlo variance of the NormalCV score (per observation) against
// (1/theta^2)(2 + 1/c^2), and its ratio 2c^2 + 1 to the information
// 1/(c^2 theta^2) of a known-variance normal.
VerificationReport fisher_info(double c, const MCConfig& config);

double fisher_info_closed_form(double theta, double c);

// Bias, variance and MSE (with SEs) of each estimator at each grid point.
VerificationReport variance_table(std::span<const EstimatorSpec> estimators,
                                  const Population& population,
                                  const MCConfig& config);

}  // namespace nilelab

#endif  // NILELAB_VERIFY_HPP_

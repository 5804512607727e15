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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes. Run with a criterion number to run just that
// one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nilelab/canonical.hpp"
#include "nilelab/cli/experiments.hpp"
#include "nilelab/cli/report_io.hpp"
#include "nilelab/estimators.hpp"
#include "nilelab/quadrature.hpp"
#include "nilelab/statistics.hpp"
#include "nilelab/verify.hpp"
#include "support/oracles.hpp"

namespace {

using namespace nilelab;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

MCConfig mc(std::vector<double> grid, std::size_t n, std::size_t replicates,
            std::uint64_t seed = 42) {
  MCConfig c;
  c.master_seed = seed;
  c.replicates = replicates;
  c.theta_grid = std::move(grid);
  c.n = n;
  c.workers = 1;
  return c;
}

double max_abs_z(const VerificationReport& r) {
  double z = 0.0;
  for (const ReportStatistic& s : r.statistics) {
    if (s.name == "z") z = std::max(z, std::abs(s.value));
  }
  return z;
}

Outcome quadrature_vs_bessel() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int nu = -3; nu <= 3; ++nu) {
    for (int n = 1; n <= 10; ++n) {
      for (double w : {0.1, 0.25, 1.0, 4.0, 10.0}) {
        const double a = n, b = n * w;
        const double closed = 2.0 * std::pow(a / b, nu / 2.0) *
                              std::cyl_bessel_k(std::abs(nu), 2.0 * std::sqrt(a * b));
        const double q = laplace_integral({static_cast<double>(nu), a, b}).value;
        worst = std::max(worst, std::abs(q - closed) / closed);
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-8 && secs < 10.0,
          "max relative error " + fmt(worst, 3) + " (< 1e-8), " + fmt(secs, 3) + " s (< 10 s)"};
}

Outcome conditional_moment_anchor() {
  const double m1 = cond_moment(1, 1.0, 1);
  const double r1 = cond_second_moment_ratio(1.0, 1);
  const double r4 = cond_second_moment_ratio(4.0, 1);
  const bool a = std::abs(m1 - 1.22655) <= 1e-3;
  const bool b = std::abs(r1 - 1.4800) <= 1e-3;
  const bool c = std::abs(r4 - 1.2463) <= 1e-3;
  const bool d = r1 - r4 > 0.2;
  auto mark = [](bool ok) { return ok ? "ok" : "MISS"; };
  return {a && b && c && d,
          "E(Ybar|W=1) = " + fmt(m1, 8) + " vs 1.22655 +- 1e-3 [" + mark(a) + "]; ratio(w=1) = " +
              fmt(r1, 8) + " vs 1.4800 +- 1e-3 [" + mark(b) + "]; ratio(w=4) = " + fmt(r4, 8) +
              " vs 1.2463 +- 1e-3 [" + mark(c) + "]; difference " + fmt(r1 - r4, 4) +
              " > 0.2 [" + mark(d) + "]"};
}

Outcome ancillarity_suite() {
  const auto t0 = Clock::now();
  constexpr double kHeadroom = 0.008;
  const std::vector<double> grid = {0.5, 1, 2, 4};
  const auto nile = verify_ancillarity(Population::family(FamilyKind::kNile),
                                       statistic_by_name("nile-product"), mc(grid, 5, 200000));
  const auto ncv = verify_ancillarity(Population::family(FamilyKind::kNormalCV),
                                      statistic_by_name("normalcv-ratio"), mc(grid, 10, 200000));
  const auto neg = verify_ancillarity(Population::family(FamilyKind::kNile),
                                      statistic_by_name("mean-x"), mc(grid, 5, 200000));
  const double ks_nile = nile.find_statistic("max_ks")->value;
  const double ks_ncv = ncv.find_statistic("max_ks")->value;
  const double ks_neg = neg.find_statistic("max_ks")->value;
  const double secs = seconds_since(t0);
  const bool pass = nile.overall() == Verdict::kPass && ncv.overall() == Verdict::kPass &&
                    ks_nile < kHeadroom && ks_ncv < kHeadroom &&
                    neg.overall() == Verdict::kFail && secs < 60.0;
  return {pass, "max KS xbar*ybar " + fmt(ks_nile, 4) + ", xbar/s " + fmt(ks_ncv, 4) +
                    " (threshold " + fmt(nile.find_statistic("max_ks")->threshold.value(), 4) +
                    ", headroom 0.008); negative control " + fmt(ks_neg, 4) + " " +
                    std::string(to_string(neg.overall())) + "; " + fmt(secs, 3) + " s (< 60 s)"};
}

Outcome fisher_information() {
  const auto t0 = Clock::now();
  const auto r = fisher_info(1.0, mc({1.0}, 1, 1000000));
  const double secs = seconds_since(t0);
  const GridEstimate& e = r.estimates.front();
  const double z = std::abs(e.value - 3.0) / e.se;
  const double ratio = r.find_statistic("ratio_closed_form")->value;
  const double location = r.find_statistic("location_only")->value;
  const bool pass = z < 3.0 && ratio == 3.0 && location == 1.0 && secs < 30.0;
  return {pass, "Var(score) = " + fmt(e.value) + " +- " + fmt(e.se, 3) + ", |z| vs 3 = " +
                    fmt(z, 3) + "; ratio to 1/(c^2 theta^2) = " + fmt(ratio) + "; " +
                    fmt(secs, 3) + " s (< 30 s)"};
}

Outcome exact_equivariance() {
  testing::Gen g(2026);
  const ScaleFunction h = [](double w) { return std::exp(-w) + 1.0 / (1.0 + std::sqrt(w)); };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = g.log_uniform(0.01, 100), y = g.log_uniform(0.01, 100);
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 10));
    const SufficientSummary base(FamilyKind::kNile, {x, y}, n);
    for (double lambda : {0.1, 0.5, 2.0, 10.0}) {
      const SufficientSummary moved(FamilyKind::kNile, {x / lambda, lambda * y}, n);
      const double pairs[3][2] = {
          {nile_mle(base), nile_mle(moved)},
          {nile_equivariant(base, h), nile_equivariant(moved, h)},
          {nile_equivariant_star(base), nile_equivariant_star(moved)},
      };
      for (const auto& p : pairs) {
        worst = std::max(worst, std::abs(p[1] - lambda * p[0]) / (lambda * p[0]));
      }
    }
  }
  return {worst <= 1e-14, "max relative deviation " + fmt(worst, 3) + " (<= 1e-14)"};
}

Outcome unbiasedness() {
  double worst = 0.0;
  const std::vector<EstimatorSpec> star = {EstimatorSpec::nile_equivariant_star()};
  for (std::size_t n : {1u, 5u}) {
    const auto r = variance_table(star, Population::family(FamilyKind::kNile),
                                  mc({0.5, 1, 2}, n, 100000, 42 + n));
    for (const GridEstimate& e : r.estimates) {
      if (e.label.ends_with(":bias")) worst = std::max(worst, std::abs(e.value) / e.se);
    }
  }
  return {worst < 3.0, "max |mean - theta| / SE = " + fmt(worst, 3) + " (< 3) over 6 cells"};
}

Outcome rao_harness() {
  const Population fixture = Population::unit_normal_fixture();
  const auto control = rao_zero_cov(EstimatorSpec::sample_mean(), first_difference_contrast(),
                                    fixture, mc({0.5, 1, 2}, 5, 100000), 1);
  const double control_z = max_abs_z(control);

  const Population nile = Population::family(FamilyKind::kNile);
  constexpr std::size_t kN = 2;
  std::string per_f;
  bool any_violation = false;
  for (const char* f : {"log-w", "w", "w-below-median"}) {
    const ZeroMeanSpec u = zero_mean_by_name(f, nile, kN, 42);
    const auto r = rao_zero_cov(EstimatorSpec::nile_mle(), u, nile, mc({0.5, 1, 2}, kN, 100000), 1);
    const bool violates = r.overall() == Verdict::kFail;
    any_violation = any_violation || violates;
    if (!per_f.empty()) per_f += "; ";
    per_f += std::string(f) + " max|z| " + fmt(max_abs_z(r), 3) +
             (violates ? " violates" : " no violation");
  }
  return {control_z < 3.0 && control.overall() == Verdict::kPass && any_violation,
          "fixture max|z| " + fmt(control_z, 3) + " (< 3); Nile MLE at n = 2: " + per_f};
}

Outcome constraint_residuals() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t = i / 49.0;
    const double theta = 0.1 * std::pow(100.0, t);
    const double rho = -0.95 + 1.9 * t;
    for (const FamilyModel& m : {FamilyModel::nile(theta), FamilyModel::bivariate_gaussian(rho),
                                 FamilyModel::normal_cv(theta, 1.0)}) {
      const NaturalParams p = natural_params(m);
      worst = std::max(worst, std::abs(constraint_residual(p.kind, p.eta, p.c)));
    }
  }
  return {worst < 1e-12, "max |residual| " + fmt(worst, 3) + " (< 1e-12) over 3 x 50 points"};
}

Outcome first_order() {
  const auto pair = Population::family(FamilyKind::kBivariateGaussianCorr);
  const auto ncv = Population::family(FamilyKind::kNormalCV);
  const double h_target = 2.0 * (2.0 * testing::normal_cdf(1.0) - 1.0);
  const double p_target = testing::normal_cdf(1.0);
  const auto rh = verify_first_order(pair, statistic_by_name("first-order-h"), h_target,
                                     mc({-0.9, 0, 0.9}, 1, 100000));
  const auto rp = verify_first_order(ncv, statistic_by_name("positive-indicator"), p_target,
                                     mc({0.5, 1, 2}, 1, 100000));
  const bool pass = std::abs(h_target - 1.365379) < 5e-7 && std::abs(p_target - 0.841345) < 5e-7 &&
                    max_abs_z(rh) < 3.0 && max_abs_z(rp) < 3.0;
  return {pass, "E H max|z| " + fmt(max_abs_z(rh), 3) + " vs " + fmt(h_target, 7) +
                    "; P(X>0) max|z| " + fmt(max_abs_z(rp), 3) + " vs " + fmt(p_target, 7)};
}

double estimate(const VerificationReport& r, const std::string& label) {
  for (const GridEstimate& e : r.estimates) {
    if (e.label == label) return e.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Outcome pitman_variance() {
  const std::vector<EstimatorSpec> est = {EstimatorSpec::pitman_midrange(),
                                          EstimatorSpec::sample_mean()};
  const auto r =
      variance_table(est, Population::family(FamilyKind::kUniformLocation), mc({0.0}, 20, 100000));
  const double v = estimate(r, "pitman-midrange:variance");
  const double exact = 2.0 / (21.0 * 22.0);
  const double rel = std::abs(v / exact - 1.0);
  return {rel < 0.05 && v < 1.0 / 60.0, "Var(midrange) " + fmt(v) + " vs " + fmt(exact) +
                                            " (rel " + fmt(rel, 3) + " < 5%), below 1/60"};
}

Outcome khan_linear_estimator() {
  const std::vector<EstimatorSpec> est = {EstimatorSpec::khan_linear(1.0)};
  const auto r =
      variance_table(est, Population::family(FamilyKind::kNormalCV), mc({1.0}, 10, 100000));
  double bias_z = 0.0;
  for (const GridEstimate& e : r.estimates) {
    if (e.label == "khan-linear:bias") bias_z = std::abs(e.value) / e.se;
  }
  const double var = estimate(r, "khan-linear:variance");
  double coef_err = 0.0;
  for (std::size_t n : {2u, 5u, 10u, 40u}) {
    for (double c : {0.5, 1.0, 2.0}) {
      const LinearCoefficients k = khan_coefficients(n, c);
      const auto [a, b] = testing::khan_numeric(n, c);
      coef_err = std::max({coef_err, std::abs(k.a - a), std::abs(k.b - b)});
    }
  }
  return {bias_z < 3.0 && var < 0.1 && coef_err < 1e-8,
          "|bias|/SE " + fmt(bias_z, 3) + " (< 3); variance " + fmt(var) +
              " (< 0.1); closed form vs minimizer " + fmt(coef_err, 3) + " (< 1e-8)"};
}

Outcome determinism() {
  using namespace nilelab::cli;
  std::vector<ExperimentConfig> configs;
  ExperimentConfig a = default_config(ExperimentKind::kAncillarity);
  a.replicates = 30000;
  configs.push_back(a);
  ExperimentConfig r = default_config(ExperimentKind::kRao);
  r.replicates = 30000;
  r.calibration_replicates = 50000;
  configs.push_back(r);
  ExperimentConfig v = default_config(ExperimentKind::kVarianceTable);
  v.replicates = 30000;
  configs.push_back(v);
  configs.push_back(default_config(ExperimentKind::kCondMoment));

  std::size_t identical = 0;
  for (ExperimentConfig cfg : configs) {
    std::string reference;
    bool same = true;
    for (std::size_t workers : {1u, 3u, 8u}) {
      cfg.workers = workers;
      const std::string body = report_csv_body(run_experiment(resolve(cfg)));
      if (reference.empty()) reference = body;
      same = same && body == reference;
    }
    identical += same;
  }
  return {identical == configs.size(), std::to_string(identical) + "/" +
                                           std::to_string(configs.size()) +
                                           " experiments byte-identical for workers 1, 3, 8"};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"quadrature agrees with the Bessel closed form", quadrature_vs_bessel},
      {"conditional moment anchors", conditional_moment_anchor},
      {"ancillarity suite", ancillarity_suite},
      {"Fisher information", fisher_information},
      {"exact equivariance", exact_equivariance},
      {"unbiasedness of ybar h*(W)", unbiasedness},
      {"Rao necessary-condition harness", rao_harness},
      {"constraint residuals", constraint_residuals},
      {"first-order ancillarity", first_order},
      {"Pitman midrange variance", pitman_variance},
      {"Khan linear estimator", khan_linear_estimator},
      {"determinism across worker counts", determinism},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

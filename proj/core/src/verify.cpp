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

#include "nilelab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "nilelab/error.hpp"
#include "nilelab/quadrature.hpp"
#include "nilelab/stat_tests.hpp"
#include "nilelab/statistics.hpp"

namespace nilelab {
namespace {

// Stream tags, one per harness, so different harnesses never share draws.
enum : std::uint64_t {
  kTagAncillarity = 1,
  kTagFirstOrder,
  kTagIndependence,
  kTagRao,
  kTagCondMoment,
  kTagFisher,
  kTagVarianceTable,
  kTagCalibration,
};

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

std::size_t default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void require_grid(const MCConfig& config, std::size_t minimum) {
  config.validate();
  if (config.theta_grid.size() < minimum) {
    throw InputError("grid: needs at least " + std::to_string(minimum) + " values");
  }
}

VerificationReport make_report(std::string claim, std::string reference,
                               const MCConfig& config) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.reference = std::move(reference);
  r.config = config;
  r.grid = config.theta_grid;
  return r;
}

Verdict three_way(double max_abs_z) {
  if (max_abs_z < kConsistentZ) return Verdict::kPass;
  if (max_abs_z > kViolationZ) return Verdict::kFail;
  return Verdict::kInconclusive;
}

std::vector<double> finite_only(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }),
          v.end());
  return v;
}

std::uint64_t name_key(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : s) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  return h;
}

Statistic population_ancillary(const Population& population) {
  if (population.fixture()) {
    throw UnsupportedError("the unit-normal fixture has no ancillary inside its "
                           "complete sufficient statistic");
  }
  switch (population.kind()) {
    case FamilyKind::kNile:
      return statistic_by_name("nile-product");
    case FamilyKind::kNormalCV:
      return statistic_by_name("normalcv-ratio");
    case FamilyKind::kUniformLocation:
      return statistic_by_name("uniform-range");
    case FamilyKind::kBivariateGaussianCorr:
      break;
  }
  throw UnsupportedError("no known ancillary for " + population.name());
}

std::vector<double> calibration_sample(const Statistic& ancillary,
                                       const Population& population,
                                       std::size_t n, std::uint64_t seed,
                                       std::size_t replicates, std::string_view id) {
  MCConfig cfg;
  cfg.master_seed = seed;
  cfg.replicates = replicates;
  cfg.theta_grid = {1.0};
  cfg.n = n;
  cfg.workers = default_workers();
  const SimulationTable t = simulate(
      cfg, derive_key({kTagCalibration, name_key(id)}), 1,
      [&](RngStream& s, std::span<double> row) {
        row[0] = ancillary.fn(population.draw(1.0, n, s));
        return std::isfinite(row[0]);
      });
  return t.column(0);
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict VerificationReport::overall() const {
  bool inconclusive = false;
  for (const ClaimVerdict& v : verdicts) {
    if (v.verdict == Verdict::kFail) return Verdict::kFail;
    if (v.verdict == Verdict::kInconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::kInconclusive : Verdict::kPass;
}

const ReportStatistic* VerificationReport::find_statistic(std::string_view name) const {
  for (const ReportStatistic& s : statistics) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const ClaimVerdict* VerificationReport::find_verdict(std::string_view claim_id) const {
  for (const ClaimVerdict& v : verdicts) {
    if (v.claim == claim_id) return &v;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Population

Population Population::family(FamilyKind kind, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be positive");
  return Population(kind, c, false);
}

Population Population::unit_normal_fixture() {
  return Population(FamilyKind::kNormalCV, 1.0, true);
}

Population Population::parse(std::string_view name, double c) {
  if (name == "unit-normal-fixture") return unit_normal_fixture();
  return family(parse_family_kind(name), c);
}

ObservationSet Population::draw(double parameter, std::size_t n,
                                RngStream& stream) const {
  if (!fixture_) {
    return sample(FamilyModel::with_parameter(kind_, parameter, c_), n, stream);
  }
  if (n == 0) throw InputError("sample size must be at least 1");
  const FamilyModel model = FamilyModel::normal_cv(parameter, 1.0 / parameter);
  std::vector<double> xs(n);
  for (double& x : xs) x = parameter + stream.standard_normal();
  return ObservationSet(model, std::move(xs), stream.id());
}

std::string Population::name() const {
  if (fixture_) return "unit-normal-fixture";
  return std::string(to_string(kind_));
}

// ---------------------------------------------------------------------------
// Statistics

Statistic statistic_by_name(std::string_view name) {
  const std::string id(name);
  if (name == "nile-product" || name == "normalcv-ratio" || name == "uniform-range") {
    return {id, [](const ObservationSet& o) { return ancillary(sufficient(o)).value; }};
  }
  if (name == "std-residual") {
    return {id, [](const ObservationSet& o) { return residuals(o, true).front(); }};
  }
  if (name == "first-order-h") {
    return {id, [](const ObservationSet& o) {
              double s = 0.0;
              for (const Pair& p : o.pairs()) s += first_order_H(p);
              return s / static_cast<double>(o.n());
            }};
  }
  if (name == "positive-indicator") {
    return {id, [](const ObservationSet& o) {
              double s = 0.0;
              if (o.paired()) {
                for (const Pair& p : o.pairs()) s += positive_indicator(p.x);
              } else {
                for (double x : o.scalars()) s += positive_indicator(x);
              }
              return s / static_cast<double>(o.n());
            }};
  }
  if (name == "cross-product") {
    return {id, [](const ObservationSet& o) {
              double s = 0.0;
              for (const Pair& p : o.pairs()) s += p.x * p.y;
              return s / static_cast<double>(o.n());
            }};
  }
  if (name == "mean-x") {
    return {id, [](const ObservationSet& o) {
              if (!o.paired()) return sample_mean(o.scalars());
              double s = 0.0;
              for (const Pair& p : o.pairs()) s += p.x;
              return s / static_cast<double>(o.n());
            }};
  }
  if (name == "sample-sd") {
    return {id, [](const ObservationSet& o) { return sample_sd(o.scalars()); }};
  }
  if (name == "nile-mle") {
    return {id, [](const ObservationSet& o) { return nile_mle(sufficient(o)); }};
  }
  if (name == "constant") {
    return {id, [](const ObservationSet&) { return 0.0; }};
  }
  throw InputError("unknown statistic '" + id + "'");
}

// ---------------------------------------------------------------------------
// Zero-mean statistics

ZeroMeanSpec zero_mean_from_ancillary(std::string id, Statistic ancillary_stat,
                                      std::function<double(double)> f,
                                      const Population& population,
                                      std::size_t n, std::uint64_t seed,
                                      std::size_t calibration_replicates) {
  const std::vector<double> w = calibration_sample(
      ancillary_stat, population, n, seed, calibration_replicates, id);
  std::vector<double> fw(w.size());
  std::transform(w.begin(), w.end(), fw.begin(), f);
  const Moments m = describe(finite_only(std::move(fw)));
  ZeroMeanSpec spec;
  spec.id = std::move(id);
  spec.center = m.mean;
  spec.center_se = m.mean_se;
  spec.fn = [stat = std::move(ancillary_stat), f = std::move(f),
             center = m.mean](const ObservationSet& o) {
    return f(stat.fn(o)) - center;
  };
  return spec;
}

ZeroMeanSpec first_difference_contrast() {
  ZeroMeanSpec spec;
  spec.id = "x1-minus-x2";
  spec.fn = [](const ObservationSet& o) {
    const auto xs = o.scalars();
    if (xs.size() < 2) throw InsufficientSampleError("X1 - X2 needs n >= 2");
    return xs[0] - xs[1];
  };
  return spec;
}

ZeroMeanSpec zero_mean_by_name(std::string_view name, const Population& population,
                               std::size_t n, std::uint64_t seed,
                               std::size_t calibration_replicates) {
  if (name == "x1-minus-x2") return first_difference_contrast();
  const Statistic w = population_ancillary(population);
  if (name == "log-w") {
    if (population.kind() == FamilyKind::kNormalCV) {
      throw UnsupportedError("log-w needs a positive ancillary");
    }
    return zero_mean_from_ancillary(std::string(name), w,
                                    [](double v) { return std::log(v); },
                                    population, n, seed, calibration_replicates);
  }
  if (name == "w") {
    return zero_mean_from_ancillary(std::string(name), w, [](double v) { return v; },
                                    population, n, seed, calibration_replicates);
  }
  if (name == "w-below-median") {
    std::vector<double> sample = calibration_sample(
        w, population, n, seed, calibration_replicates, "median:" + std::string(name));
    auto mid = sample.begin() + static_cast<std::ptrdiff_t>(sample.size() / 2);
    std::nth_element(sample.begin(), mid, sample.end());
    const double median = *mid;
    return zero_mean_from_ancillary(
        std::string(name), w, [median](double v) { return v <= median ? 1.0 : 0.0; },
        population, n, seed, calibration_replicates);
  }
  throw InputError("unknown zero-mean statistic '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Ancillarity

VerificationReport verify_ancillarity(const Population& population,
                                      const Statistic& statistic,
                                      const MCConfig& config) {
  require_grid(config, 2);
  VerificationReport report =
      make_report("ancillarity", "distribution of an ancillary statistic is parameter-free",
                  config);
  report.settings = {{"population", population.name()}, {"statistic", statistic.name}};

  std::vector<std::vector<double>> samples;
  for (std::size_t g = 0; g < config.theta_grid.size(); ++g) {
    const double theta = config.theta_grid[g];
    const SimulationTable t = simulate(
        config, derive_key({kTagAncillarity, g}), 1,
        [&](RngStream& s, std::span<double> row) {
          row[0] = statistic.fn(population.draw(theta, config.n, s));
          return std::isfinite(row[0]);
        });
    report.excluded_replicates += t.excluded();
    samples.push_back(t.column(0));
    const Moments m = describe(samples.back());
    report.estimates.push_back({theta, "mean", m.mean, m.mean_se});
  }

  double max_ks = 0.0;
  bool all_below = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double d = ks_two_sample(samples[i], samples[j]);
      const double n1 = static_cast<double>(samples[i].size());
      const double n2 = static_cast<double>(samples[j].size());
      const double threshold = kKsCoefficient * std::sqrt((n1 + n2) / (n1 * n2));
      report.statistics.push_back({"ks[" + format_number(config.theta_grid[i]) + "," +
                                       format_number(config.theta_grid[j]) + "]",
                                   d, std::nullopt, threshold});
      max_ks = std::max(max_ks, d);
      all_below = all_below && d < threshold;
    }
  }
  const double nominal =
      kKsCoefficient * std::sqrt(2.0 / static_cast<double>(config.replicates));
  report.statistics.push_back({"max_ks", max_ks, std::nullopt, nominal});
  report.statistics.push_back({"degenerate_samples",
                               static_cast<double>(report.excluded_replicates),
                               std::nullopt, std::nullopt});

  std::string reason = "max pairwise KS distance " + format_number(max_ks) +
                       (all_below ? " below " : " reaches ") + "1.95 sqrt(2/N) = " +
                       format_number(nominal);
  if (report.excluded_replicates > 0) {
    reason += "; " + std::to_string(report.excluded_replicates) +
              " degenerate replicates excluded";
  }
  report.verdicts.push_back(
      {"ancillary", all_below ? Verdict::kPass : Verdict::kFail, reason});
  return report;
}

// ---------------------------------------------------------------------------
// First-order ancillarity

std::optional<double> known_first_order_mean(const Population& population,
                                             std::string_view statistic) {
  if (statistic == "first-order-h" && !population.fixture() &&
      population.kind() == FamilyKind::kBivariateGaussianCorr) {
    return 2.0 * (2.0 * normal_cdf(1.0) - 1.0);
  }
  if (statistic == "positive-indicator" && !population.fixture() &&
      population.kind() == FamilyKind::kNormalCV) {
    return normal_cdf(1.0 / population.c());
  }
  return std::nullopt;
}

VerificationReport verify_first_order(const Population& population,
                                      const Statistic& statistic,
                                      std::optional<double> target,
                                      const MCConfig& config) {
  require_grid(config, 1);
  VerificationReport report = make_report(
      "first-order", "expectation of a first-order ancillary is parameter-free", config);
  report.settings = {{"population", population.name()}, {"statistic", statistic.name}};

  std::vector<Moments> moments;
  for (std::size_t g = 0; g < config.theta_grid.size(); ++g) {
    const double param = config.theta_grid[g];
    const SimulationTable t = simulate(
        config, derive_key({kTagFirstOrder, g}), 1,
        [&](RngStream& s, std::span<double> row) {
          row[0] = statistic.fn(population.draw(param, config.n, s));
          return std::isfinite(row[0]);
        });
    report.excluded_replicates += t.excluded();
    moments.push_back(describe(t.column(0)));
    report.estimates.push_back({param, "mean", moments.back().mean, moments.back().mean_se});
  }

  double reference = 0.0;
  if (target) {
    reference = *target;
    report.statistics.push_back({"target", reference, std::nullopt, std::nullopt});
  } else {
    double wsum = 0.0, acc = 0.0;
    for (const Moments& m : moments) {
      const double w = m.mean_se > 0.0 ? 1.0 / (m.mean_se * m.mean_se) : 1e300;
      wsum += w;
      acc += w * m.mean;
    }
    reference = acc / wsum;
    report.statistics.push_back({"pooled_mean", reference, std::nullopt, std::nullopt});
  }

  double max_z = 0.0;
  for (std::size_t g = 0; g < moments.size(); ++g) {
    const double diff = std::abs(moments[g].mean - reference);
    const double z = moments[g].mean_se > 0.0 ? diff / moments[g].mean_se
                                              : (diff == 0.0 ? 0.0 : HUGE_VAL);
    report.statistics.push_back({"z", z, config.theta_grid[g], kConsistentZ});
    max_z = std::max(max_z, z);
  }
  const bool pass = max_z < kConsistentZ;
  report.verdicts.push_back(
      {"constant-mean", pass ? Verdict::kPass : Verdict::kFail,
       "max |mean - " + std::string(target ? "target" : "pooled mean") + "| / SE = " +
           format_number(max_z) + (pass ? " < 3" : " >= 3")});
  return report;
}

// ---------------------------------------------------------------------------
// Independence

VerificationReport verify_independence(const Statistic& a, const Statistic& b,
                                       const Population& population,
                                       const MCConfig& config) {
  require_grid(config, 1);
  VerificationReport report = make_report(
      "independence", "independence of a sufficient statistic and an ancillary", config);
  report.settings = {{"population", population.name()},
                     {"statistic_a", a.name},
                     {"statistic_b", b.name}};

  double min_p = 1.0;
  for (std::size_t g = 0; g < config.theta_grid.size(); ++g) {
    const double param = config.theta_grid[g];
    const SimulationTable t = simulate(
        config, derive_key({kTagIndependence, g}), 2,
        [&](RngStream& s, std::span<double> row) {
          const ObservationSet obs = population.draw(param, config.n, s);
          row[0] = a.fn(obs);
          row[1] = b.fn(obs);
          return std::isfinite(row[0]) && std::isfinite(row[1]);
        });
    report.excluded_replicates += t.excluded();
    const ContingencyTest test = chi_square_independence(t.column(0), t.column(1));
    report.estimates.push_back({param, "chi_square", test.statistic, 0.0});
    report.statistics.push_back({"p_value", test.p_value, param, kIndependenceAlpha});
    report.statistics.push_back({"dof", test.dof, param, std::nullopt});
    min_p = std::min(min_p, test.p_value);
  }
  const bool pass = min_p > kIndependenceAlpha;
  report.verdicts.push_back({"independent", pass ? Verdict::kPass : Verdict::kFail,
                             "smallest chi-square p-value " + format_number(min_p) +
                                 (pass ? " > 0.001" : " <= 0.001")});
  return report;
}

// ---------------------------------------------------------------------------
// Rao zero-covariance chain

VerificationReport rao_zero_cov(const EstimatorSpec& estimator, const ZeroMeanSpec& u,
                                const Population& population, const MCConfig& config,
                                int power) {
  require_grid(config, 1);
  if (power < 1 || power > kMaxMomentOrder) {
    throw InputError("power: must lie in [1, 6]");
  }
  VerificationReport report = make_report(
      "rao", "a UMVUE and its powers are uncorrelated with every zero-mean statistic",
      config);
  report.settings = {{"population", population.name()},
                     {"estimator", estimator.name()},
                     {"zero_mean", u.id},
                     {"power", std::to_string(power)}};
  report.statistics.push_back({"zero_mean_center", u.center, std::nullopt, std::nullopt});
  report.statistics.push_back({"zero_mean_center_se", u.center_se, std::nullopt, std::nullopt});

  double max_z = 0.0;
  for (std::size_t g = 0; g < config.theta_grid.size(); ++g) {
    const double theta = config.theta_grid[g];
    const SimulationTable t = simulate(
        config, derive_key({kTagRao, g}), 2, [&](RngStream& s, std::span<double> row) {
          const ObservationSet obs = population.draw(theta, config.n, s);
          row[0] = ipow(evaluate(estimator, obs), power);
          row[1] = u.fn(obs);
          return std::isfinite(row[0]) && std::isfinite(row[1]);
        });
    report.excluded_replicates += t.excluded();
    const std::vector<double> gk = t.column(0);
    const std::vector<double> us = t.column(1);

    const Moments mu = describe(us);
    const double u_se = std::hypot(mu.mean_se, u.center_se);
    const double u_z = u_se > 0.0 ? std::abs(mu.mean) / u_se : 0.0;
    report.statistics.push_back({"zero_mean_self_check_z", u_z, theta, kViolationZ});
    if (u_z > kViolationZ) {
      throw SelfCheckError("zero-mean statistic '" + u.id + "' has mean " +
                           format_number(mu.mean) + " (" + format_number(u_z) +
                           " SE from zero) at parameter " + format_number(theta));
    }

    std::vector<double> products(gk.size());
    for (std::size_t i = 0; i < gk.size(); ++i) products[i] = gk[i] * us[i];
    const Moments mp = describe(products);
    const Moments mg = describe(gk);
    const double se = std::hypot(mp.mean_se, mg.mean * u.center_se);
    const double z = se > 0.0 ? mp.mean / se : 0.0;
    report.estimates.push_back({theta, "E[g^k U]", mp.mean, se});
    report.statistics.push_back({"z", z, theta, kConsistentZ});
    max_z = std::max(max_z, std::abs(z));
  }

  const Verdict v = three_way(max_z);
  std::string reason = "max |z| = " + format_number(max_z);
  if (v == Verdict::kPass) reason += ": consistent with the UMVUE necessary condition";
  if (v == Verdict::kFail) reason += ": violates the UMVUE necessary condition";
  if (v == Verdict::kInconclusive) reason += ": between 3 and 4 SE";
  report.verdicts.push_back({"zero-covariance", v, reason});
  return report;
}

// ---------------------------------------------------------------------------
// Conditional moments given the ancillary

VerificationReport cond_moment_dependence(const EstimatorSpec& estimator,
                                          const Statistic& conditioning,
                                          const Population& population, double theta,
                                          const MCConfig& config, int power) {
  MCConfig cfg = config;
  cfg.theta_grid = {theta};
  require_grid(cfg, 1);
  if (power < 1 || power > kMaxMomentOrder) {
    throw InputError("power: must lie in [1, 6]");
  }
  VerificationReport report = make_report(
      "cond-moment", "conditional moments of a UMVUE given an ancillary are constant",
      cfg);
  report.settings = {{"population", population.name()},
                     {"estimator", estimator.name()},
                     {"conditioning", conditioning.name},
                     {"power", std::to_string(power)}};

  const SimulationTable t = simulate(
      cfg, derive_key({kTagCondMoment, 0}), 2, [&](RngStream& s, std::span<double> row) {
        const ObservationSet obs = population.draw(theta, cfg.n, s);
        row[0] = ipow(evaluate(estimator, obs), power);
        row[1] = conditioning.fn(obs);
        return std::isfinite(row[0]) && std::isfinite(row[1]);
      });
  report.excluded_replicates = t.excluded();
  const std::vector<double> gk = t.column(0);
  const std::vector<double> cond = t.column(1);
  const QuantileBinning bins = quantile_bins(cond, kConditioningBins);

  std::vector<std::vector<double>> by_bin(bins.bin_count), cond_by_bin(bins.bin_count);
  for (std::size_t i = 0; i < gk.size(); ++i) {
    by_bin[bins.index[i]].push_back(gk[i]);
    cond_by_bin[bins.index[i]].push_back(cond[i]);
  }

  const bool overlay = estimator.id == EstimatorId::kNileEquivariantStar && power == 2 &&
                       !population.fixture() && population.kind() == FamilyKind::kNile &&
                       conditioning.name == "nile-product";

  std::vector<Moments> bin_moments;
  double max_track_z = 0.0;
  for (std::size_t b = 0; b < bins.bin_count; ++b) {
    if (by_bin[b].size() < 2) continue;
    const Moments m = describe(by_bin[b]);
    bin_moments.push_back(m);
    const std::string label = "bin-" + std::to_string(b);
    report.estimates.push_back({theta, label, m.mean, m.mean_se});
    std::vector<double> sorted = cond_by_bin[b];
    std::sort(sorted.begin(), sorted.end());
    report.statistics.push_back(
        {label + "-median", sorted[sorted.size() / 2], theta, std::nullopt});
    if (overlay) {
      double acc = 0.0;
      for (double w : cond_by_bin[b]) acc += cond_second_moment_ratio(w, cfg.n);
      const double prediction = theta * theta * acc / static_cast<double>(sorted.size());
      const double z = m.mean_se > 0.0 ? (m.mean - prediction) / m.mean_se : 0.0;
      report.statistics.push_back({label + "-prediction", prediction, theta, std::nullopt});
      report.statistics.push_back({label + "-tracking-z", z, theta, kConsistentZ});
      max_track_z = std::max(max_track_z, std::abs(z));
    }
  }
  if (bin_moments.size() < 2) {
    report.verdicts.push_back({"depends-on-conditioning", Verdict::kFail,
                               "conditioning statistic takes a single value"});
    return report;
  }

  const auto [lo, hi] = std::minmax_element(
      bin_moments.begin(), bin_moments.end(),
      [](const Moments& x, const Moments& y) { return x.mean < y.mean; });
  const double spread = hi->mean - lo->mean;
  const double se_diff = std::hypot(hi->mean_se, lo->mean_se);
  report.statistics.push_back({"spread", spread, theta, kDependenceFactor * se_diff});
  const bool depends = spread > kDependenceFactor * se_diff;
  report.verdicts.push_back(
      {"depends-on-conditioning", depends ? Verdict::kPass : Verdict::kFail,
       "spread of bin means " + format_number(spread) + (depends ? " exceeds " : " within ") +
           "4 SE of the extreme-bin difference (" + format_number(se_diff) + ")"});
  if (overlay) {
    const Verdict v = three_way(max_track_z);
    report.verdicts.push_back({"tracks-quadrature", v,
                               "max |bin mean - theta^2 K2 K0 / K1^2| / SE = " +
                                   format_number(max_track_z)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fisher information

double fisher_info_closed_form(double theta, double c) {
  return (2.0 + 1.0 / (c * c)) / (theta * theta);
}

VerificationReport fisher_info(double c, const MCConfig& config) {
  require_grid(config, 1);
  const Population population = Population::family(FamilyKind::kNormalCV, c);
  VerificationReport report =
      make_report("fisher-info", "Fisher information of N(theta, c^2 theta^2)", config);
  report.settings = {{"population", population.name()}, {"c", format_number(c)}};

  double max_z = 0.0;
  const double dn = static_cast<double>(config.n);
  for (std::size_t g = 0; g < config.theta_grid.size(); ++g) {
    const double theta = config.theta_grid[g];
    const SimulationTable t = simulate(
        config, derive_key({kTagFisher, g}), 1, [&](RngStream& s, std::span<double> row) {
          const ObservationSet obs = population.draw(theta, config.n, s);
          double score = 0.0;
          for (double x : obs.scalars()) {
            const double d = x - theta;
            score += -1.0 / theta + d * d / (c * c * theta * theta * theta) +
                     d / (c * c * theta * theta);
          }
          row[0] = score;
          return true;
        });
    const Moments m = describe(t.column(0));
    const double estimate = m.variance / dn;
    const double se = m.variance_se / dn;
    const double closed = fisher_info_closed_form(theta, c);
    const double location_only = 1.0 / (c * c * theta * theta);
    const double z = (estimate - closed) / se;
    report.estimates.push_back({theta, "score_variance", estimate, se});
    report.statistics.push_back({"closed_form", closed, theta, std::nullopt});
    report.statistics.push_back({"location_only", location_only, theta, std::nullopt});
    report.statistics.push_back({"ratio_closed_form", closed / location_only, theta,
                                 std::nullopt});
    report.statistics.push_back({"ratio_mc", estimate / location_only, theta, std::nullopt});
    report.statistics.push_back({"z", z, theta, kConsistentZ});
    max_z = std::max(max_z, std::abs(z));
  }
  const bool pass = max_z < kConsistentZ;
  report.verdicts.push_back({"matches-closed-form", pass ? Verdict::kPass : Verdict::kFail,
                             "max |MC - (2 + 1/c^2)/theta^2| / SE = " + format_number(max_z)});
  return report;
}

// ---------------------------------------------------------------------------
// Bias / variance / MSE table

namespace {

bool known_unbiased(const EstimatorSpec& e, const Population& p) {
  switch (e.id) {
    case EstimatorId::kNileEquivariantStar:
      return !p.fixture() && p.kind() == FamilyKind::kNile;
    case EstimatorId::kKhanLinear:
      return !p.fixture() && p.kind() == FamilyKind::kNormalCV;
    case EstimatorId::kPitmanMidrange:
      return !p.fixture() && p.kind() == FamilyKind::kUniformLocation;
    case EstimatorId::kSampleMean:
      return p.fixture() || p.kind() == FamilyKind::kNormalCV ||
             p.kind() == FamilyKind::kUniformLocation;
    default:
      return false;
  }
}

bool nile_equivariant_estimator(const EstimatorSpec& e) {
  return e.id == EstimatorId::kNileMLE || e.id == EstimatorId::kNileEquivariant ||
         e.id == EstimatorId::kNileEquivariantStar;
}

}  // namespace

VerificationReport variance_table(std::span<const EstimatorSpec> estimators,
                                  const Population& population, const MCConfig& config) {
  require_grid(config, 1);
  if (estimators.empty()) throw InputError("estimators: list is empty");
  VerificationReport report =
      make_report("variance-table", "bias, variance and MSE of competing estimators", config);
  std::string names;
  for (const EstimatorSpec& e : estimators) names += (names.empty() ? "" : ",") + e.name();
  report.settings = {{"population", population.name()}, {"estimators", names}};

  const std::size_t k = estimators.size();
  // normalized MSE and its SE, per estimator per grid point
  std::vector<std::vector<std::pair<double, double>>> normalized(k);
  std::vector<double> worst_bias_z(k, 0.0);

  for (std::size_t g = 0; g < config.theta_grid.size(); ++g) {
    const double theta = config.theta_grid[g];
    const SimulationTable t = simulate(
        config, derive_key({kTagVarianceTable, g}), k,
        [&](RngStream& s, std::span<double> row) {
          const ObservationSet obs = population.draw(theta, config.n, s);
          for (std::size_t j = 0; j < k; ++j) {
            try {
              row[j] = evaluate(estimators[j], obs);
            } catch (const UnsupportedError&) {
              throw;
            } catch (const Error&) {
              row[j] = std::nan("");
            }
          }
          return true;
        });
    for (std::size_t j = 0; j < k; ++j) {
      const std::vector<double> all = t.column(j);
      const std::vector<double> values = finite_only(all);
      const std::string& name = estimators[j].label;
      report.statistics.push_back({name + ":failures",
                                   static_cast<double>(all.size() - values.size()), theta,
                                   std::nullopt});
      const Moments m = describe(values);
      std::vector<double> sq(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        sq[i] = (values[i] - theta) * (values[i] - theta);
      }
      const Moments msq = describe(sq);
      report.estimates.push_back({theta, name + ":bias", m.mean - theta, m.mean_se});
      report.estimates.push_back({theta, name + ":variance", m.variance, m.variance_se});
      report.estimates.push_back({theta, name + ":mse", msq.mean, msq.mean_se});
      worst_bias_z[j] = std::max(worst_bias_z[j], std::abs(m.mean - theta) / m.mean_se);
      if (theta != 0.0) {
        normalized[j].push_back({msq.mean / (theta * theta), msq.mean_se / (theta * theta)});
      }
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    const EstimatorSpec& e = estimators[j];
    if (known_unbiased(e, population)) {
      report.verdicts.push_back({"unbiased:" + e.label, three_way(worst_bias_z[j]),
                                 "max |bias| / SE = " + format_number(worst_bias_z[j])});
    }
    if (nile_equivariant_estimator(e) && normalized[j].size() >= 2) {
      double worst = 0.0;
      for (std::size_t a = 0; a < normalized[j].size(); ++a) {
        for (std::size_t b = a + 1; b < normalized[j].size(); ++b) {
          const double diff = std::abs(normalized[j][a].first - normalized[j][b].first);
          const double se = std::hypot(normalized[j][a].second, normalized[j][b].second);
          worst = std::max(worst, diff / se);
        }
      }
      report.verdicts.push_back({"scale-free-risk:" + e.label,
                                 worst < kConsistentZ ? Verdict::kPass : Verdict::kFail,
                                 "max pairwise |MSE/theta^2 difference| / SE = " +
                                     format_number(worst)});
    }
  }
  return report;
}

}  // namespace nilelab

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

#include "nilelab/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nilelab/canonical.hpp"
#include "nilelab/cli/report_io.hpp"
#include "nilelab/error.hpp"
#include "nilelab/estimators.hpp"
#include "nilelab/quadrature.hpp"

namespace nilelab::cli {
namespace {

constexpr CatalogEntry kCatalog[] = {
    {ExperimentKind::kAncillarity, "distribution of an ancillary statistic is parameter-free",
     "§2 (ancillary statistic); Example 1"},
    {ExperimentKind::kFirstOrder, "expectation of a first-order ancillary is parameter-free",
     "§1, E_rho H(X,Y) = const"},
    {ExperimentKind::kIndependence, "sufficient statistics versus ancillaries",
     "Lemma KB (§2)"},
    {ExperimentKind::kRao, "UMVUE powers are uncorrelated with zero-mean statistics",
     "eq. (U); eq. (WW)"},
    {ExperimentKind::kCondMoment, "conditional moments of an estimator given the ancillary",
     "eq. (WW); §3"},
    {ExperimentKind::kFisherInfo, "Fisher information of N(theta, c^2 theta^2)", "§4"},
    {ExperimentKind::kVarianceTable, "bias, variance and MSE of competing estimators",
     "§3-§4 estimator comparisons"},
    {ExperimentKind::kQuadratureSelftest,
     "adaptive quadrature agrees with the modified Bessel closed form", "eq. (form)"},
    {ExperimentKind::kConstraints, "natural parameters satisfy polynomial constraints", "§5"},
};

[[noreturn]] void require(std::string field, const std::string& message) {
  throw ConfigError(0, std::move(field), message);
}

std::string ancillary_for(std::string_view family) {
  if (family == "nile") return "nile-product";
  if (family == "normal-cv") return "normalcv-ratio";
  if (family == "uniform-location") return "uniform-range";
  require("statistic", "required for family '" + std::string(family) + "'");
}

MCConfig mc_config(const ExperimentConfig& cfg) {
  MCConfig mc;
  mc.master_seed = cfg.seed;
  mc.replicates = cfg.replicates;
  mc.theta_grid = cfg.grid;
  mc.n = cfg.n;
  mc.workers = cfg.workers;
  return mc;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = lo * std::pow(hi / lo, t);
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = lo + (hi - lo) * t;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

std::span<const CatalogEntry> catalog() { return kCatalog; }

const CatalogEntry& catalog_entry(ExperimentKind kind) {
  return kCatalog[static_cast<std::size_t>(kind)];
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.name = std::string(to_string(kind));
  switch (kind) {
    case ExperimentKind::kAncillarity:
      cfg.family = "nile";
      cfg.statistic = "nile-product";
      cfg.grid = {0.5, 1, 2, 4};
      cfg.n = 5;
      cfg.replicates = 200000;
      break;
    case ExperimentKind::kFirstOrder:
      cfg.family = "bivariate-gaussian";
      cfg.statistic = "first-order-h";
      cfg.grid = {-0.9, 0, 0.9};
      break;
    case ExperimentKind::kIndependence:
      cfg.family = "normal-cv";
      cfg.statistic = "mean-x";
      cfg.statistic_b = "sample-sd";
      cfg.grid = {1};
      cfg.n = 10;
      break;
    case ExperimentKind::kRao:
      cfg.family = "nile";
      cfg.estimator = "nile-mle";
      cfg.zero_mean = "log-w";
      cfg.power = 1;
      cfg.grid = {0.5, 1, 2};
      cfg.n = 2;
      break;
    case ExperimentKind::kCondMoment:
      cfg.family = "nile";
      cfg.estimator = "nile-equivariant-star";
      cfg.statistic = "nile-product";
      cfg.power = 2;
      cfg.grid = {1};
      break;
    case ExperimentKind::kFisherInfo:
      cfg.family = "normal-cv";
      cfg.grid = {1};
      cfg.replicates = 1000000;
      break;
    case ExperimentKind::kVarianceTable:
      cfg.family = "nile";
      cfg.estimators = {"nile-mle", "nile-equivariant-star"};
      cfg.grid = {0.5, 1, 2};
      cfg.n = 5;
      break;
    case ExperimentKind::kQuadratureSelftest:
      cfg.tolerance = 1e-10;
      break;
    case ExperimentKind::kConstraints:
      cfg.grid_points = 50;
      break;
  }
  return cfg;
}

ExperimentConfig resolve(ExperimentConfig cfg) {
  const ExperimentConfig def = default_config(cfg.kind);
  if (cfg.name.empty()) cfg.name = def.name;
  if (!cfg.family) cfg.family = def.family;
  if (cfg.grid.empty()) cfg.grid = def.grid;
  if (!cfg.tolerance) cfg.tolerance = def.tolerance;
  if (!cfg.grid_points) cfg.grid_points = def.grid_points;
  const std::string family = cfg.family.value_or("");

  switch (cfg.kind) {
    case ExperimentKind::kAncillarity:
      if (!cfg.statistic) cfg.statistic = ancillary_for(family);
      if (cfg.grid.size() < 2) require("grid", "ancillarity needs at least two values");
      break;
    case ExperimentKind::kFirstOrder:
      if (!cfg.statistic) {
        if (family == "bivariate-gaussian") {
          cfg.statistic = "first-order-h";
        } else if (family == "normal-cv") {
          cfg.statistic = "positive-indicator";
        } else {
          require("statistic", "required for family '" + family + "'");
        }
      }
      break;
    case ExperimentKind::kIndependence:
      if (!cfg.statistic) require("statistic", "required for independence");
      if (!cfg.statistic_b) require("statistic_b", "required for independence");
      break;
    case ExperimentKind::kRao:
      if (!cfg.estimator) require("estimator", "required for rao");
      if (!cfg.zero_mean) require("zero_mean", "required for rao");
      if (!cfg.power) cfg.power = 1;
      break;
    case ExperimentKind::kCondMoment:
      if (!cfg.estimator) require("estimator", "required for cond-moment");
      if (!cfg.statistic) cfg.statistic = ancillary_for(family);
      if (!cfg.power) cfg.power = 2;
      if (cfg.grid.size() != 1) require("grid", "cond-moment takes exactly one value");
      break;
    case ExperimentKind::kFisherInfo:
      if (family != "normal-cv") require("family", "fisher-info needs normal-cv");
      break;
    case ExperimentKind::kVarianceTable:
      if (cfg.estimators.empty()) require("estimators", "required for variance-table");
      break;
    case ExperimentKind::kQuadratureSelftest:
      break;
    case ExperimentKind::kConstraints:
      if (cfg.family) parse_family_kind(*cfg.family);
      break;
  }
  return cfg;
}

VerificationReport run_experiment(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = resolve(raw);
  const MCConfig mc = mc_config(cfg);
  const auto population = [&] { return Population::parse(*cfg.family, cfg.c); };

  switch (cfg.kind) {
    case ExperimentKind::kAncillarity:
      return verify_ancillarity(population(), statistic_by_name(*cfg.statistic), mc);
    case ExperimentKind::kFirstOrder: {
      const Population pop = population();
      const std::optional<double> target =
          cfg.target ? cfg.target : known_first_order_mean(pop, *cfg.statistic);
      return verify_first_order(pop, statistic_by_name(*cfg.statistic), target, mc);
    }
    case ExperimentKind::kIndependence:
      return verify_independence(statistic_by_name(*cfg.statistic),
                                 statistic_by_name(*cfg.statistic_b), population(), mc);
    case ExperimentKind::kRao: {
      const Population pop = population();
      const ZeroMeanSpec u =
          zero_mean_by_name(*cfg.zero_mean, pop, cfg.n, cfg.seed,
                            cfg.calibration_replicates.value_or(kCalibrationReplicates));
      return rao_zero_cov(parse_estimator(*cfg.estimator, cfg.c), u, pop, mc, *cfg.power);
    }
    case ExperimentKind::kCondMoment:
      return cond_moment_dependence(parse_estimator(*cfg.estimator, cfg.c),
                                    statistic_by_name(*cfg.statistic), population(),
                                    cfg.grid.front(), mc, *cfg.power);
    case ExperimentKind::kFisherInfo:
      return fisher_info(cfg.c, mc);
    case ExperimentKind::kVarianceTable: {
      std::vector<EstimatorSpec> specs;
      for (const std::string& name : cfg.estimators) specs.push_back(parse_estimator(name, cfg.c));
      return variance_table(specs, population(), mc);
    }
    case ExperimentKind::kQuadratureSelftest:
      return quadrature_selftest(*cfg.tolerance);
    case ExperimentKind::kConstraints:
      return constraints_selftest(*cfg.grid_points, cfg.c, cfg.family.value_or(""));
  }
  throw InputError("unhandled experiment kind");
}

VerificationReport quadrature_selftest(double tol) {
  VerificationReport report;
  report.claim = "quadrature-selftest";
  report.reference = "adaptive quadrature agrees with the modified Bessel closed form";
  report.settings = {{"tolerance", format_double(tol)}};
  constexpr double kWs[] = {0.1, 0.25, 1.0, 4.0, 10.0};
  constexpr double kAgreement = 1e-8;

  double worst = 0.0;
  for (int nu = -3; nu <= 3; ++nu) {
    for (int n = 1; n <= 10; ++n) {
      for (double w : kWs) {
        const double a = n;
        const double b = n * w;
        const QuadratureResult q = laplace_integral({static_cast<double>(nu), a, b}, tol);
        const double closed = laplace_integral_bessel(nu, a, b);
        const double rel = std::abs(q.value - closed) / std::abs(closed);
        const std::string label = "nu=" + std::to_string(nu) + ";n=" + std::to_string(n) +
                                  ";w=" + format_double(w);
        report.estimates.push_back({w, label, q.value, q.abs_error_estimate});
        report.statistics.push_back({label + ":relative_error", rel, w, kAgreement});
        worst = std::max(worst, rel);
      }
    }
  }
  report.statistics.push_back({"max_relative_error", worst, std::nullopt, kAgreement});
  const bool pass = worst < kAgreement;
  report.verdicts.push_back({"matches-bessel", pass ? Verdict::kPass : Verdict::kFail,
                             "max relative error " + format_double(worst) +
                                 (pass ? " < 1e-8" : " >= 1e-8")});
  return report;
}

VerificationReport constraints_selftest(std::size_t points, double c, std::string_view family) {
  if (points == 0) throw InputError("grid_points: must be positive");
  VerificationReport report;
  report.claim = "constraints";
  report.reference = "natural parameters satisfy polynomial constraints";
  report.settings = {{"grid_points", std::to_string(points)}, {"c", format_double(c)}};
  constexpr double kBound = 1e-12;

  struct Sweep {
    FamilyKind kind;
    std::vector<double> grid;
  };
  std::vector<Sweep> sweeps = {
      {FamilyKind::kNile, geometric_grid(0.1, 10.0, points)},
      {FamilyKind::kBivariateGaussianCorr, linear_grid(-0.95, 0.95, points)},
      {FamilyKind::kNormalCV, geometric_grid(0.1, 10.0, points)},
  };
  if (!family.empty()) {
    const FamilyKind only = parse_family_kind(family);
    std::erase_if(sweeps, [only](const Sweep& s) { return s.kind != only; });
    if (sweeps.empty()) {
      throw UnsupportedError("family: " + std::string(family) + " has no natural parameters");
    }
  }

  for (const Sweep& s : sweeps) {
    const std::string name(to_string(s.kind));
    double worst = 0.0;
    for (double p : s.grid) {
      const NaturalParams np = natural_params(FamilyModel::with_parameter(s.kind, p, c));
      report.grid.push_back(p);
      report.estimates.push_back({p, name + ":eta1", np.eta[0], 0.0});
      report.estimates.push_back({p, name + ":eta2", np.eta[1], 0.0});
      report.statistics.push_back({name + ":residual", np.residual, p, kBound});
      worst = std::max(worst, std::abs(np.residual));
    }
    const bool pass = worst < kBound;
    report.verdicts.push_back({"on-curve:" + name, pass ? Verdict::kPass : Verdict::kFail,
                               "max |residual| " + format_double(worst) +
                                   (pass ? " < 1e-12" : " >= 1e-12")});
  }
  return report;
}

int exit_code(Verdict overall) {
  switch (overall) {
    case Verdict::kPass:
      return 0;
    case Verdict::kFail:
      return 2;
    case Verdict::kInconclusive:
      return 3;
  }
  return 1;
}

OutputPaths write_outputs(const VerificationReport& report, const ExperimentConfig& config,
                          const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const OutputPaths final{dir / (config.name + ".report.json"),
                          dir / (config.name + ".table.csv")};
  const OutputPaths temp{fs::path(final.report).concat(".tmp"),
                         fs::path(final.table).concat(".tmp")};
  const std::string reference(catalog_entry(config.kind).reference);
  bool report_moved = false;
  try {
    write_file(temp.report, report_json(report, config, reference));
    write_file(temp.table, csv_with_timestamp(report_csv_body(report)));
    fs::rename(temp.report, final.report);
    report_moved = true;
    fs::rename(temp.table, final.table);
  } catch (...) {
    std::error_code ignored;
    fs::remove(temp.report, ignored);
    fs::remove(temp.table, ignored);
    if (report_moved) fs::remove(final.report, ignored);
    throw;
  }
  return final;
}

}  // namespace nilelab::cli

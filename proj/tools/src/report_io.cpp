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

#include "nilelab/cli/report_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace nilelab::cli {
namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["experiment"] = std::string(to_string(cfg.kind));
  j["name"] = cfg.name;
  j["family"] = cfg.family ? ordered_json(*cfg.family) : ordered_json(nullptr);
  j["c"] = cfg.c;
  j["grid"] = cfg.grid;
  j["n"] = cfg.n;
  j["replicates"] = cfg.replicates;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["output"] = cfg.output;
  auto opt = [&j](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  opt("statistic", cfg.statistic);
  opt("statistic_b", cfg.statistic_b);
  opt("estimator", cfg.estimator);
  if (!cfg.estimators.empty()) j["estimators"] = cfg.estimators;
  opt("zero_mean", cfg.zero_mean);
  opt("power", cfg.power);
  opt("target", cfg.target);
  opt("tolerance", cfg.tolerance);
  opt("calibration_replicates", cfg.calibration_replicates);
  opt("grid_points", cfg.grid_points);
  return j;
}

}  // namespace

std::string report_json(const VerificationReport& report, const ExperimentConfig& config,
                        std::string_view reference) {
  ordered_json j;
  j["claim"] = report.claim;
  j["paper_ref"] = std::string(reference);
  j["description"] = report.reference;
  j["config"] = config_json(config);
  ordered_json settings = ordered_json::object();
  for (const auto& [key, value] : report.settings) settings[key] = value;
  j["settings"] = settings;
  j["grid"] = report.grid;

  ordered_json estimates = ordered_json::array();
  ordered_json ses = ordered_json::array();
  for (const GridEstimate& e : report.estimates) {
    estimates.push_back({{"parameter", number(e.parameter)},
                         {"label", e.label},
                         {"value", number(e.value)},
                         {"se", number(e.se)}});
    ses.push_back(number(e.se));
  }
  j["estimates"] = estimates;
  j["se"] = ses;

  ordered_json stats = ordered_json::array();
  for (const ReportStatistic& s : report.statistics) {
    stats.push_back({{"name", s.name},
                     {"value", number(s.value)},
                     {"parameter", optional_number(s.parameter)},
                     {"threshold", optional_number(s.threshold)}});
  }
  j["statistics"] = stats;

  ordered_json verdicts = ordered_json::array();
  for (const ClaimVerdict& v : report.verdicts) {
    verdicts.push_back({{"claim", v.claim},
                        {"verdict", std::string(to_string(v.verdict))},
                        {"reason", v.reason}});
  }
  j["verdicts"] = verdicts;
  j["overall"] = std::string(to_string(report.overall()));
  j["excluded_replicates"] = report.excluded_replicates;
  j["seed"] = config.seed;
  j["version"] = std::string(kReportSchemaVersion);
  return j.dump(2) + "\n";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_csv_body(const VerificationReport& report) {
  std::ostringstream out;
  out << "record,parameter,name,value,se,threshold,detail\r\n";
  auto opt = [](const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); };
  for (const GridEstimate& e : report.estimates) {
    out << "estimate," << csv_number(e.parameter) << ',' << csv_field(e.label) << ','
        << csv_number(e.value) << ',' << csv_number(e.se) << ",,\r\n";
  }
  for (const ReportStatistic& s : report.statistics) {
    out << "statistic," << opt(s.parameter) << ',' << csv_field(s.name) << ','
        << csv_number(s.value) << ",," << opt(s.threshold) << ",\r\n";
  }
  for (const ClaimVerdict& v : report.verdicts) {
    out << "verdict,," << csv_field(v.claim) << ",,,," << csv_field(to_string(v.verdict))
        << "\r\n";
  }
  return out.str();
}

std::string csv_with_timestamp(const std::string& body) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string("# generated_at: ") + stamp + "\r\n" + body;
}

}  // namespace nilelab::cli

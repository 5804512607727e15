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

#ifndef NILELAB_CLI_CONFIG_HPP_
#define NILELAB_CLI_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilelab/error.hpp"

namespace nilelab::cli {

enum class ExperimentKind {
  kAncillarity,
  kFirstOrder,
  kIndependence,
  kRao,
  kCondMoment,
  kFisherInfo,
  kVarianceTable,
  kQuadratureSelftest,
  kConstraints,
};

inline constexpr ExperimentKind kAllExperimentKinds[] = {
    ExperimentKind::kAncillarity,    ExperimentKind::kFirstOrder,
    ExperimentKind::kIndependence,   ExperimentKind::kRao,
    ExperimentKind::kCondMoment,     ExperimentKind::kFisherInfo,
    ExperimentKind::kVarianceTable,  ExperimentKind::kQuadratureSelftest,
    ExperimentKind::kConstraints,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

// Raised for malformed config text; line() is 0 when the problem is not
// tied to a single line (a missing required key, say).
class ConfigError : public InputError {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// One experiment, as read from a flat "key = value" file. Keys that only
// some experiment kinds use are optional and omitted from the text form
// when unset.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kAncillarity;
  std::string name;
  std::optional<std::string> family;
  double c = 1.0;
  std::vector<double> grid;
  std::size_t n = 1;
  std::size_t replicates = 100000;
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  std::string output = ".";

  std::optional<std::string> statistic;
  std::optional<std::string> statistic_b;
  std::optional<std::string> estimator;
  std::vector<std::string> estimators;
  std::optional<std::string> zero_mean;
  std::optional<int> power;
  std::optional<double> target;
  std::optional<double> tolerance;
  std::optional<std::size_t> calibration_replicates;
  std::optional<std::size_t> grid_points;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace nilelab::cli

#endif  // NILELAB_CLI_CONFIG_HPP_

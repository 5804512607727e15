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

#include "nilelab/cli/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nilelab::cli {
namespace {

constexpr std::array<std::string_view, 9> kKindNames = {
    "ancillarity", "first-order",    "independence",        "rao",        "cond-moment",
    "fisher-info", "variance-table", "quadrature-selftest", "constraints"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

class FieldReader {
 public:
  FieldReader(std::size_t line, std::string_view key) : line_(line), key_(key) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(line_, std::string(key_), message);
  }

  double real(std::string_view v) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail("expected a finite number, got '" + std::string(v) + "'");
    }
    return out;
  }

  std::uint64_t unsigned_integer(std::string_view v) const {
    if (!v.empty() && v.front() == '-') fail("must not be negative, got '" + std::string(v) + "'");
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
      fail("expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
  }

  std::size_t positive(std::string_view v) const {
    const std::uint64_t out = unsigned_integer(v);
    if (out == 0) fail("must be positive");
    return static_cast<std::size_t>(out);
  }

  int integer(std::string_view v) const {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
      fail("expected an integer, got '" + std::string(v) + "'");
    }
    return out;
  }

  std::string word(std::string_view v) const {
    if (v.empty()) fail("value is empty");
    return std::string(v);
  }

 private:
  std::size_t line_;
  std::string_view key_;
};

void assign(ExperimentConfig& cfg, std::string_view key, std::string_view value,
            std::size_t line) {
  const FieldReader r(line, key);
  if (key == "experiment") {
    try {
      cfg.kind = parse_experiment_kind(value);
    } catch (const InputError& e) {
      r.fail(e.what());
    }
  } else if (key == "name") {
    cfg.name = r.word(value);
  } else if (key == "family") {
    cfg.family = r.word(value);
  } else if (key == "c") {
    cfg.c = r.real(value);
    if (!(cfg.c > 0.0)) r.fail("must be positive");
  } else if (key == "grid") {
    cfg.grid.clear();
    for (std::string_view item : split_list(value)) cfg.grid.push_back(r.real(item));
  } else if (key == "n") {
    cfg.n = r.positive(value);
  } else if (key == "replicates") {
    cfg.replicates = r.positive(value);
  } else if (key == "seed") {
    cfg.seed = r.unsigned_integer(value);
  } else if (key == "workers") {
    cfg.workers = r.positive(value);
  } else if (key == "output") {
    cfg.output = r.word(value);
  } else if (key == "statistic") {
    cfg.statistic = r.word(value);
  } else if (key == "statistic_b") {
    cfg.statistic_b = r.word(value);
  } else if (key == "estimator") {
    cfg.estimator = r.word(value);
  } else if (key == "estimators") {
    cfg.estimators.clear();
    for (std::string_view item : split_list(value)) cfg.estimators.push_back(r.word(item));
  } else if (key == "zero_mean") {
    cfg.zero_mean = r.word(value);
  } else if (key == "power") {
    cfg.power = r.integer(value);
    if (*cfg.power < 1 || *cfg.power > 6) r.fail("must lie in [1, 6]");
  } else if (key == "target") {
    cfg.target = r.real(value);
  } else if (key == "tolerance") {
    cfg.tolerance = r.real(value);
    if (!(*cfg.tolerance > 0.0)) r.fail("must be positive");
  } else if (key == "calibration_replicates") {
    cfg.calibration_replicates = r.positive(value);
  } else if (key == "grid_points") {
    cfg.grid_points = r.positive(value);
  } else {
    throw ConfigError(line, std::string(key), "unknown key");
  }
}

std::string describe(std::size_t line, const std::string& field, const std::string& msg) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!field.empty()) out += field + ": ";
  return out + msg;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<ExperimentKind>(i);
  }
  throw InputError("unknown experiment kind '" + std::string(name) + "'");
}

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : InputError(describe(line, field, message)), line_(line), field_(std::move(field)) {}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "", "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(line_no, std::string(key), "duplicate key");
    }
    assign(cfg, key, value, line_no);
  }
  if (!seen.contains("experiment")) throw ConfigError(0, "experiment", "required key missing");
  if (cfg.name.empty()) cfg.name = std::string(to_string(cfg.kind));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto join = [](const auto& items, auto fmt) {
    std::string s;
    for (const auto& item : items) s += (s.empty() ? "" : ", ") + fmt(item);
    return s;
  };

  put("experiment", std::string(to_string(cfg.kind)));
  put("name", cfg.name);
  if (cfg.family) put("family", *cfg.family);
  put("c", format_double(cfg.c));
  if (!cfg.grid.empty()) put("grid", join(cfg.grid, format_double));
  put("n", std::to_string(cfg.n));
  put("replicates", std::to_string(cfg.replicates));
  put("seed", std::to_string(cfg.seed));
  put("workers", std::to_string(cfg.workers));
  put("output", cfg.output);
  if (cfg.statistic) put("statistic", *cfg.statistic);
  if (cfg.statistic_b) put("statistic_b", *cfg.statistic_b);
  if (cfg.estimator) put("estimator", *cfg.estimator);
  if (!cfg.estimators.empty()) {
    put("estimators", join(cfg.estimators, [](const std::string& s) { return s; }));
  }
  if (cfg.zero_mean) put("zero_mean", *cfg.zero_mean);
  if (cfg.power) put("power", std::to_string(*cfg.power));
  if (cfg.target) put("target", format_double(*cfg.target));
  if (cfg.tolerance) put("tolerance", format_double(*cfg.tolerance));
  if (cfg.calibration_replicates) {
    put("calibration_replicates", std::to_string(*cfg.calibration_replicates));
  }
  if (cfg.grid_points) put("grid_points", std::to_string(*cfg.grid_points));
  return out.str();
}

}  // namespace nilelab::cli

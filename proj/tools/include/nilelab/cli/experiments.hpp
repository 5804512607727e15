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

#ifndef NILELAB_CLI_EXPERIMENTS_HPP_
#define NILELAB_CLI_EXPERIMENTS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "nilelab/cli/config.hpp"
#include "nilelab/verify.hpp"

namespace nilelab::cli {

struct CatalogEntry {
  ExperimentKind kind;
  std::string_view claim;
  std::string_view reference;
};

std::span<const CatalogEntry> catalog();
const CatalogEntry& catalog_entry(ExperimentKind kind);

// The configuration "list" prints for each kind; running it reproduces the
// headline check for that kind.
ExperimentConfig default_config(ExperimentKind kind);

// Fills unset optional keys with per-kind defaults and rejects combinations
// the kind cannot run, naming the offending field.
ExperimentConfig resolve(ExperimentConfig config);

VerificationReport run_experiment(const ExperimentConfig& config);

// laplace_integral against the Bessel closed form over
// nu in {-3..3}, n in {1..10}, w in {0.1, 0.25, 1, 4, 10}.
VerificationReport quadrature_selftest(double tol = 1e-10);

// Constraint residuals along evenly spaced parameter grids. An empty
// family runs Nile, the Gaussian pair and NormalCV.
VerificationReport constraints_selftest(std::size_t points, double c,
                                        std::string_view family = {});

// 0 pass, 2 fail, 3 inconclusive.
int exit_code(Verdict overall);

struct OutputPaths {
  std::filesystem::path report;
  std::filesystem::path table;
};

// Writes <name>.report.json and <name>.table.csv into dir via temporary
// files; on any failure neither file is left behind.
OutputPaths write_outputs(const VerificationReport& report, const ExperimentConfig& config,
                          const std::filesystem::path& dir);

}  // namespace nilelab::cli

#endif  // NILELAB_CLI_EXPERIMENTS_HPP_

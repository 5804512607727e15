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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nilelab/cli/config.hpp"
#include "nilelab/cli/experiments.hpp"
#include "nilelab/cli/report_io.hpp"
#include "nilelab/verify.hpp"

namespace {

using namespace nilelab;
using namespace nilelab::cli;

void print_verdicts(const VerificationReport& report) {
  for (const ClaimVerdict& v : report.verdicts) {
    std::cout << "  " << v.claim << ": " << to_string(v.verdict) << " (" << v.reason << ")\n";
  }
  if (report.excluded_replicates > 0) {
    std::cout << "  excluded replicates: " << report.excluded_replicates << '\n';
  }
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed,
            std::optional<std::string> out, std::optional<std::size_t> workers) {
  ExperimentConfig cfg = load_config(path);
  if (seed) cfg.seed = *seed;
  if (out) cfg.output = *out;
  if (workers) cfg.workers = *workers;
  cfg = resolve(std::move(cfg));

  const VerificationReport report = run_experiment(cfg);
  const OutputPaths paths = write_outputs(report, cfg, cfg.output);
  std::cout << cfg.name << " [" << to_string(cfg.kind) << "]: " << to_string(report.overall())
            << '\n';
  print_verdicts(report);
  std::cout << "  wrote " << paths.report.string() << "\n  wrote " << paths.table.string()
            << '\n';
  return exit_code(report.overall());
}

int cmd_list() {
  for (const CatalogEntry& e : catalog()) {
    std::cout << to_string(e.kind) << "\n  claim:     " << e.claim
              << "\n  reference: " << e.reference << "\n  default config:\n";
    const std::string text = serialize_config(default_config(e.kind));
    std::size_t start = 0;
    while (start < text.size()) {
      const std::size_t end = text.find('\n', start);
      std::cout << "    " << text.substr(start, end - start) << '\n';
      start = end + 1;
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_selftest(std::optional<std::string> out) {
  Verdict overall = Verdict::kPass;
  for (ExperimentKind kind : {ExperimentKind::kQuadratureSelftest, ExperimentKind::kConstraints}) {
    const ExperimentConfig cfg = resolve(default_config(kind));
    const VerificationReport report = run_experiment(cfg);
    std::cout << cfg.name << ": " << to_string(report.overall()) << '\n';
    print_verdicts(report);
    if (out) write_outputs(report, cfg, *out);
    const Verdict v = report.overall();
    if (v == Verdict::kFail || (v == Verdict::kInconclusive && overall == Verdict::kPass)) {
      overall = v;
    }
  }
  return exit_code(overall);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilelab: Monte Carlo and quadrature checks for curved exponential families"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;

  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Path to a key = value config file")->required();
  run->add_option("--seed", seed, "Master seed (overrides the config)");
  run->add_option("--out", out, "Output directory (overrides the config)");
  run->add_option("--workers", workers, "Worker threads (overrides the config)")
      ->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list", "Print the experiment catalog");
  CLI::App* selftest =
      app.add_subcommand("selftest", "Run the quadrature and constraint self-checks");
  selftest->add_option("--out", out, "Also write reports into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(config_path, seed, out, workers);
    if (*list) return cmd_list();
    if (*selftest) return cmd_selftest(out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

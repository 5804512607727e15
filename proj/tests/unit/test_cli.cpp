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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "nilelab/cli/config.hpp"
#include "nilelab/cli/experiments.hpp"
#include "nilelab/cli/report_io.hpp"
#include "support/oracles.hpp"

namespace nilelab::cli {
namespace {

namespace fs = std::filesystem;

TEST(Config, ParsesKeysCommentsAndLists) {
  const ExperimentConfig c = parse_config(
      "# comment line\n"
      "experiment = variance-table   # trailing comment\n"
      "\n"
      "family = uniform-location\n"
      "grid = 0, 1.5 ,-2\n"
      "estimators = pitman-midrange, sample-mean\n"
      "n = 20\n"
      "replicates = 5000\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(c.kind, ExperimentKind::kVarianceTable);
  EXPECT_EQ(c.name, "variance-table");
  EXPECT_EQ(c.family, "uniform-location");
  EXPECT_EQ(c.grid, (std::vector<double>{0, 1.5, -2}));
  EXPECT_EQ(c.estimators, (std::vector<std::string>{"pitman-midrange", "sample-mean"}));
  EXPECT_EQ(c.n, 20u);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
}

void expect_config_error(const std::string& text, std::size_t line, const std::string& field) {
  try {
    parse_config(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

TEST(Config, DiagnosticsNameLineAndField) {
  expect_config_error("experiment = rao\nreplicates = -5\n", 2, "replicates");
  expect_config_error("experiment = rao\nreplicates = 0\n", 2, "replicates");
  expect_config_error("experiment = rao\nbogus = 1\n", 2, "bogus");
  expect_config_error("experiment = rao\nn = 3\nn = 4\n", 3, "n");
  expect_config_error("experiment = ranking\n", 1, "experiment");
  expect_config_error("experiment = rao\ngrid = 1, x\n", 2, "grid");
  expect_config_error("experiment = rao\njust text\n", 2, "");
  expect_config_error("experiment = rao\npower = 9\n", 2, "power");
  expect_config_error("experiment = rao\nc = -1\n", 2, "c");
  expect_config_error("n = 3\n", 0, "experiment");
}

TEST(Config, RoundTripsLosslessly) {
  for (ExperimentKind k : kAllExperimentKinds) {
    const ExperimentConfig c = default_config(k);
    EXPECT_EQ(parse_config(serialize_config(c)), c) << to_string(k);
  }
  testing::Gen g(50);
  for (int trial = 0; trial < 200; ++trial) {
    ExperimentConfig c;
    c.kind = kAllExperimentKinds[g.integer(0, 8)];
    c.name = "run_" + std::to_string(trial);
    if (g.integer(0, 1)) c.family = "normal-cv";
    c.c = g.log_uniform(1e-3, 1e3);
    for (int i = g.integer(0, 5); i > 0; --i) c.grid.push_back(g.normal() * std::pow(10.0, g.integer(-20, 20)));
    c.n = static_cast<std::size_t>(g.integer(1, 1000));
    c.replicates = static_cast<std::size_t>(g.integer(2, 1 << 30));
    c.seed = static_cast<std::uint64_t>(g.integer(0, 1 << 30)) << 33;
    c.workers = static_cast<std::size_t>(g.integer(1, 64));
    c.output = "out/dir";
    if (g.integer(0, 1)) c.power = g.integer(1, 6);
    if (g.integer(0, 1)) c.target = g.normal();
    if (g.integer(0, 1)) c.tolerance = g.log_uniform(1e-14, 1e-2);
    if (g.integer(0, 1)) c.estimators = {"nile-mle", "nile-ybar"};
    if (g.integer(0, 1)) c.calibration_replicates = 12345;
    EXPECT_EQ(parse_config(serialize_config(c)), c) << serialize_config(c);
  }
}

TEST(Catalog, NineKindsWithReferences) {
  EXPECT_EQ(catalog().size(), 9u);
  EXPECT_NE(catalog_entry(ExperimentKind::kRao).reference.find("eq. (U)"), std::string::npos);
  for (ExperimentKind k : kAllExperimentKinds) {
    EXPECT_EQ(catalog_entry(k).kind, k);
    EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
  }
}

TEST(Resolve, FillsDefaultsAndRejectsGaps) {
  ExperimentConfig c = parse_config("experiment = ancillarity\nfamily = normal-cv\n");
  c = resolve(c);
  EXPECT_EQ(c.statistic, "normalcv-ratio");
  EXPECT_EQ(c.grid.size(), 4u);
  EXPECT_THROW(resolve(parse_config("experiment = rao\n")), ConfigError);
  EXPECT_THROW(resolve(parse_config("experiment = fisher-info\nfamily = nile\n")), ConfigError);
  EXPECT_THROW(resolve(parse_config("experiment = cond-moment\nestimator = nile-mle\ngrid = 1, 2\n")),
               ConfigError);
  EXPECT_EQ(resolve(c), c);
}

TEST(Csv, QuotingAndNumbers) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv_number(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(csv_number(NAN), "");
  EXPECT_EQ(std::stod(csv_number(2.0 / 3.0)), 2.0 / 3.0);
}

TEST(Report, ConstraintsRunWithinBound) {
  const ExperimentConfig cfg = resolve(default_config(ExperimentKind::kConstraints));
  const VerificationReport r = run_experiment(cfg);
  EXPECT_EQ(exit_code(r.overall()), 0);
  std::size_t residuals = 0;
  for (const ReportStatistic& s : r.statistics) {
    EXPECT_LT(std::abs(s.value), 1e-12) << s.name;
    ++residuals;
  }
  EXPECT_EQ(residuals, 150u);
}

TEST(Report, JsonSchemaFields) {
  const ExperimentConfig cfg = resolve(default_config(ExperimentKind::kQuadratureSelftest));
  const VerificationReport r = run_experiment(cfg);
  const auto j = nlohmann::json::parse(report_json(r, cfg, "ref-string"));
  for (const char* key : {"claim", "paper_ref", "config", "grid", "estimates", "se", "statistics",
                          "verdicts", "seed", "version"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["estimates"].size(), j["se"].size());
  EXPECT_EQ(j["estimates"].size(), 350u);
  EXPECT_EQ(j["verdicts"][0]["verdict"], "pass");
  EXPECT_EQ(j["config"]["experiment"], "quadrature-selftest");
}

TEST(ExitCodes, Contract) {
  EXPECT_EQ(exit_code(Verdict::kPass), 0);
  EXPECT_EQ(exit_code(Verdict::kFail), 2);
  EXPECT_EQ(exit_code(Verdict::kInconclusive), 3);
}

TEST(Outputs, WrittenAtomically) {
  const fs::path dir = fs::temp_directory_path() / "nilelab_outputs_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = resolve(default_config(ExperimentKind::kConstraints));
  cfg.name = "atomic";
  const VerificationReport r = run_experiment(cfg);
  const OutputPaths p = write_outputs(r, cfg, dir);
  EXPECT_TRUE(fs::exists(p.report));
  EXPECT_TRUE(fs::exists(p.table));
  for (const auto& entry : fs::directory_iterator(dir)) {
    EXPECT_NE(entry.path().extension(), ".tmp");
  }
  // A directory squatting on the table name makes the final rename fail;
  // the report written moments earlier must be rolled back.
  fs::remove_all(dir);
  fs::create_directories(dir / "atomic.table.csv" / "blocker");
  EXPECT_ANY_THROW(write_outputs(r, cfg, dir));
  EXPECT_FALSE(fs::exists(dir / "atomic.report.json"));
  EXPECT_FALSE(fs::exists(dir / "atomic.report.json.tmp"));
  EXPECT_FALSE(fs::exists(dir / "atomic.table.csv.tmp"));
  fs::remove_all(dir);
}

// End-to-end runs of the nilelab binary.
class Binary : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nilelab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(NILELAB_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(Binary, ListShowsNineEntries) {
  EXPECT_EQ(run("list"), 0);
  const std::string out = slurp(dir_ / "stdout.txt");
  EXPECT_NE(out.find("eq. (U)"), std::string::npos);
  std::size_t entries = 0;
  for (ExperimentKind k : kAllExperimentKinds) {
    entries += out.find("\n" + std::string(to_string(k)) + "\n") != std::string::npos ||
               out.rfind(std::string(to_string(k)) + "\n", 0) == 0;
  }
  EXPECT_EQ(entries, 9u);
}

TEST_F(Binary, ConstraintsRunPasses) {
  const fs::path cfg = write("c.conf", "experiment = constraints\nname = c\n");
  EXPECT_EQ(run("run " + cfg.string() + " --out " + dir_.string()), 0);
  const std::string csv = slurp(dir_ / "c.table.csv");
  EXPECT_EQ(csv.rfind("# generated_at: ", 0), 0u);
  EXPECT_TRUE(fs::exists(dir_ / "c.report.json"));
}

TEST_F(Binary, NegativeReplicatesExitOneNamingField) {
  const fs::path cfg = write("bad.conf", "experiment = ancillarity\nreplicates = -100\n");
  EXPECT_EQ(run("run " + cfg.string() + " --out " + dir_.string()), 1);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("replicates"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "ancillarity.report.json"));
}

TEST_F(Binary, FailingClaimExitsTwo) {
  const fs::path cfg = write("neg.conf",
                             "experiment = ancillarity\nname = neg\nfamily = nile\n"
                             "statistic = mean-x\ngrid = 1, 2\nn = 5\nreplicates = 5000\n");
  EXPECT_EQ(run("run " + cfg.string() + " --out " + dir_.string()), 2);
  EXPECT_TRUE(fs::exists(dir_ / "neg.table.csv"));
}

TEST_F(Binary, InconclusiveClaimExitsThree) {
  // Seed chosen so the positive control lands between 3 and 4 SE.
  const fs::path cfg = fs::path(NILELAB_TEST_DATA_DIR) / "inconclusive.conf";
  EXPECT_EQ(run("run " + cfg.string() + " --out " + dir_.string()), 3);
}

TEST_F(Binary, RuntimeErrorRemovesPartialOutputs) {
  const fs::path cfg = write("err.conf",
                             "experiment = rao\nname = err\nfamily = unit-normal-fixture\n"
                             "estimator = sample-mean\nzero_mean = x1-minus-x2\ngrid = 1\n"
                             "n = 1\nreplicates = 100\n");
  EXPECT_EQ(run("run " + cfg.string() + " --out " + dir_.string()), 1);
  EXPECT_FALSE(fs::exists(dir_ / "err.report.json"));
  EXPECT_FALSE(fs::exists(dir_ / "err.table.csv"));
}

TEST_F(Binary, CsvIdenticalAcrossWorkersAndRuns) {
  const fs::path cfg = write("det.conf",
                             "experiment = variance-table\nname = det\nfamily = nile\n"
                             "estimators = nile-mle, nile-equivariant-star\ngrid = 0.5, 2\n"
                             "n = 3\nreplicates = 20000\nseed = 7\n");
  auto body = [&](const std::string& extra) {
    EXPECT_EQ(run("run " + cfg.string() + " --out " + dir_.string() + extra), 0);
    const std::string csv = slurp(dir_ / "det.table.csv");
    return csv.substr(csv.find('\n') + 1);
  };
  const std::string one = body(" --workers 1");
  EXPECT_EQ(body(" --workers 5"), one);
  EXPECT_EQ(body(" --workers 1"), one);
  EXPECT_NE(body(" --workers 1 --seed 8"), one);
}

}  // namespace
}  // namespace nilelab::cli

/*
 * Copyright 2026 The nicholson-dde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace nicholson {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json scalar_model(double d, double p, double ripple = 0.0) {
  json production = {{"mean", p}};
  if (ripple != 0.0) production["harmonics"] = {{1, ripple * p, 0.0}};
  return {{"n", 1},
          {"period", 1.0},
          {"delays", {1.0}},
          {"species",
           {{{"mortality", {{"kind", "Linear"}, {"slope", d}}}, {"production", {production}}}}}};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& path) { return json::parse(slurp(path)); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    work_ = fs::temp_directory_path() / "nicholson_cli_test" / info->name();
    fs::remove_all(work_);
    fs::create_directories(work_);
  }

  void TearDown() override { fs::remove_all(work_); }

  fs::path write_config(const std::string& name, const json& config) const {
    const fs::path path = work_ / name;
    std::ofstream(path) << config.dump(2);
    return path;
  }

  int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"nicholson"};
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  int run_command(const std::string& command, const fs::path& config, const std::string& out,
                  std::vector<std::string> extra = {}) {
    std::vector<std::string> args{command, "--config", config.string(), "--out",
                                  (work_ / out).string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(std::move(args));
  }

  fs::path work_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(Cli, SimulateWritesTrajectoryAndManifest) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, std::numbers::e)},
                                              {"horizon", 2.0}, {"h", 0.05}});
  ASSERT_EQ(run_command("simulate", config, "out"), 0) << err_.str();
  const std::string csv = slurp(work_ / "out" / "trajectory.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,x1");
  const json manifest = read_json(work_ / "out" / "manifest.json");
  EXPECT_EQ(manifest["command"], "simulate");
  EXPECT_EQ(manifest["exit_code"], 0);
  EXPECT_EQ(manifest["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(manifest["outputs"], json::array({"trajectory.csv", "manifest.json"}));
  for (const auto& [key, value] : manifest.items()) {
    EXPECT_EQ(key.find("time"), std::string::npos) << key;
    EXPECT_EQ(key.find("date"), std::string::npos) << key;
  }
}

TEST_F(Cli, MisalignedStepNamesTheDelay) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, 2.0)}, {"h", 0.3}});
  EXPECT_EQ(run_command("simulate", config, "out"), 1);
  EXPECT_NE(err_.str().find("tau_1"), std::string::npos) << err_.str();
}

TEST_F(Cli, StiffModelReportsPositivityFailure) {
  const auto config = write_config(
      "c.json", {{"model", scalar_model(1e6, 1.0)}, {"horizon", 1.0}, {"h", 0.1}});
  EXPECT_EQ(run_command("simulate", config, "out"), 2);
  const json manifest = read_json(work_ / "out" / "manifest.json");
  EXPECT_EQ(manifest["exit_code"], 2);
  EXPECT_EQ(manifest["outputs"], json::array({"manifest.json"}));
  EXPECT_FALSE(fs::exists(work_ / "out" / "trajectory.csv"));
}

TEST_F(Cli, ModelPathResolvesRelativeToConfig) {
  std::ofstream(work_ / "model.json") << scalar_model(1.0, 2.0).dump();
  const auto config = write_config("c.json", {{"model_path", "model.json"}, {"horizon", 1.0}});
  EXPECT_EQ(run_command("simulate", config, "out"), 0) << err_.str();
}

TEST_F(Cli, PassingCheck) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, std::numbers::e)}});
  ASSERT_EQ(run_command("check", config, "out"), 0) << err_.str();
  const json report = read_json(work_ / "out" / "report.json");
  EXPECT_TRUE(report["pass"]);
  ASSERT_EQ(report["reports"].size(), 2u);
  EXPECT_GT(report["reports"][0]["margin"].get<double>(), 0.0);
  EXPECT_NEAR(report["bounds"]["R0"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, FailingDissipativityExitsWithHypothesisCode) {
  json model = scalar_model(1.0, 5.0);
  model["species"][0]["mortality"] = {{"kind", "Saturating"}, {"q", 1.0}};
  const auto config = write_config("c.json", {{"model", model}});
  ASSERT_EQ(run_command("check", config, "out"), 3) << err_.str();
  const json report = read_json(work_ / "out" / "report.json");
  EXPECT_FALSE(report["pass"]);
  EXPECT_EQ(report["reports"][1]["constants"]["beta"], 0.0);
  EXPECT_TRUE(report["bounds"].is_null());
}

TEST_F(Cli, PeriodicOnAutonomousExample) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, std::numbers::e)},
                                              {"orbit", {{"initial", {0.5}}}}});
  ASSERT_EQ(run_command("periodic", config, "out"), 0) << err_.str();
  const json summary = read_json(work_ / "out" / "periodic.json");
  EXPECT_LT(summary["result"]["residual"].get<double>(), 1e-8);
  EXPECT_NEAR(summary["result"]["orbit_min"][0].get<double>(), 1.0, 1e-8);
  EXPECT_EQ(summary["bounds_verdict"], "pass-with-warning");
  EXPECT_TRUE(fs::exists(work_ / "out" / "orbit.csv"));
}

TEST_F(Cli, PeriodicIterationBudgetExitsWithNonConvergence) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, std::numbers::e, 0.1)},
                                              {"orbit", {{"max_iter", 1}}}});
  ASSERT_EQ(run_command("periodic", config, "out"), 4) << err_.str();
  const json summary = read_json(work_ / "out" / "periodic.json");
  EXPECT_GT(summary["best_residual"].get<double>(), 0.0);
  EXPECT_TRUE(summary["result"].is_null());
}

TEST_F(Cli, SweepRangeValidation) {
  json config = {{"model", scalar_model(1.0, 2.0)}};
  const json parameter = {{"name", "p"}, {"path", "/species/0/production/0/mean"}};
  json empty = parameter;
  empty.update({{"min", 1.0}, {"max", 2.0}, {"count", 0}});
  config["sweep"] = {{"parameters", {empty}}};
  EXPECT_EQ(run_command("sweep", write_config("a.json", config), "a"), 1);
  json inverted = parameter;
  inverted.update({{"min", 3.0}, {"max", 2.0}, {"count", 4}});
  config["sweep"] = {{"parameters", {inverted}}};
  EXPECT_EQ(run_command("sweep", write_config("b.json", config), "b"), 1);
  json unknown = inverted;
  unknown.update({{"min", 1.0}, {"path", "/species/0/nope"}});
  config["sweep"] = {{"parameters", {unknown}}};
  EXPECT_EQ(run_command("sweep", write_config("c.json", config), "c"), 1);
}

TEST_F(Cli, RefusesToOverwriteWithoutForce) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, 2.0)}});
  ASSERT_EQ(run_command("check", config, "out"), 0);
  EXPECT_EQ(run_command("check", config, "out"), 1);
  EXPECT_NE(err_.str().find("--force"), std::string::npos);
  EXPECT_EQ(run_command("check", config, "out", {"--force"}), 0);
}

TEST_F(Cli, SingleCellSweepMatchesCheckAndAttractor) {
  const json base = {{"model", scalar_model(2.0, 1.0)},
                     {"horizon", 60.0},
                     {"checks", {"persistence", "dissipativity", "attractor"}},
                     {"spot_samples", 200}};
  json sweep = base;
  sweep["sweep"] = {{"parameters",
                     {{{"name", "p"}, {"path", "/species/0/production/0/mean"}, {"min", 1.0},
                       {"max", 1.0}, {"count", 1}}}}};
  ASSERT_EQ(run_command("check", write_config("check.json", base), "check"), 3);
  ASSERT_EQ(run_command("attractor", write_config("check.json", base), "attractor"), 0);
  ASSERT_EQ(run_command("sweep", write_config("sweep.json", sweep), "sweep"), 0) << err_.str();

  const json report = read_json(work_ / "check" / "report.json");
  const json attractor = read_json(work_ / "attractor" / "attractor.json");
  std::istringstream atlas(slurp(work_ / "sweep" / "atlas.csv"));
  std::string header;
  std::string row;
  std::getline(atlas, header);
  std::getline(atlas, row);
  std::vector<std::string> cells;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 11u) << row;
  EXPECT_EQ(std::stod(cells[1]), report["reports"][0]["margin"].get<double>());
  EXPECT_EQ(std::stod(cells[3]), report["reports"][1]["margin"].get<double>());
  EXPECT_EQ(std::stod(cells[6]), report["reports"][2]["margin"].get<double>());
  EXPECT_EQ(std::stod(cells[6]), attractor["report"]["margin"].get<double>());
  EXPECT_EQ(cells[7], "pass");
  EXPECT_EQ(cells[10], "zero-attracting");
}

TEST_F(Cli, ThreadCountComesFromEnvironmentAndDoesNotChangeOutputs) {
  json config = {{"model", scalar_model(1.0, 2.0)}, {"horizon", 60.0}};
  config["sweep"] = {{"parameters",
                      {{{"name", "p"}, {"path", "/species/0/production/0/mean"}, {"min", 0.5},
                        {"max", 3.0}, {"count", 6}}}}};
  const auto path = write_config("c.json", config);
  ASSERT_EQ(run_command("sweep", path, "one", {"--threads", "1"}), 0);
  ::setenv("NICHOLSON_THREADS", "3", 1);
  const int code = run_command("sweep", path, "env");
  ::setenv("NICHOLSON_THREADS", "zero", 1);
  const int bad = run_command("sweep", path, "bad");
  ::unsetenv("NICHOLSON_THREADS");
  ASSERT_EQ(code, 0);
  EXPECT_EQ(bad, 1);
  EXPECT_EQ(slurp(work_ / "one" / "atlas.csv"), slurp(work_ / "env" / "atlas.csv"));
  EXPECT_EQ(slurp(work_ / "one" / "manifest.json"), slurp(work_ / "env" / "manifest.json"));
}

TEST_F(Cli, RerunsAreByteIdentical) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, std::numbers::e, 0.1)},
                                              {"horizon", 60.0}, {"seed", 5}});
  ASSERT_EQ(run_command("persistence", config, "a"), 0) << err_.str();
  ASSERT_EQ(run_command("persistence", config, "b"), 0);
  for (const char* name : {"persistence.json", "guiding.csv", "manifest.json"}) {
    EXPECT_EQ(slurp(work_ / "a" / name), slurp(work_ / "b" / name)) << name;
  }
  ASSERT_EQ(run_command("persistence", config, "c", {"--seed", "6"}), 0);
  EXPECT_NE(slurp(work_ / "a" / "manifest.json"), slurp(work_ / "c" / "manifest.json"));
}

TEST_F(Cli, ShortHorizonIsRejectedForLongRunAnalyses) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, 2.0)}, {"horizon", 10.0}});
  EXPECT_EQ(run_command("persistence", config, "out"), 1);
}

TEST_F(Cli, MirandaDefaultsToTheBoundBox) {
  const auto config = write_config("c.json", {{"model", scalar_model(1.0, std::numbers::e)}});
  ASSERT_EQ(run_command("miranda", config, "out"), 0) << err_.str();
  const json explicit_box = {{"model", scalar_model(1.0, std::numbers::e)},
                             {"miranda", {{"eps", 1.0 - 1e-9}, {"R", 1.0}}}};
  EXPECT_EQ(run_command("miranda", write_config("d.json", explicit_box), "tight"), 3);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}), 1);
  EXPECT_EQ(run({"check"}), 1);
  const auto missing = write_config("c.json", {{"horizon", 1.0}});
  EXPECT_EQ(run_command("check", missing, "out"), 1);
  EXPECT_EQ(run_command("check", work_ / "absent.json", "out"), 1);
  EXPECT_EQ(run({"--help"}), 0);
}

}  // namespace
}  // namespace nicholson

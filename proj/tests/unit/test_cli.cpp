// Copyright 2026 The eeperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "eeperf/cli/commands.hpp"
#include "eeperf/cli/config.hpp"
#include "eeperf/cli/report_io.hpp"
#include "eeperf/error.hpp"

using namespace eeperf;
using namespace eeperf::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = EEPERF_FIXTURE_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("eeperf-cli-") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(std::vector<std::string> args) {
    std::vector<char*> argv;
    static std::string prog = "eeperf";
    argv.push_back(prog.data());
    for (auto& a : args) argv.push_back(a.data());
    ::testing::internal::CaptureStdout();
    ::testing::internal::CaptureStderr();
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
    stdout_ = ::testing::internal::GetCapturedStdout();
    stderr_ = ::testing::internal::GetCapturedStderr();
    return rc;
  }

  int command(const std::string& cmd, const std::string& fixture, const std::string& out,
              std::vector<std::string> extra = {}) {
    std::vector<std::string> args{cmd, "--config", (kFixtures / fixture).string(), "--out-dir", dir(out)};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }

  std::string dir(const std::string& name) const { return (root_ / name).string(); }
  Json json(const std::string& out, const std::string& file) const {
    return Json::parse(read_file((root_ / out / file).string()));
  }

  fs::path root_;
  std::string stdout_, stderr_;
};

}  // namespace

TEST_F(CliTest, SimulateRabi) {
  ASSERT_EQ(command("simulate", "rabi.yaml", "sim"), kExitOk) << stderr_;
  const auto m = json("sim", "manifest.json");
  EXPECT_NEAR(m["results"]["trajectory"]["sigma_avail"]["value"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(m["results"]["trajectory"]["delta_t"]["value"].get<double>(), std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(m["command"], "simulate");
  EXPECT_TRUE(fs::exists(root_ / "sim" / "trajectory.csv"));
  EXPECT_TRUE(fs::exists(root_ / "sim" / "run.log"));
  const auto csv = read_file((root_ / "sim" / "trajectory.csv").string());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,E_mean,dH,S_vn_bits,S2_bits");
}

TEST_F(CliTest, SimulateZeroHamiltonianIsFlaggedTrivial) {
  ASSERT_EQ(command("simulate", "zero_h.yaml", "z"), kExitOk) << stderr_;
  EXPECT_TRUE(json("z", "manifest.json")["results"]["trajectory"]["trivial"].get<bool>());
}

TEST_F(CliTest, HeisenbergQuenchEntropyRisesThenSaturates) {
  ASSERT_EQ(command("simulate", "heisenberg_quench.yaml", "q"), kExitOk) << stderr_;
  std::istringstream csv(read_file((root_ / "q" / "trajectory.csv").string()));
  std::string line;
  std::getline(csv, line);
  std::vector<double> s2;
  while (std::getline(csv, line)) s2.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  ASSERT_GT(s2.size(), 50u);
  const std::size_t early = s2.size() / 8;
  for (std::size_t i = 1; i < early; ++i) EXPECT_GE(s2[i], s2[i - 1] - 1e-12);
  EXPECT_GT(s2.back(), 1.0);
  EXPECT_LE(*std::max_element(s2.begin(), s2.end()), 4.0 + 1e-9);
}

TEST_F(CliTest, DiagnoseRabiPassesGates) {
  ASSERT_EQ(command("diagnose", "rabi.yaml", "d"), kExitOk) << stderr_;
  const auto r = json("d", "report.json")["report"];
  EXPECT_NEAR(r["eta_qsl"].get<double>(), 1.0, 1e-9);
  EXPECT_TRUE(r["gate_a_pass"].get<bool>());
  EXPECT_TRUE(r["gate_b_pass"].get<bool>());
  EXPECT_TRUE(fs::exists(root_ / "d" / "report.csv"));
}

TEST_F(CliTest, GateBViolationExitsTwo) {
  EXPECT_EQ(command("diagnose", "gate_b_violation.yaml", "gb"), kExitGateFailure);
  EXPECT_FALSE(json("gb", "report.json")["report"]["gate_b_pass"].get<bool>());
}

TEST_F(CliTest, SlowEvolutionIsResourceLimited) {
  ASSERT_EQ(command("diagnose", "slow_evolution.yaml", "slow"), kExitOk) << stderr_;
  const auto r = json("slow", "report.json");
  EXPECT_EQ(r["diagnosis"]["verdict"], "resource-limited");
  EXPECT_NEAR(r["report"]["eta_qsl"].get<double>(), 0.1, 1e-12);
}

TEST_F(CliTest, DiagnoseFromManifest) {
  ASSERT_EQ(command("simulate", "rabi.yaml", "sim"), kExitOk);
  ASSERT_EQ(run({"diagnose", "--manifest", (root_ / "sim" / "manifest.json").string(), "--out-dir", dir("dm")}),
            kExitOk)
      << stderr_;
  EXPECT_NEAR(json("dm", "report.json")["report"]["eta_qsl"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, GammaCommand) {
  ASSERT_EQ(command("gamma", "heisenberg_quench.yaml", "g"), kExitOk) << stderr_;
  const auto g = json("g", "gamma.json");
  EXPECT_GT(g["gamma"]["gamma"].get<double>(), 0.0);
  EXPECT_EQ(g["gamma"]["boundary_bonds"].get<int>(), 1);
}

TEST_F(CliTest, ShadowGhz8NearOneBit) {
  ASSERT_EQ(command("shadow", "ghz8_shadow.yaml", "s"), kExitOk) << stderr_;
  const auto c = json("s", "complexity.json");
  const double k = c["complexity"]["k_kl_bits"].get<double>();
  const double f = c["complexity"]["f_epsilon_bits"].get<double>();
  EXPECT_NEAR(k, 1.0, f);
  EXPECT_EQ(c["m_out"].get<int>(), 256);
  EXPECT_TRUE(fs::exists(root_ / "s" / "shadows.bin"));
  EXPECT_TRUE(fs::exists(root_ / "s" / "distribution.csv"));
}

TEST_F(CliTest, ShadowUniformStateNearMaximal) {
  ASSERT_EQ(command("shadow", "uniform_shadow.yaml", "u"), kExitOk) << stderr_;
  const auto c = json("u", "complexity.json")["complexity"];
  EXPECT_NEAR(c["k_kl_bits"].get<double>(), 4.0, c["f_epsilon_bits"].get<double>());
}

TEST_F(CliTest, ShadowBudgetRefusalAndOverride) {
  EXPECT_EQ(command("shadow", "underbudget_shadow.yaml", "ub"), kExitConfig);
  EXPECT_NE(stderr_.find("--override-budget"), std::string::npos);
  EXPECT_FALSE(fs::exists(root_ / "ub" / "complexity.json"));
  ASSERT_EQ(command("shadow", "underbudget_shadow.yaml", "ub2", {"--override-budget"}), kExitOk);
  EXPECT_TRUE(json("ub2", "complexity.json")["budget_overridden"].get<bool>());
}

TEST_F(CliTest, CalibrateCommands) {
  ASSERT_EQ(command("calibrate", "calibrate_ghz.yaml", "c1"), kExitOk) << stderr_;
  EXPECT_GT(json("c1", "calibration.json")["calibration"]["c_g"].get<double>(), 0.0);
  ASSERT_EQ(command("calibrate", "calibrate_line.yaml", "c2"), kExitOk) << stderr_;
  const auto fit = read_calibration((root_ / "c2" / "calibration.json").string());
  EXPECT_NEAR(fit.c_g, 0.5, 1e-12);
  EXPECT_NEAR(fit.k_m, 3.0, 1e-10);
  EXPECT_NE(command("calibrate", "calibrate_single.yaml", "c3"), kExitOk);
}

TEST_F(CliTest, FrontierSvgHasOnePointPerRun) {
  ASSERT_EQ(command("frontier", "frontier_small.yaml", "f"), kExitOk) << stderr_;
  const auto svg = read_file((root_ / "f" / "frontier.svg").string());
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::regex run_re("class=\"run\"");
  const auto n_points = std::distance(std::sregex_iterator(svg.begin(), svg.end(), run_re), std::sregex_iterator());
  EXPECT_EQ(n_points, 8);
  const auto f = json("f", "frontier.json");
  EXPECT_TRUE(f["envelope"]["all_below_line"].get<bool>());
  // Every plotted coordinate appears in the data CSV.
  const auto csv = read_file((root_ / "f" / "frontier.csv").string()) +
                   read_file((root_ / "f" / "frontier_envelope.csv").string());
  std::regex coord_re("(?:x|y)[12]=\"([^\"]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), coord_re); it != std::sregex_iterator(); ++it)
    EXPECT_NE(csv.find((*it)[1].str()), std::string::npos) << (*it)[1].str();
}

TEST_F(CliTest, FrontierEmptySweepFails) { EXPECT_EQ(command("frontier", "frontier_empty.yaml", "fe"), kExitConfig); }

TEST_F(CliTest, ConfigAndCapacityErrors) {
  EXPECT_EQ(command("simulate", "bad_key.yaml", "b"), kExitConfig);
  EXPECT_NE(stderr_.find("line 5"), std::string::npos) << stderr_;
  EXPECT_EQ(command("simulate", "too_large.yaml", "t"), kExitCapacity);
  EXPECT_EQ(run({"simulate"}), kExitConfig);
  EXPECT_EQ(run({"nonsense"}), kExitConfig);
}

TEST_F(CliTest, ReproducibleOutputs) {
  ASSERT_EQ(command("shadow", "ghz8_shadow.yaml", "a"), kExitOk);
  ASSERT_EQ(command("shadow", "ghz8_shadow.yaml", "b"), kExitOk);
  for (const auto* f : {"complexity.json", "distribution.csv", "shadows.bin", "manifest.json"})
    EXPECT_EQ(read_file(dir("a") + "/" + f), read_file(dir("b") + "/" + f)) << f;
  ASSERT_EQ(command("shadow", "ghz8_shadow.yaml", "c", {"--seed", "999"}), kExitOk);
  EXPECT_NE(read_file(dir("a") + "/shadows.bin"), read_file(dir("c") + "/shadows.bin"));
  ASSERT_EQ(run({"replay", "--manifest", dir("c") + "/manifest.json", "--out-dir", dir("r")}), kExitOk) << stderr_;
  EXPECT_EQ(read_file(dir("c") + "/shadows.bin"), read_file(dir("r") + "/shadows.bin"));
  EXPECT_EQ(read_file(dir("c") + "/complexity.json"), read_file(dir("r") + "/complexity.json"));
}

TEST_F(CliTest, OutDirFromEnvironment) {
  ::setenv(kOutDirEnv, dir("env").c_str(), 1);
  EXPECT_EQ(default_out_dir(), dir("env"));
  ASSERT_EQ(run({"simulate", "--config", (kFixtures / "rabi.yaml").string()}), kExitOk);
  ::unsetenv(kOutDirEnv);
  EXPECT_TRUE(fs::exists(root_ / "env" / "manifest.json"));
}

TEST(Config, LineAnchoredErrors) {
  try {
    (void)parse_config("schema_version: 1\nsystem:\n  n: 2\ninitial_state: \"0x\"\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_config("schema_version: 7\n"), Error);
  EXPECT_THROW(parse_config("schema_version: 1\nsystem: {n: 3}\nanalysis: {partition: [4]}\n"), Error);
}

TEST(Config, HashAndSeedOverride) {
  const std::string text = "schema_version: 1\nseed: 5\nsystem: {n: 2}\n";
  const auto a = parse_config(text), b = parse_config(text, 9);
  EXPECT_EQ(a.hash, b.hash);
  EXPECT_EQ(a.seed, 5u);
  EXPECT_EQ(b.seed, 9u);
  EXPECT_NE(parse_config(text + "# note\n").hash, a.hash);
}

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

#pragma once

#include <optional>
#include <string>

#include "eeperf/cli/config.hpp"
#include "eeperf/error.hpp"

namespace eeperf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitGateFailure = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitCapacity = 4;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "EEPERF_OUT_DIR";

struct CommandOptions {
  std::string out_dir;
  bool override_budget = false;
  std::optional<double> slack;
};

int exit_code_for(ErrorCode code);
std::string default_out_dir();

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opts);
int cmd_diagnose(const RunConfig& cfg, const CommandOptions& opts);
/// Re-evaluates the quantities recorded in a simulate manifest.
int cmd_diagnose_manifest(const std::string& manifest_path, const CommandOptions& opts);
int cmd_gamma(const RunConfig& cfg, const CommandOptions& opts);
int cmd_shadow(const RunConfig& cfg, const CommandOptions& opts);
int cmd_calibrate(const RunConfig& cfg, const CommandOptions& opts);
int cmd_frontier(const RunConfig& cfg, const CommandOptions& opts);
/// Re-executes the command recorded in a manifest with its seed and config.
int cmd_replay(const std::string& manifest_path, const CommandOptions& opts);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, char** argv);

}  // namespace eeperf::cli

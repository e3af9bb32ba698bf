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
#include <vector>

#include "eeperf/circuits.hpp"
#include "eeperf/diagnostics.hpp"
#include "eeperf/dynamics.hpp"
#include "eeperf/entanglement.hpp"

namespace eeperf {

/// One end-to-end run: a Hamiltonian schedule applied to an initial state.
struct RunSpec {
  std::string id;
  LocalHamiltonian hamiltonian;
  StateVector initial;
  double delta_t;
  /// Absent for single-qubit runs, whose entanglement output is zero.
  std::optional<Bipartition> partition;
  /// Circuit depth when the schedule realizes a circuit.
  std::optional<double> c_exp;
  /// Known optimal complexity; otherwise the certified depth stands in.
  std::optional<double> c_opt;
  Designation designation = Designation::c_opt;
  EntropyMeasure measure = EntropyMeasure::renyi2;
};

/// Schedule of `circuit` with one gate_time per layer.
RunSpec circuit_run(std::string id, const Circuit& circuit, const StateVector& initial, double gate_time,
                    std::optional<Bipartition> partition, double hbar = 1.0);

struct SimulatedRun {
  std::string id;
  Trajectory trajectory;
  double j = 0.0;
  double s_e = 0.0;
  double certified_depth = 0.0;
  std::optional<double> c_exp;
  std::optional<double> c_opt;
  Designation designation = Designation::c_opt;
  EntropyMeasure measure = EntropyMeasure::renyi2;
  int size_a = 0;
  int boundary_bonds = 0;
};

SimulatedRun simulate(const RunSpec& spec, const EvolveOptions& options = {});
std::vector<SimulatedRun> simulate_all(const std::vector<RunSpec>& specs, const EvolveOptions& options = {});

/// gamma over already simulated runs; `shared_j` > 0 replaces each run's J.
GammaEstimate gamma_from_runs(const std::vector<SimulatedRun>& runs, RateWindow window, double shared_j, double hbar);

/// Inputs for the diagnostics; `j_override` > 0 replaces the run's J.
RunInputs make_inputs(const SimulatedRun& run, double gamma, double hbar, double j_override = 0.0);

struct RunResult {
  SimulatedRun run;
  RunInputs inputs;
  EfficiencyReport report;
};

RunResult run_pipeline(const RunSpec& spec, double gamma, const EvolveOptions& options = {});

struct FrontierOptions {
  EvolveOptions evolve;
  /// Frozen gamma; calibrated on the sweep itself when absent.
  std::optional<double> gamma;
  /// Shared J; the largest run J when absent.
  std::optional<double> shared_j;
  RateWindow window = RateWindow::full;
  int bins = 8;
  int top_k = 1;
};

struct FrontierResult {
  std::vector<FrontierPoint> points;
  EnvelopeFit envelope;
  double gamma = 0.0;
  double shared_j = 0.0;
  double hbar = 1.0;
  std::optional<GammaEstimate> gamma_estimate;
};

FrontierResult frontier_sweep(const std::vector<RunSpec>& runs, const FrontierOptions& options = {});

FrontierPoint to_frontier_point(const SimulatedRun& run, const RunInputs& inputs);

}  // namespace eeperf

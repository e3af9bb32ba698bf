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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eeperf/circuits.hpp"
#include "eeperf/diagnostics.hpp"
#include "eeperf/dynamics.hpp"
#include "eeperf/entanglement.hpp"
#include "eeperf/hamiltonian.hpp"
#include "eeperf/pipeline.hpp"
#include "eeperf/sampling.hpp"

namespace eeperf::cli {

inline constexpr int kSchemaVersion = 1;

struct CircuitSpec {
  Circuit circuit;
  double gate_time = 1.0;
  std::optional<double> c_opt;
};

struct SamplingSpec {
  std::size_t shots = 0;
  double epsilon = 0.05;
  double delta = 0.05;
  double alpha = kDefaultAlpha;
  ShadowProtocol protocol = ShadowProtocol::direct_z;
  int batches = 10;
  double budget_constant = 1.0;
  std::vector<int> qubits;
  double alpha_sig = 0.01;
};

struct QuenchSpec {
  std::string label;
  StateVector initial;
  double delta_t;
};

struct CalibrationSpec {
  std::vector<std::pair<double, double>> points;
  std::vector<int> ghz_sizes;
  /// Exact Born distributions instead of sampled ones for GHZ benchmarks.
  bool exact = false;
};

struct FrontierSpec {
  int n = 6;
  std::vector<int> depths;
  std::vector<std::uint64_t> seeds;
  std::string entangler = "CNOT";
  bool random_rotations = true;
  double gate_time = 1.0;
  std::optional<double> gamma;
  RateWindow window = RateWindow::full;
  int bins = 8;
  int top_k = 1;
};

struct RunConfig {
  std::string text;
  std::uint64_t hash = 0;
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 0;

  int n = 0;
  Geometry geometry;
  std::optional<LocalHamiltonian> hamiltonian;
  std::optional<CircuitSpec> circuit;
  std::optional<StateVector> initial;
  std::optional<double> delta_t;
  EvolveOptions evolve;

  SamplingSpec sampling;

  double hbar = 1.0;
  std::optional<double> gamma;
  RateWindow gamma_window = RateWindow::early;
  EntropyMeasure measure = EntropyMeasure::renyi2;
  std::vector<QuenchSpec> gamma_ensemble;

  std::vector<int> partition;
  Designation designation = Designation::c_opt;
  std::optional<double> c_opt;
  std::string calibration_file;
  double slack = 1.0;
  double band = 0.1;

  std::optional<RunInputs> synthetic;
  std::optional<CalibrationSpec> calibration;
  std::optional<FrontierSpec> frontier;

  /// Half cut unless a partition is declared; absent for a single qubit.
  std::optional<Bipartition> bipartition() const;
  /// Hamiltonian driving the run: the circuit schedule when a circuit is
  /// given, otherwise the declared system (zero Hamiltonian when empty).
  LocalHamiltonian driving_hamiltonian() const;
  double run_delta_t() const;
  RunSpec run_spec(const std::string& id = "run") const;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& text);

/// Parses and validates; errors carry the offending line.
RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override = std::nullopt);
RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace eeperf::cli

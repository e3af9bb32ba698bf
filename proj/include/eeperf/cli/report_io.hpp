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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "eeperf/complexity.hpp"
#include "eeperf/diagnostics.hpp"
#include "eeperf/dynamics.hpp"
#include "eeperf/entanglement.hpp"
#include "eeperf/sampling.hpp"

namespace eeperf::cli {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; identical inputs give identical text.
std::string format_number(double x);

/// Columns: t, E_mean, dH, S_vn_bits, S2_bits. Missing entropies print empty.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Columns: outcome_index, count, p_hat.
void write_distribution_csv(std::ostream& out, const EmpiricalDistribution& dist);
/// Columns: run_id, C, sigma_avail, S_E, y, eta_qsl, eta_lr, ratio, gate_a, gate_b, residual.
void write_report_csv(std::ostream& out, const std::vector<FrontierPoint>& points);
/// Line endpoints drawn in the frontier plot.
void write_envelope_csv(std::ostream& out, const std::vector<FrontierPoint>& points, const EnvelopeFit& fit);
/// Scatter of (C, y) with envelope and theoretical lines.
void write_frontier_svg(std::ostream& out, const std::vector<FrontierPoint>& points, const EnvelopeFit& fit);

Json to_json(const EfficiencyReport& r);
Json to_json(const RunInputs& in);
Json to_json(const GammaEstimate& g);
Json to_json(const ComplexityEstimate& c);
Json to_json(const CalibrationFit& f);
Json to_json(const RandomnessReport& r);
Json to_json(const EnvelopeFit& f);

CalibrationFit calibration_from_json(const Json& j);
CalibrationFit read_calibration(const std::string& path);

/// Writes text and fails with an io error on any stream problem.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace eeperf::cli

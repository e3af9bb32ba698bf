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

#include "eeperf/complexity.hpp"
#include "eeperf/quantity.hpp"

namespace eeperf {

enum class Designation { c_opt, c_exp };
std::string to_string(Designation d);

struct RunInputs {
  Quantity sigma_avail = energy(0.0);
  Quantity delta_t = duration(0.0);
  double s_e = 0.0;
  std::optional<double> c_opt;
  double c_exp = 0.0;
  Quantity j_bound = energy(0.0);
  double gamma = 0.0;
  Quantity hbar = action(1.0);
  std::optional<ComplexityEstimate> k_kl;
  std::optional<CalibrationFit> calibration;
  Designation designation = Designation::c_exp;
  /// Where C_opt came from, e.g. "benchmark", "certified-depth", "user".
  std::string c_opt_source;

  /// The designated complexity input.
  double complexity() const;
};

double eta_qsl(const RunInputs& in);
double eta_lr(const RunInputs& in);

struct ProxyEta {
  double value = 0.0;
  /// Set when K_KL < K(M) forced the numerator to zero.
  bool clamped = false;
};
ProxyEta eta_qsl_k(const RunInputs& in);

struct GateVerdict {
  bool gate_a = false;
  bool gate_b = false;
};

/// Relative tolerance of both gates.
inline constexpr double kGateTolerance = 1e-9;

GateVerdict compliance_gates(const RunInputs& in);

struct IdentityCheck {
  Quantity lhs;
  Quantity rhs;
  double residual = 0.0;
  std::optional<Quantity> proxy_rhs;
  std::optional<double> proxy_residual;
  bool dimensions_ok = false;
};

/// sigma S_E against (eta_LR / eta_QSL)(pi gamma J / 2) C, and the proxy
/// form with c_G (K_KL - K(M)) when complexity inputs exist.
IdentityCheck rect_eta_identity(const RunInputs& in);

struct EfficiencyReport {
  std::optional<double> eta_qsl;
  double eta_lr = 0.0;
  std::optional<double> eta_qsl_k;
  bool eta_qsl_k_clamped = false;
  std::optional<double> ratio;
  bool gate_a_pass = false;
  bool gate_b_pass = false;
  std::optional<double> identity_residual;
  std::optional<double> proxy_residual;
  bool dimensions_ok = false;
  bool trivial = false;
  Designation designation = Designation::c_exp;
  double complexity = 0.0;
  std::string c_opt_source;
};

/// Computes every factor, gate and residual that the inputs support. Runs
/// with C = 0 or no energy spread are flagged trivial instead of raising.
EfficiencyReport evaluate(const RunInputs& in);

enum class Verdict { propagation_limited, resource_limited, balanced };
std::string to_string(Verdict v);

struct Diagnosis {
  Verdict verdict;
  std::string narrative;
};

Diagnosis diagnose(const EfficiencyReport& report, double band = 0.1);

struct FrontierPoint {
  std::string run_id;
  double complexity_x = 0.0;
  Quantity resource_output_y = energy(0.0);
  double sigma_avail = 0.0;
  double s_e = 0.0;
  double c_exp = 0.0;
  EfficiencyReport report;
};

struct EnvelopeFit {
  double slope = 0.0;
  double theoretical_slope = 0.0;
  /// slope / theoretical_slope.
  double slope_ratio = 0.0;
  std::vector<std::size_t> envelope_indices;
  bool all_below_line = false;
  double max_excess = 0.0;
  std::optional<double> r_exp;
};

/// Least-squares line through the origin on the top-k points of each
/// complexity bin; trivial (x = 0) points are excluded.
EnvelopeFit fit_envelope(const std::vector<FrontierPoint>& points, double gamma, double j, int bins = 8, int top_k = 1);

}  // namespace eeperf

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
#include <utility>
#include <vector>

#include "eeperf/circuits.hpp"
#include "eeperf/sampling.hpp"

namespace eeperf {

struct ComplexityEstimate {
  double k_kl = 0.0;
  double d_kl_to_uniform = 0.0;
  /// Shannon entropy computed directly, kept as the cross-check value.
  double shannon_bits = 0.0;
  std::size_t m_out = 0;
  double epsilon = 0.0;
  double f_epsilon = 0.0;
  double confidence = 0.0;
};

/// sum_i p_i log2(p_i M_out), with 0 log 0 = 0.
double kl_to_uniform(const EmpiricalDistribution& p);

double shannon_entropy_bits(const std::vector<double>& p);

/// K_KL = log2 M_out - D_KL(P || U); throws when it disagrees with the
/// directly computed Shannon entropy by more than 1e-10.
ComplexityEstimate k_kl(const EmpiricalDistribution& p, double epsilon = 0.0, double delta = 0.0);

/// f(eps) = eps * log2(M_out / eps); f(0) = 0.
double statistical_error_bound(std::size_t m_out, double epsilon);

struct CalibrationFit {
  double c_g = 0.0;
  double k_m = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (C_opt, K_KL)
  std::size_t n_points() const { return points.size(); }
};

/// Ordinary least squares of C_opt on K_KL: slope c_g, k_m = -intercept / c_g.
CalibrationFit calibrate(const std::vector<std::pair<double, double>>& points);

struct ComplexityBound {
  double slack_free = 0.0;
  double with_slack = 0.0;
};

/// max(0, c_g (K_KL - K(M) - f) - slack * log2(max(2, K_KL))), with and
/// without the slack term.
ComplexityBound c_opt_lower_bound(const ComplexityEstimate& est, const CalibrationFit& fit, double log_slack = 1.0);

struct GhzBenchmark {
  double c_opt = 0.0;
  Circuit circuit;
};

/// Hadamard on qubit 0 then a balanced CNOT fan-out; depth 1 + log2 n.
GhzBenchmark ghz_benchmark(int n);

StateVector ghz_state(int n);

struct RandomnessReport {
  double p_monobit = 0.0;
  double p_block_frequency = 0.0;
  double p_runs = 0.0;
  std::size_t block_length = 0;
  std::size_t n_bits = 0;
  double alpha_sig = 0.01;
  bool monobit_pass = false;
  bool block_frequency_pass = false;
  bool runs_pass = false;
  bool all_pass() const { return monobit_pass && block_frequency_pass && runs_pass; }
};

/// Frequency, block-frequency and runs tests on a bit sequence.
RandomnessReport randomness_screen(const std::vector<std::uint8_t>& bits, double alpha_sig = 0.01);

/// Concatenates the low `bits_per_outcome` bits of each outcome, LSB first.
std::vector<std::uint8_t> outcomes_to_bits(const std::vector<std::uint64_t>& outcomes, int bits_per_outcome);

}  // namespace eeperf

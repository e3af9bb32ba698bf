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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eeperf/entanglement.hpp"
#include "eeperf/hamiltonian.hpp"
#include "eeperf/linalg.hpp"
#include "eeperf/state.hpp"

namespace eeperf {

inline constexpr double kDefaultAlpha = 0.5;

/// Smoothed outcome frequencies P(x_i) = (n_i + alpha) / (N + M_out alpha).
/// Counts are integers for sampled data and pseudo-counts p * N for
/// shadow-reconstructed data.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::vector<double> counts, double alpha = kDefaultAlpha);
  /// Exact distribution: probabilities taken as given (alpha = 0, N = 1).
  static EmpiricalDistribution exact(const std::vector<double>& probabilities);

  const std::vector<double>& counts() const { return counts_; }
  const std::vector<double>& probabilities() const { return p_; }
  double total_shots() const { return total_; }
  std::size_t m_out() const { return counts_.size(); }
  double alpha() const { return alpha_; }

 private:
  std::vector<double> counts_;
  std::vector<double> p_;
  double total_;
  double alpha_;
};

/// Born-rule outcome indices; shot i draws from the stream (seed, i). When
/// `qubits` is non-empty only those qubits are read out, bit j = qubits[j].
std::vector<std::uint64_t> sample_outcomes(const StateVector& state, std::size_t n_shots, std::uint64_t seed,
                                           const std::vector<int>& qubits = {});

EmpiricalDistribution sample_bitstrings(const StateVector& state, std::size_t n_shots, std::uint64_t seed,
                                        double alpha = kDefaultAlpha, const std::vector<int>& qubits = {});

/// The 24 single-qubit Cliffords modulo global phase; index 0 is identity.
const std::vector<CMatrix>& clifford_group();

enum class ShadowProtocol : std::uint8_t { direct_z = 0, local_clifford = 1 };
std::string to_string(ShadowProtocol p);
ShadowProtocol shadow_protocol_from_string(const std::string& s);

struct Snapshot {
  std::vector<std::uint8_t> labels;
  std::uint64_t outcome;
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct ShadowDataset {
  ShadowProtocol protocol = ShadowProtocol::local_clifford;
  std::uint64_t master_seed = 0;
  int n_qubits = 0;
  std::vector<Snapshot> snapshots;
  friend bool operator==(const ShadowDataset&, const ShadowDataset&) = default;
};

/// Each shot rotates every qubit by an independent uniform Clifford (identity
/// for direct-Z) and samples one computational-basis outcome.
ShadowDataset sample_shadows(const StateVector& state, std::size_t n_shots, std::uint64_t seed,
                             ShadowProtocol protocol = ShadowProtocol::local_clifford);

/// Estimates every P(x) by local-Clifford inversion and median-of-means,
/// clips negatives, renormalizes, then smooths. Direct-Z data yields raw
/// counts.
EmpiricalDistribution reconstruct_distribution(const ShadowDataset& shadows, int median_of_means_batches = 10,
                                               double alpha = kDefaultAlpha);

/// Median-of-means shadow estimate of <P> for a Pauli string (coefficient ignored).
double shadow_expectation(const ShadowDataset& shadows, const PauliString& pauli, int median_of_means_batches = 10);

void write_shadow_dataset(std::ostream& out, const ShadowDataset& data);
ShadowDataset read_shadow_dataset(std::istream& in);

std::uint64_t required_shots_purity(int a_size, double epsilon);
std::uint64_t required_shots_distribution(std::uint64_t m_out, double epsilon, double delta, double c_constant = 1.0);

struct PurityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots_used = 0;
  double epsilon_target = 0.0;
};

struct PurityOptions {
  /// Target precision; when positive and `enforce_budget` is set, fewer
  /// shots than required_shots_purity raise a budget error.
  double epsilon = 0.0;
  bool enforce_budget = false;
};

/// Two-copy randomized-measurement estimate of Tr(rho_A^2).
PurityEstimate estimate_purity_randomized(const StateVector& state, const Bipartition& part,
                                          std::size_t n_unitaries, std::size_t shots_per_unitary,
                                          std::uint64_t seed, const PurityOptions& options = {});

}  // namespace eeperf

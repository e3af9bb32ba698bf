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

#include <functional>
#include <optional>
#include <vector>

#include "eeperf/circuits.hpp"
#include "eeperf/hamiltonian.hpp"
#include "eeperf/quantity.hpp"
#include "eeperf/state.hpp"

namespace eeperf {

struct EvolveOptions {
  /// Samples per constant interval, endpoints included. Ignored when
  /// grid_points is set.
  int points_per_interval = 64;
  /// Total uniform grid size; schedule breakpoints are inserted on top.
  int grid_points = 0;
  double hbar = 1.0;
  int max_qubits = 14;
  /// Largest independent block that is diagonalized densely; larger blocks
  /// use the matrix-free Chebyshev propagator.
  int dense_max_qubits = 10;
  bool keep_states = false;
  /// Called at every grid point with the sample index, time and state.
  std::function<void(std::size_t, double, const StateVector&)> observer;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> energy_mean;
  /// Delta H at each grid point, right limit (the final point uses the left).
  std::vector<double> dh;
  /// Left limits; equals dh except at schedule breakpoints. May be empty.
  std::vector<double> dh_left;
  /// Entropies in bits, filled when requested by the entanglement module.
  std::vector<double> s_vn_bits;
  std::vector<double> s2_bits;
  std::vector<StateVector> states;
  std::optional<StateVector> final_state;

  Quantity sigma_avail;
  Quantity delta_t;
  double hbar = 1.0;

  /// Constant-Hamiltonian intervals [start, end) and the Bures angle
  /// arccos|<psi_start|psi_end>| accumulated over each of them.
  std::vector<double> interval_starts;
  std::vector<double> interval_angles;
  double max_norm_drift = 0.0;

  /// (2 / pi) * sum of interval Bures angles: the orthogonality depth each
  /// interval certifiably traversed.
  double certified_depth() const;
};

/// Exact piecewise propagation with psi(t) = exp(-i H t / hbar) psi(0) on each
/// constant interval.
Trajectory evolve(const LocalHamiltonian& h, const StateVector& psi0, double delta_t,
                  const EvolveOptions& options = {});

/// Composite trapezoid average of dh over the grid, honoring left limits;
/// stores the result in the trajectory.
Quantity sigma_avail(Trajectory& traj);

/// Trapezoid integral of samples y(t).
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

/// Generator G (energy units) with exp(-i G tau / hbar) equal to U up to a
/// global phase, from the principal logarithm of U normalized into SU(d).
CMatrix gate_generator(const CMatrix& unitary, double gate_time, double hbar = 1.0);

/// Pauli decomposition of a Hermitian matrix on `support` (local bit j is
/// support[j]); coefficients below `cutoff` are dropped.
std::vector<PauliString> pauli_decompose(const CMatrix& m, const std::vector<int>& support,
                                         double cutoff = 1e-14);

/// Each layer l becomes the interval [l*tau, (l+1)*tau) driven by the sum of
/// its gate generators.
LocalHamiltonian circuit_to_schedule(const Circuit& circuit, double gate_time, double hbar = 1.0);

}  // namespace eeperf

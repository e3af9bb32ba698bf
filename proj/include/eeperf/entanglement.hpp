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

#include <string>
#include <vector>

#include "eeperf/dynamics.hpp"
#include "eeperf/hamiltonian.hpp"
#include "eeperf/linalg.hpp"
#include "eeperf/state.hpp"

namespace eeperf {

class Bipartition {
 public:
  /// Boundary bonds are counted from the geometry edges with exactly one
  /// endpoint in A.
  Bipartition(std::vector<int> subsystem_a, int n_qubits, const Geometry& geometry = {});
  /// A = the first floor(n / 2) qubits.
  static Bipartition half(int n_qubits, const Geometry& geometry = {});

  const std::vector<int>& subsystem_a() const { return a_; }
  std::vector<int> subsystem_b() const;
  int n_qubits() const { return n_; }
  int size_a() const { return static_cast<int>(a_.size()); }
  int boundary_bonds() const { return boundary_; }

 private:
  std::vector<int> a_;
  int n_;
  int boundary_;
};

/// rho_A = Tr_B |psi><psi|; local bit j of the row index is subsystem_a[j].
CMatrix reduced_density(const StateVector& state, const Bipartition& part);

double purity(const CMatrix& rho);
double renyi2(const CMatrix& rho);
double von_neumann(const CMatrix& rho);

struct Entropies {
  double purity;
  double s2_bits;
  double s_vn_bits;
};

/// Entropies of A computed on the smaller side of the cut.
Entropies entanglement_entropies(const StateVector& state, const Bipartition& part);

/// Evolves and fills the trajectory's s_vn_bits and s2_bits columns.
Trajectory evolve_with_entropy(const LocalHamiltonian& h, const StateVector& psi0, double delta_t,
                               const Bipartition& part, EvolveOptions options = {});

/// dy/dt by central differences, one-sided at the ends.
std::vector<double> central_differences(const std::vector<double>& t, const std::vector<double>& y);

/// Largest entropy growth rate on [t0, horizon]: central differences plus the
/// running secant (s(t) - s(t0)) / (t - t0).
double peak_growth_rate(const std::vector<double>& t, const std::vector<double>& s, double horizon);

enum class EntropyMeasure { renyi2, von_neumann };
enum class RateWindow { early, full };

std::string to_string(EntropyMeasure m);
std::string to_string(RateWindow w);

struct Quench {
  std::string label;
  LocalHamiltonian hamiltonian;
  StateVector initial;
  double delta_t;
};

struct GammaOptions {
  EvolveOptions evolve;
  EntropyMeasure measure = EntropyMeasure::renyi2;
  /// early: t <= min(0.25 |A| hbar / J, delta_t); full: the whole run.
  RateWindow window = RateWindow::early;
  /// When positive, every quench is normalized by this J instead of its own.
  double shared_j = 0.0;
};

struct GammaEstimate {
  double gamma = 0.0;
  double c_constant = 0.0;
  int boundary_bonds = 0;
  int ensemble_size = 0;
  /// Largest dS/dt observed, in bits per time unit.
  double max_rate_observed = 0.0;
  EntropyMeasure measure = EntropyMeasure::renyi2;
  RateWindow window = RateWindow::early;
};

/// gamma = max over quenches of (peak entropy rate in the window) * hbar / J.
GammaEstimate estimate_gamma(const Bipartition& part, const std::vector<Quench>& ensemble,
                             const GammaOptions& options = {});

}  // namespace eeperf

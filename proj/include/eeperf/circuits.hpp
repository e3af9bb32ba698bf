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
#include <string>
#include <vector>

#include "eeperf/linalg.hpp"
#include "eeperf/state.hpp"

namespace eeperf {

/// A one- or two-qubit unitary. For two-qubit gates local bit j is qubits[j],
/// so CNOT with qubits {control, target} flips local index 1 <-> 3.
struct Gate {
  std::string name;
  std::vector<int> qubits;
  CMatrix unitary;

  Gate(std::string name, std::vector<int> qubits, CMatrix unitary);
  Gate on(std::vector<int> new_qubits) const { return Gate(name, std::move(new_qubits), unitary); }
};

namespace gates {

CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix h();
CMatrix s();
CMatrix t();
CMatrix rx(double theta);
CMatrix ry(double theta);
CMatrix rz(double theta);
CMatrix cnot();
CMatrix cz();
CMatrix swap();
CMatrix iswap();
CMatrix sqrt_iswap();
/// Haar-random SU(2) element.
CMatrix random_su2(std::uint64_t seed, std::uint64_t index);

/// Looks up a named gate matrix: I, X, Y, Z, H, S, T, CNOT, CZ, SWAP, ISWAP, SQRT_ISWAP.
CMatrix by_name(const std::string& name);
/// Arity of a named gate.
int arity(const std::string& name);

}  // namespace gates

/// The default universal gate set {H, S, T, CNOT}.
std::vector<std::string> default_gate_set();
/// 1 / log2 |G|.
double c_g_from_gate_set(std::size_t gate_set_size);

class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_(n_qubits) {}

  /// Appends a layer; gates must act on pairwise disjoint qubits.
  void add_layer(std::vector<Gate> layer);

  int n_qubits() const { return n_; }
  const std::vector<std::vector<Gate>>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }

 private:
  int n_;
  std::vector<std::vector<Gate>> layers_;
};

StateVector apply_circuit(const Circuit& circuit, const StateVector& state);

/// Applies only one layer.
void apply_layer(const std::vector<Gate>& layer, StateVector& state);

/// Experimentally applied complexity: the layer count.
double c_exp(const Circuit& circuit);

/// Dense 2^n unitary of the whole circuit, for small n.
CMatrix circuit_unitary(const Circuit& circuit);

struct BrickworkOptions {
  bool random_rotations = true;
};

/// Alternating even/odd bond layers of `entangler` (a 4x4 unitary). With
/// random rotations each brick is entangler * (u_a (x) u_b) for seeded Haar
/// SU(2) factors, so the depth equals the number of brick layers.
Circuit brickwork(int n, int depth, const CMatrix& entangler, std::uint64_t seed,
                  BrickworkOptions options = {}, const std::string& entangler_name = "ENT");

}  // namespace eeperf

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
#include <span>
#include <string_view>
#include <vector>

#include "eeperf/linalg.hpp"

namespace eeperf {

/// Pure state on n qubits. Qubit q is bit q of the amplitude index, so qubit 0
/// is the least significant bit.
class StateVector {
 public:
  static constexpr int kMaxQubits = 26;

  /// Checks the norm is 1 within 1e-9.
  StateVector(int n_qubits, CVector amplitudes);

  static StateVector zero(int n_qubits);
  static StateVector basis(int n_qubits, std::uint64_t index);
  /// One label per qubit, qubit 0 first: 0, 1, +, -, r (+i), l (-i).
  static StateVector product(std::string_view labels);
  /// |0101...> with qubit 0 in |0>.
  static StateVector neel(int n_qubits);
  /// Haar-random state from the given seed.
  static StateVector random(int n_qubits, std::uint64_t seed);
  /// Normalizes arbitrary non-zero amplitudes.
  static StateVector normalized(int n_qubits, CVector amplitudes);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  void renormalize();

  /// Applies a 2^k x 2^k matrix acting on `qubits`; local bit j maps to qubits[j].
  void apply(const CMatrix& gate, std::span<const int> qubits);

  cplx inner(const StateVector& other) const { return amps_.dot(other.amps_); }
  double fidelity(const StateVector& other) const { return std::norm(inner(other)); }

  /// Born probabilities of the computational basis.
  std::vector<double> probabilities() const;

 private:
  StateVector() = default;
  int n_ = 0;
  CVector amps_;
};

/// Applies a local matrix to a raw amplitude vector in place.
void apply_local(CVector& amps, int n_qubits, const CMatrix& gate, std::span<const int> qubits);

}  // namespace eeperf

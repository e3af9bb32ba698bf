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

#include "eeperf/state.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "eeperf/error.hpp"
#include "eeperf/rng.hpp"

namespace eeperf {

namespace {

void check_qubits(int n) {
  require(n >= 1, ErrorCode::invalid_argument, "qubit count must be positive");
  require(n <= StateVector::kMaxQubits, ErrorCode::capacity,
          "qubit count " + std::to_string(n) + " exceeds state-vector capacity");
}

}  // namespace

StateVector::StateVector(int n_qubits, CVector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubits(n_);
  require(amps_.size() == (Eigen::Index{1} << n_), ErrorCode::dimension_mismatch,
          "amplitude vector length does not match 2^n");
  require(std::abs(amps_.norm() - 1.0) <= 1e-9, ErrorCode::invalid_argument,
          "state is not normalized");
}

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  check_qubits(n_qubits);
  const auto dim = Eigen::Index{1} << n_qubits;
  require(index < static_cast<std::uint64_t>(dim), ErrorCode::invalid_argument, "basis index out of range");
  StateVector s;
  s.n_ = n_qubits;
  s.amps_ = CVector::Zero(dim);
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector StateVector::product(std::string_view labels) {
  const int n = static_cast<int>(labels.size());
  check_qubits(n);
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<std::array<cplx, 2>> local;
  for (char c : labels) {
    switch (c) {
      case '0': local.push_back({1.0, 0.0}); break;
      case '1': local.push_back({0.0, 1.0}); break;
      case '+': local.push_back({r, r}); break;
      case '-': local.push_back({r, -r}); break;
      case 'r': local.push_back({r, cplx(0, r)}); break;
      case 'l': local.push_back({r, cplx(0, -r)}); break;
      default: fail(ErrorCode::invalid_argument, std::string("unknown product-state label '") + c + "'");
    }
  }
  StateVector s;
  s.n_ = n;
  s.amps_.resize(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < s.amps_.size(); ++i) {
    cplx a = 1.0;
    for (int q = 0; q < n; ++q) a *= local[q][(i >> q) & 1];
    s.amps_[i] = a;
  }
  return s;
}

StateVector StateVector::neel(int n_qubits) {
  std::string labels;
  for (int q = 0; q < n_qubits; ++q) labels.push_back(q % 2 ? '1' : '0');
  return product(labels);
}

StateVector StateVector::random(int n_qubits, std::uint64_t seed) {
  check_qubits(n_qubits);
  Rng rng(seed, 0x5717e);
  CVector a(Eigen::Index{1} << n_qubits);
  for (auto& x : a) {
    const double re = rng.normal();
    x = cplx(re, rng.normal());
  }
  return normalized(n_qubits, std::move(a));
}

StateVector StateVector::normalized(int n_qubits, CVector amplitudes) {
  const double nrm = amplitudes.norm();
  require(nrm > 0.0 && std::isfinite(nrm), ErrorCode::invalid_argument, "cannot normalize a zero vector");
  return StateVector(n_qubits, amplitudes / nrm);
}

void StateVector::renormalize() { amps_ /= amps_.norm(); }

void StateVector::apply(const CMatrix& gate, std::span<const int> qubits) {
  apply_local(amps_, n_, gate, qubits);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps_[static_cast<Eigen::Index>(i)]);
  return p;
}

void apply_local(CVector& amps, int n_qubits, const CMatrix& gate, std::span<const int> qubits) {
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index ld = Eigen::Index{1} << k;
  require(gate.rows() == ld && gate.cols() == ld, ErrorCode::dimension_mismatch,
          "gate dimension does not match its qubit count");
  require(amps.size() == (Eigen::Index{1} << n_qubits), ErrorCode::dimension_mismatch,
          "state dimension does not match qubit count");
  std::uint64_t mask = 0;
  for (int q : qubits) {
    require(q >= 0 && q < n_qubits, ErrorCode::invalid_argument, "gate qubit out of range");
    require(!(mask >> q & 1), ErrorCode::invalid_argument, "gate qubits must be distinct");
    mask |= std::uint64_t{1} << q;
  }
  std::vector<std::uint64_t> offset(static_cast<std::size_t>(ld));
  for (Eigen::Index l = 0; l < ld; ++l) {
    std::uint64_t o = 0;
    for (int j = 0; j < k; ++j)
      if (l >> j & 1) o |= std::uint64_t{1} << qubits[j];
    offset[static_cast<std::size_t>(l)] = o;
  }
  CVector in(ld), out(ld);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index l = 0; l < ld; ++l) in[l] = amps[static_cast<Eigen::Index>(base | offset[l])];
    out.noalias() = gate * in;
    for (Eigen::Index l = 0; l < ld; ++l) amps[static_cast<Eigen::Index>(base | offset[l])] = out[l];
  }
}

}  // namespace eeperf

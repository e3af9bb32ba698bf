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

#include "eeperf/circuits.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "eeperf/error.hpp"
#include "eeperf/rng.hpp"

namespace eeperf {

Gate::Gate(std::string gate_name, std::vector<int> gate_qubits, CMatrix u)
    : name(std::move(gate_name)), qubits(std::move(gate_qubits)), unitary(std::move(u)) {
  require(qubits.size() == 1 || qubits.size() == 2, ErrorCode::invalid_argument,
          "gate " + name + " must act on one or two qubits");
  require(qubits.size() == 1 || qubits[0] != qubits[1], ErrorCode::invalid_argument,
          "gate " + name + " qubits must be distinct");
  const Eigen::Index d = Eigen::Index{1} << qubits.size();
  require(unitary.rows() == d && unitary.cols() == d, ErrorCode::dimension_mismatch,
          "gate " + name + " matrix size does not match its arity");
  require((unitary.adjoint() * unitary - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10,
          ErrorCode::invalid_argument, "gate " + name + " is not unitary");
}

namespace gates {

namespace {
CMatrix m2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

CMatrix identity() { return CMatrix::Identity(2, 2); }
CMatrix x() { return m2(0, 1, 1, 0); }
CMatrix y() { return m2(0, -kI, kI, 0); }
CMatrix z() { return m2(1, 0, 0, -1); }
CMatrix h() {
  const double r = 1.0 / std::numbers::sqrt2;
  return m2(r, r, r, -r);
}
CMatrix s() { return m2(1, 0, 0, kI); }
CMatrix t() { return m2(1, 0, 0, std::polar(1.0, std::numbers::pi / 4)); }
CMatrix rx(double th) { return m2(std::cos(th / 2), -kI * std::sin(th / 2), -kI * std::sin(th / 2), std::cos(th / 2)); }
CMatrix ry(double th) { return m2(std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2)); }
CMatrix rz(double th) { return m2(std::polar(1.0, -th / 2), 0, 0, std::polar(1.0, th / 2)); }

CMatrix cnot() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = m(3, 3) = 0;
  m(1, 3) = m(3, 1) = 1;
  return m;
}
CMatrix cz() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}
CMatrix swap() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = m(2, 2) = 0;
  m(1, 2) = m(2, 1) = 1;
  return m;
}
CMatrix iswap() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = m(2, 2) = 0;
  m(1, 2) = m(2, 1) = kI;
  return m;
}
CMatrix sqrt_iswap() {
  const double r = 1.0 / std::numbers::sqrt2;
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = m(2, 2) = r;
  m(1, 2) = m(2, 1) = kI * r;
  return m;
}

CMatrix random_su2(std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  double q[4];
  double nrm = 0.0;
  for (double& v : q) {
    v = rng.normal();
    nrm += v * v;
  }
  nrm = std::sqrt(nrm);
  for (double& v : q) v /= nrm;
  const cplx a(q[0], q[1]), b(q[2], q[3]);
  return m2(a, -std::conj(b), b, std::conj(a));
}

CMatrix by_name(const std::string& name) {
  if (name == "I") return identity();
  if (name == "X") return x();
  if (name == "Y") return y();
  if (name == "Z") return z();
  if (name == "H") return h();
  if (name == "S") return s();
  if (name == "T") return t();
  if (name == "CNOT" || name == "CX") return cnot();
  if (name == "CZ") return cz();
  if (name == "SWAP") return swap();
  if (name == "ISWAP") return iswap();
  if (name == "SQRT_ISWAP") return sqrt_iswap();
  fail(ErrorCode::config, "unknown gate '" + name + "'");
}

int arity(const std::string& name) { return by_name(name).rows() == 2 ? 1 : 2; }

}  // namespace gates

std::vector<std::string> default_gate_set() { return {"H", "S", "T", "CNOT"}; }

double c_g_from_gate_set(std::size_t n) {
  require(n >= 2, ErrorCode::invalid_argument, "gate set needs at least two elements");
  return 1.0 / std::log2(static_cast<double>(n));
}

void Circuit::add_layer(std::vector<Gate> layer) {
  std::uint64_t used = 0;
  for (const auto& g : layer)
    for (int q : g.qubits) {
      require(q >= 0 && q < n_, ErrorCode::invalid_argument, "gate " + g.name + " qubit out of range");
      require(!(used >> q & 1), ErrorCode::layer_conflict,
              "layer " + std::to_string(layers_.size()) + " uses qubit " + std::to_string(q) + " twice");
      used |= std::uint64_t{1} << q;
    }
  layers_.push_back(std::move(layer));
}

void apply_layer(const std::vector<Gate>& layer, StateVector& state) {
  for (const auto& g : layer) state.apply(g.unitary, g.qubits);
}

StateVector apply_circuit(const Circuit& circuit, const StateVector& state) {
  require(circuit.n_qubits() == state.n_qubits(), ErrorCode::dimension_mismatch,
          "circuit and state qubit counts differ");
  StateVector out = state;
  for (const auto& layer : circuit.layers()) apply_layer(layer, out);
  return out;
}

double c_exp(const Circuit& circuit) { return static_cast<double>(circuit.depth()); }

CMatrix circuit_unitary(const Circuit& circuit) {
  const int n = circuit.n_qubits();
  require(n <= 12, ErrorCode::capacity, "dense circuit unitary limited to 12 qubits");
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix u(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    u.col(c) = apply_circuit(circuit, StateVector::basis(n, static_cast<std::uint64_t>(c))).amplitudes();
  return u;
}

Circuit brickwork(int n, int depth, const CMatrix& entangler, std::uint64_t seed, BrickworkOptions options,
                  const std::string& entangler_name) {
  require(n >= 2, ErrorCode::invalid_argument, "brickwork needs at least two qubits");
  require(depth >= 0, ErrorCode::invalid_argument, "brickwork depth must be non-negative");
  require(entangler.rows() == 4 && entangler.cols() == 4, ErrorCode::dimension_mismatch,
          "entangler must be a two-qubit gate");
  Circuit c(n);
  std::uint64_t draw = 0;
  for (int layer = 0; layer < depth; ++layer) {
    std::vector<Gate> gates_in_layer;
    for (int a = layer % 2; a + 1 < n; a += 2) {
      CMatrix u = entangler;
      std::string name = entangler_name;
      if (options.random_rotations) {
        // Kronecker order puts qubit a on local bit 0.
        const CMatrix ua = gates::random_su2(seed, draw++);
        const CMatrix ub = gates::random_su2(seed, draw++);
        u = entangler * Eigen::kroneckerProduct(ub, ua).eval();
        name += "*R";
      }
      gates_in_layer.emplace_back(name, std::vector<int>{a, a + 1}, u);
    }
    c.add_layer(std::move(gates_in_layer));
  }
  return c;
}

}  // namespace eeperf

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
#include <utility>
#include <vector>

#include "eeperf/linalg.hpp"
#include "eeperf/quantity.hpp"
#include "eeperf/state.hpp"

namespace eeperf {

enum class Pauli : std::uint8_t { X, Y, Z };

char to_char(Pauli p);
Pauli pauli_from_char(char c);
CMatrix pauli_matrix(Pauli p);

/// coefficient * P_{sites[0]} (x) P_{sites[1]} ... ; an empty site list is the
/// identity. Sites are stored sorted ascending.
class PauliString {
 public:
  PauliString(std::vector<int> sites, std::vector<Pauli> letters, double coefficient);
  /// Parses letters such as "XZ" against the given sites.
  PauliString(std::vector<int> sites, const std::string& letters, double coefficient);

  const std::vector<int>& sites() const { return sites_; }
  const std::vector<Pauli>& letters() const { return letters_; }
  double coefficient() const { return coefficient_; }
  std::string label() const;

  /// Dense matrix on `support`, local bit j corresponding to support[j].
  CMatrix matrix_on(const std::vector<int>& support) const;

 private:
  std::vector<int> sites_;
  std::vector<Pauli> letters_;
  double coefficient_;
};

/// Piecewise-constant multiplier. Piece i covers [starts[i], starts[i+1]); the
/// last piece holds until the end of the evolution.
class Schedule {
 public:
  Schedule() : starts_{0.0}, values_{1.0} {}
  Schedule(std::vector<double> starts, std::vector<double> values);
  static Schedule constant(double v) { return Schedule({0.0}, {v}); }

  double at(double t) const;
  const std::vector<double>& starts() const { return starts_; }
  const std::vector<double>& values() const { return values_; }
  /// Values of the pieces that intersect [0, horizon).
  std::vector<double> values_until(double horizon) const;

 private:
  std::vector<double> starts_;
  std::vector<double> values_;
};

struct LocalTerm {
  std::vector<int> support;
  std::vector<PauliString> strings;
  Schedule schedule;

  /// Builds a term whose support is the union of the string sites.
  static LocalTerm from_strings(std::vector<PauliString> strings, Schedule schedule = {});
  /// Dense static part (schedule value 1) on `support`.
  CMatrix static_matrix() const;
};

struct Geometry {
  enum class Kind { open_chain, ring, grid };
  Kind kind = Kind::open_chain;
  int rows = 0;
  int cols = 0;

  static Geometry chain() { return {}; }
  static Geometry make_ring() { return {Kind::ring, 0, 0}; }
  static Geometry make_grid(int rows, int cols) { return {Kind::grid, rows, cols}; }

  std::vector<std::pair<int, int>> edges(int n_qubits) const;
  std::string name() const;
};

class LocalHamiltonian {
 public:
  /// Validates supports and the hermiticity of each term (supports up to 12).
  LocalHamiltonian(int n_qubits, std::vector<LocalTerm> terms, Geometry geometry = {});

  int n_qubits() const { return n_; }
  const std::vector<LocalTerm>& terms() const { return terms_; }
  const Geometry& geometry() const { return geometry_; }

  /// Sorted union of all schedule breakpoints strictly inside (0, horizon).
  std::vector<double> breakpoints(double horizon) const;

  /// Returns a copy with every coefficient multiplied by `factor`.
  LocalHamiltonian scaled(double factor) const;

 private:
  int n_;
  std::vector<LocalTerm> terms_;
  Geometry geometry_;
};

/// A Hamiltonian frozen at one instant, compiled to bit masks for fast
/// matrix-free action. P|x> = phase(x) |x ^ flip>.
struct PauliSum {
  struct Entry {
    std::uint64_t flip;
    std::uint64_t sign_mask;
    cplx weight;  // coefficient * i^{number of Y}
  };
  int n_qubits = 0;
  std::vector<Entry> entries;

  void apply(const CVector& in, CVector& out) const;
  CMatrix dense() const;
  bool empty() const { return entries.empty(); }
};

PauliSum compile(const LocalHamiltonian& h, double t);

Quantity term_norm(const LocalTerm& term, double t);
Quantity interaction_bound(const LocalHamiltonian& h);

CVector apply_hamiltonian(const LocalHamiltonian& h, double t, const StateVector& state);

struct EnergyMoments {
  Quantity mean;
  Quantity second_moment;
};

EnergyMoments energy_moments(const LocalHamiltonian& h, double t, const StateVector& state);
EnergyMoments energy_moments(const PauliSum& h, const CVector& state);
Quantity energy_std(const LocalHamiltonian& h, double t, const StateVector& state);
double energy_std(const PauliSum& h, const CVector& state);

/// Full 2^n matrix at time t; intended for small n.
CMatrix dense_matrix(const LocalHamiltonian& h, double t);

namespace models {

/// coupling * (XX + YY + ZZ) on every geometry edge.
LocalHamiltonian heisenberg(int n, double coupling, Geometry geometry = {});
/// coupling * ZZ on edges plus field * X on every site.
LocalHamiltonian ising(int n, double coupling, double field, Geometry geometry = {});
/// (omega / 2) * X on qubit 0 of a single qubit.
LocalHamiltonian rabi(double omega);

}  // namespace models

}  // namespace eeperf

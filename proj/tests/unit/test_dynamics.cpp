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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "eeperf/circuits.hpp"
#include "eeperf/dynamics.hpp"
#include "eeperf/error.hpp"
#include "eeperf/hamiltonian.hpp"

using namespace eeperf;
using std::numbers::pi;

namespace {

CMatrix expm_hermitian(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(-kI * es.eigenvalues()[i] * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Distance between unitaries modulo a global phase.
double phase_distance(const CMatrix& a, const CMatrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return (a - phase * b).norm();
}

}  // namespace

TEST(Evolve, ZeroHamiltonianIsIdentity) {
  const LocalHamiltonian h(3, {});
  const auto psi = StateVector::random(3, 4);
  const auto tr = evolve(h, psi, 1.0);
  EXPECT_NEAR(tr.final_state->fidelity(psi), 1.0, 1e-15);
  EXPECT_LT((tr.final_state->amplitudes() - psi.amplitudes()).norm(), 1e-15);
  for (double d : tr.dh) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(tr.sigma_avail.value(), 0.0);
}

TEST(Evolve, RabiFinalStateMatchesClosedForm) {
  const LocalHamiltonian h(1, {LocalTerm::from_strings({PauliString({0}, "X", 1.0)})});
  const auto tr = evolve(h, StateVector::zero(1), pi / 2);
  EXPECT_NEAR(std::abs((*tr.final_state)[0]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs((*tr.final_state)[1] - cplx(0.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(tr.sigma_avail.value(), 1.0, 1e-14);
  EXPECT_NEAR(tr.certified_depth(), 1.0, 1e-12);
  for (double t : {0.3, 1.0, 2.5}) EXPECT_NEAR(evolve(h, StateVector::zero(1), t).sigma_avail.value(), 1.0, 1e-12);
}

TEST(Evolve, UnitarityAndEnergyConservation) {
  const auto h = models::heisenberg(8, 1.0);
  EvolveOptions opt;
  opt.keep_states = true;
  const auto tr = evolve(h, StateVector::random(8, 12), 2.0, opt);
  EXPECT_NEAR(tr.final_state->norm(), 1.0, 1e-9);
  for (const auto& s : tr.states) EXPECT_NEAR(s.norm(), 1.0, 1e-9);
  for (double e : tr.energy_mean) EXPECT_NEAR(e, tr.energy_mean.front(), 1e-8);
  EXPECT_LT(tr.max_norm_drift, 1e-9);
}

TEST(Evolve, MatchesDenseExponential) {
  const auto h = models::ising(5, 1.0, 0.7, Geometry::make_ring());
  const auto psi = StateVector::random(5, 3);
  const auto tr = evolve(h, psi, 1.3);
  const CVector want = expm_hermitian(dense_matrix(h, 0.0), 1.3) * psi.amplitudes();
  EXPECT_LT((tr.final_state->amplitudes() - want).norm(), 1e-10);
}

TEST(Evolve, LargeBlockBranchMatchesDiagonalOracle) {
  const int n = 12;
  std::vector<LocalTerm> terms;
  for (int q = 0; q + 1 < n; ++q)
    terms.push_back(LocalTerm::from_strings({PauliString({q, q + 1}, "ZZ", 0.3 + 0.05 * q), PauliString({q}, "Z", 0.2)}));
  const LocalHamiltonian h(n, terms);
  const auto psi = StateVector::random(n, 99);
  const auto tr = evolve(h, psi, 1.1);
  const CMatrix diag = compile(h, 0.0).dense();
  CVector want = psi.amplitudes();
  for (Eigen::Index i = 0; i < want.size(); ++i) want[i] *= std::exp(-kI * diag(i, i).real() * 1.1);
  EXPECT_LT((tr.final_state->amplitudes() - want).norm(), 1e-9);
}

TEST(Evolve, LargeBlockBranchComposes) {
  const auto h = models::heisenberg(12, 1.0);
  const auto psi = StateVector::neel(12);
  EvolveOptions opt;
  opt.points_per_interval = 8;
  const auto whole = evolve(h, psi, 0.4, opt);
  const auto half = evolve(h, psi, 0.2, opt);
  const auto rest = evolve(h, *half.final_state, 0.2, opt);
  EXPECT_GT(whole.final_state->fidelity(*rest.final_state), 1.0 - 1e-9);
  EXPECT_NEAR(whole.final_state->norm(), 1.0, 1e-9);
}

TEST(Evolve, CompositionOfIntervals) {
  const auto h = models::heisenberg(6, 0.8, Geometry::make_ring());
  const auto psi = StateVector::random(6, 8);
  const auto whole = evolve(h, psi, 1.7);
  const auto first = evolve(h, psi, 0.6);
  const auto second = evolve(h, *first.final_state, 1.1);
  EXPECT_LT((whole.final_state->amplitudes() - second.final_state->amplitudes()).norm(), 1e-9);
}

TEST(Evolve, GridConvergence) {
  LocalHamiltonian h(3, {LocalTerm::from_strings({PauliString({0, 1}, "XX", 1.0), PauliString({0}, "Z", 0.4)}),
                         LocalTerm::from_strings({PauliString({1, 2}, "YZ", 0.7)}),
                         LocalTerm::from_strings({PauliString({2}, "X", 0.9)}, Schedule({0.0, 0.8}, {1.0, -0.5}))});
  // dH is constant under a time-independent H, so use a state that does not start in a stationary mixture.
  const auto psi = StateVector::product("0+r");
  EvolveOptions coarse;
  coarse.points_per_interval = 256;
  EvolveOptions fine;
  fine.points_per_interval = 512;
  const double a = evolve(h, psi, 2.0, coarse).sigma_avail.value();
  const double b = evolve(h, psi, 2.0, fine).sigma_avail.value();
  EXPECT_LT(std::abs(a - b), 1e-6);
}

TEST(Evolve, CapacityError) {
  try {
    (void)evolve(models::heisenberg(15, 1.0), StateVector::zero(15), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::capacity);
  }
}

TEST(SigmaAvail, Quadrature) {
  std::vector<double> t(1001), y(1001);
  for (int i = 0; i <= 1000; ++i) t[i] = y[i] = i / 1000.0;
  EXPECT_NEAR(trapezoid(t, y), 0.5, 1e-6);
  Trajectory tr;
  tr.times = t;
  tr.dh = y;
  EXPECT_NEAR(sigma_avail(tr).value(), 0.5, 1e-6);
  tr.dh.assign(1001, 0.37);
  tr.dh_left.clear();
  EXPECT_NEAR(sigma_avail(tr).value(), 0.37, 1e-13);
  tr.times.assign(1001, 2.0);
  EXPECT_THROW(sigma_avail(tr), Error);
}

TEST(CircuitSchedule, IdentityGateHasZeroGenerator) {
  EXPECT_LT(gate_generator(gates::identity(), 1.0).norm(), 1e-14);
  Circuit c(2);
  c.add_layer({Gate("I", {0}, gates::identity())});
  const auto h = circuit_to_schedule(c, 1.0);
  const auto tr = evolve(h, StateVector::product("+0"), 1.0);
  EXPECT_NEAR(tr.sigma_avail.value(), 0.0, 1e-14);
}

TEST(CircuitSchedule, XGateReexponentiates) {
  const CMatrix g = gate_generator(gates::x(), pi);
  EXPECT_LT(phase_distance(expm_hermitian(g, pi), gates::x()), 1e-10);
  const auto strings = pauli_decompose(g, {0});
  ASSERT_EQ(strings.size(), 1u);
  EXPECT_EQ(strings[0].label(), "X0");
}

TEST(CircuitSchedule, ParallelCnotLayerReexponentiates) {
  Circuit c(4);
  c.add_layer({Gate("CNOT", {0, 1}, gates::cnot()), Gate("CNOT", {2, 3}, gates::cnot())});
  const auto h = circuit_to_schedule(c, 1.0);
  EXPECT_LT(phase_distance(expm_hermitian(dense_matrix(h, 0.0), 1.0), circuit_unitary(c)), 1e-10);
}

TEST(CircuitSchedule, AmbiguousGeneratorRejected) {
  // -I lies in SU(2) with both eigenphases on the branch cut.
  try {
    (void)gate_generator(-gates::identity(), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ambiguous_generator);
  }
}

TEST(CircuitSchedule, RoundTripMatchesCircuitOnSmallSystems) {
  for (int n = 2; n <= 6; ++n) {
    const auto c = brickwork(n, 4, gates::cnot(), 77 + n);
    const auto psi = StateVector::random(n, 31 + n);
    const auto h = circuit_to_schedule(c, 0.8);
    const auto tr = evolve(h, psi, 0.8 * c.depth());
    EXPECT_GT(tr.final_state->fidelity(apply_circuit(c, psi)), 1.0 - 1e-8) << "n=" << n;
  }
}

TEST(CircuitSchedule, HbarRescalingKeepsFinalState) {
  const auto c = brickwork(4, 3, gates::iswap(), 5);
  EvolveOptions opt2;
  opt2.hbar = 2.0;
  const auto a = evolve(circuit_to_schedule(c, 1.0, 1.0), StateVector::zero(4), 3.0);
  const auto b = evolve(circuit_to_schedule(c, 1.0, 2.0), StateVector::zero(4), 3.0, opt2);
  EXPECT_GT(a.final_state->fidelity(*b.final_state), 1.0 - 1e-12);
  EXPECT_NEAR(b.sigma_avail.value(), 2.0 * a.sigma_avail.value(), 1e-9);
}

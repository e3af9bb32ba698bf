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

#include "eeperf/circuits.hpp"
#include "eeperf/complexity.hpp"
#include "eeperf/entanglement.hpp"
#include "eeperf/error.hpp"

using namespace eeperf;

namespace {

StateVector bell() {
  Circuit c(2);
  c.add_layer({Gate("H", {0}, gates::h())});
  c.add_layer({Gate("CNOT", {0, 1}, gates::cnot())});
  return apply_circuit(c, StateVector::zero(2));
}

std::vector<Quench> neel_ensemble(const LocalHamiltonian& h, int n, double dt) {
  std::string pairs;
  for (int i = 0; i < n; ++i) pairs += (i / 2) % 2 ? '1' : '0';
  return {{"neel", h, StateVector::neel(n), dt}, {"pairs", h, StateVector::product(pairs), dt}};
}

}  // namespace

TEST(ReducedDensity, Examples) {
  const Bipartition a0({0}, 2);
  CMatrix rho = reduced_density(StateVector::zero(2), a0);
  EXPECT_NEAR(std::abs(rho(0, 0) - cplx(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(rho.norm(), 1.0, 1e-15);
  rho = reduced_density(bell(), a0);
  EXPECT_LT((rho - 0.5 * CMatrix::Identity(2, 2)).norm(), 1e-15);
  rho = reduced_density(ghz_state(3), Bipartition({0}, 3));
  EXPECT_LT((rho - 0.5 * CMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(ReducedDensity, PartialTraceOracle) {
  const auto psi = StateVector::random(5, 17);
  const Bipartition part({1, 3}, 5);
  const CMatrix rho = reduced_density(psi, part);
  CMatrix want = CMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) {
      const std::size_t rest_i = i & ~std::size_t{0b01010}, rest_j = j & ~std::size_t{0b01010};
      if (rest_i != rest_j) continue;
      const int ai = static_cast<int>(((i >> 1) & 1) | (((i >> 3) & 1) << 1));
      const int aj = static_cast<int>(((j >> 1) & 1) | (((j >> 3) & 1) << 1));
      want(ai, aj) += psi[i] * std::conj(psi[j]);
    }
  EXPECT_LT((rho - want).norm(), 1e-13);
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(purity(reduced_density(StateVector::zero(2), Bipartition({0}, 2))), 1.0, 1e-15);
  const CMatrix half = reduced_density(bell(), Bipartition({0}, 2));
  EXPECT_NEAR(purity(half), 0.5, 1e-10);
  EXPECT_NEAR(renyi2(half), 1.0, 1e-10);
  EXPECT_NEAR(von_neumann(half), 1.0, 1e-10);
  const CMatrix mixed2 = 0.25 * CMatrix::Identity(4, 4);
  EXPECT_NEAR(purity(mixed2), 0.25, 1e-15);
  EXPECT_NEAR(renyi2(mixed2), 2.0, 1e-12);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  EXPECT_NEAR(von_neumann(d), 0.811278124459, 1e-9);
  const CMatrix pure = reduced_density(StateVector::product("0+"), Bipartition({1}, 2));
  EXPECT_NEAR(renyi2(pure), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann(pure), 0.0, 1e-10);
}

TEST(Entropy, SchmidtSymmetryOrderingAndCap) {
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const auto psi = StateVector::random(n, 1000 + trial);
    std::vector<int> a;
    for (int q = 0; q < n; q += 2) a.push_back(q);
    const Bipartition pa(a, n);
    const Bipartition pb(pa.subsystem_b(), n);
    const CMatrix ra = reduced_density(psi, pa), rb = reduced_density(psi, pb);
    EXPECT_NEAR(von_neumann(ra), von_neumann(rb), 1e-9);
    EXPECT_NEAR(renyi2(ra), renyi2(rb), 1e-9);
    EXPECT_LE(renyi2(ra), von_neumann(ra) + 1e-12);
    EXPECT_LE(von_neumann(ra), static_cast<double>(std::min(pa.size_a(), n - pa.size_a())) + 1e-12);
  }
}

TEST(Entropy, ProductStateHasZeroEntanglement) {
  const auto e = entanglement_entropies(StateVector::product("0+1r-l"), Bipartition::half(6));
  EXPECT_NEAR(e.s2_bits, 0.0, 1e-10);
  EXPECT_NEAR(e.s_vn_bits, 0.0, 1e-10);
  EXPECT_NEAR(e.purity, 1.0, 1e-12);
}

TEST(Bipartition, BoundaryBonds) {
  EXPECT_EQ(Bipartition::half(6).boundary_bonds(), 1);
  EXPECT_EQ(Bipartition::half(6, Geometry::make_ring()).boundary_bonds(), 2);
  EXPECT_EQ(Bipartition({0, 1, 2}, 6, Geometry::make_grid(2, 3)).boundary_bonds(), 3);
  EXPECT_THROW(Bipartition({0, 0}, 3), Error);
  EXPECT_THROW(Bipartition({5}, 3), Error);
}

TEST(Gamma, ZeroHamiltonianIsTrivial) {
  const LocalHamiltonian h(4, {});
  try {
    (void)estimate_gamma(Bipartition::half(4), neel_ensemble(h, 4, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::trivial_dynamics);
  }
  EXPECT_THROW(estimate_gamma(Bipartition::half(4), {}), Error);
}

TEST(Gamma, RingDoublesBoundaryContribution) {
  const int n = 8;
  const auto open_h = models::heisenberg(n, 1.0);
  const auto ring_h = models::heisenberg(n, 1.0, Geometry::make_ring());
  GammaOptions opt;
  opt.evolve.points_per_interval = 120;
  const auto g_open = estimate_gamma(Bipartition::half(n), neel_ensemble(open_h, n, 1.0), opt);
  const auto g_ring = estimate_gamma(Bipartition::half(n, Geometry::make_ring()), neel_ensemble(ring_h, n, 1.0), opt);
  EXPECT_EQ(g_open.boundary_bonds, 1);
  EXPECT_EQ(g_ring.boundary_bonds, 2);
  EXPECT_NEAR(g_ring.gamma / g_open.gamma, 2.0, 0.3);
  EXPECT_NEAR(g_ring.c_constant / g_open.c_constant, 1.0, 0.15);
}

TEST(Gamma, InvariantUnderHbarAndHamiltonianRescaling) {
  const int n = 6;
  const auto h = models::heisenberg(n, 1.0);
  GammaOptions opt;
  opt.window = RateWindow::full;
  const auto base = estimate_gamma(Bipartition::half(n), neel_ensemble(h, n, 2.0), opt);
  for (double lambda : {0.5, 2.0}) {
    const auto hs = h.scaled(lambda);
    const auto g = estimate_gamma(Bipartition::half(n), neel_ensemble(hs, n, 2.0 / lambda), opt);
    EXPECT_NEAR(g.gamma, base.gamma, 1e-6 * base.gamma) << lambda;
  }
  GammaOptions opt2 = opt;
  opt2.evolve.hbar = 2.0;
  const auto g2 = estimate_gamma(Bipartition::half(n), neel_ensemble(h, n, 4.0), opt2);
  EXPECT_NEAR(g2.gamma, base.gamma, 1e-6 * base.gamma);
  EXPECT_GT(base.gamma, 0.0);
}

TEST(Entropy, CentralDifferences) {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{0.0, 1.0, 4.0, 9.0};
  const auto d = central_differences(t, y);
  EXPECT_DOUBLE_EQ(d[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1], 2.0);
  EXPECT_DOUBLE_EQ(d[2], 4.0);
  EXPECT_DOUBLE_EQ(d[3], 5.0);
}

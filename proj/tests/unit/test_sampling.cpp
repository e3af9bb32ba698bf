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
#include <numeric>
#include <sstream>

#include "eeperf/circuits.hpp"
#include "eeperf/complexity.hpp"
#include "eeperf/entanglement.hpp"
#include "eeperf/error.hpp"
#include "eeperf/sampling.hpp"

using namespace eeperf;

namespace {

StateVector bell() {
  Circuit c(2);
  c.add_layer({Gate("H", {0}, gates::h())});
  c.add_layer({Gate("CNOT", {0, 1}, gates::cnot())});
  return apply_circuit(c, StateVector::zero(2));
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST(Empirical, SmoothingFormula) {
  const EmpiricalDistribution d({3.0, 1.0, 0.0, 0.0}, 0.5);
  EXPECT_DOUBLE_EQ(d.total_shots(), 4.0);
  EXPECT_NEAR(d.probabilities()[0], 3.5 / 6.0, 1e-15);
  EXPECT_NEAR(d.probabilities()[2], 0.5 / 6.0, 1e-15);
  for (double alpha : {0.0, 0.5, 1.0, 7.0}) EXPECT_NEAR(sum(EmpiricalDistribution({5, 0, 2}, alpha).probabilities()), 1.0, 1e-12);
  EXPECT_THROW(EmpiricalDistribution({1.0, -1.0}), Error);
  EXPECT_THROW(EmpiricalDistribution({0.0, 0.0}, 0.0), Error);
}

TEST(Sampling, Examples) {
  const auto zero = sample_bitstrings(StateVector::zero(3), 1000, 1, 0.0);
  EXPECT_EQ(zero.counts()[0], 1000.0);
  const auto plus = sample_bitstrings(StateVector::product("++"), 100000, 2, 0.0);
  for (double p : plus.probabilities()) EXPECT_NEAR(p, 0.25, 0.01);
  const auto ghz = sample_bitstrings(ghz_state(5), 20000, 3, 0.0);
  for (std::size_t i = 1; i + 1 < ghz.m_out(); ++i) EXPECT_EQ(ghz.counts()[i], 0.0);
  EXPECT_NEAR(ghz.probabilities().front(), 0.5, 0.02);
  EXPECT_NEAR(ghz.probabilities().back(), 0.5, 0.02);
}

TEST(Sampling, RestrictedReadout) {
  const auto out = sample_outcomes(StateVector::product("0101"), 50, 4, {1, 3});
  for (auto x : out) EXPECT_EQ(x, 3u);
}

TEST(Shadows, DirectZReducesToBitstrings) {
  const auto psi = StateVector::random(4, 9);
  const auto data = sample_shadows(psi, 3000, 77, ShadowProtocol::direct_z);
  const auto raw = sample_bitstrings(psi, 3000, 77);
  const auto rec = reconstruct_distribution(data);
  EXPECT_EQ(rec.counts(), raw.counts());
  EXPECT_EQ(rec.probabilities(), raw.probabilities());
}

TEST(Shadows, Determinism) {
  const auto psi = StateVector::random(3, 5);
  EXPECT_EQ(sample_shadows(psi, 500, 42), sample_shadows(psi, 500, 42));
  EXPECT_FALSE(sample_shadows(psi, 500, 42) == sample_shadows(psi, 500, 43));
}

TEST(Shadows, CliffordGroupIsClosedAndDistinct) {
  const auto& g = clifford_group();
  ASSERT_EQ(g.size(), 24u);
  EXPECT_LT((g[0] - CMatrix::Identity(2, 2)).norm(), 1e-12);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      EXPECT_LT(std::abs((g[i].adjoint() * g[j]).trace()), 2.0 - 1e-9) << i << "," << j;
}

TEST(Shadows, SingleQubitZExpectation) {
  const auto data = sample_shadows(StateVector::zero(1), 30000, 11);
  const double z = shadow_expectation(data, PauliString({0}, "Z", 1.0));
  // Per-shot variance of the inverted Z estimator is 3 - <Z>^2 = 2.
  EXPECT_NEAR(z, 1.0, 3.0 * std::sqrt(2.0 / 30000.0));
  const auto plus = sample_shadows(StateVector::product("+r"), 30000, 12);
  EXPECT_NEAR(shadow_expectation(plus, PauliString({0}, "X", 1.0)), 1.0, 0.05);
  EXPECT_NEAR(shadow_expectation(plus, PauliString({1}, "Y", 1.0)), 1.0, 0.05);
  EXPECT_NEAR(shadow_expectation(plus, PauliString({0, 1}, "XY", 1.0)), 1.0, 0.1);
}

TEST(Shadows, ReconstructionOfZeroState) {
  const std::size_t shots = 20000;
  const auto rec = reconstruct_distribution(sample_shadows(StateVector::zero(2), shots, 13), 10, 0.0);
  // P(00) estimator is a product of two (1 + z)/2 terms with per-shot std below 2.
  EXPECT_NEAR(rec.probabilities()[0], 1.0, 3.0 * 2.0 / std::sqrt(shots));
  for (double p : rec.probabilities()) EXPECT_GE(p, 0.0);
  EXPECT_NEAR(sum(rec.probabilities()), 1.0, 1e-12);
}

TEST(Shadows, ClippingKeepsValidDistribution) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rec = reconstruct_distribution(sample_shadows(StateVector::random(3, s), 200, s), 5);
    for (double p : rec.probabilities()) EXPECT_GE(p, 0.0);
    EXPECT_NEAR(sum(rec.probabilities()), 1.0, 1e-12);
  }
}

TEST(Shadows, BinaryRoundTrip) {
  const auto data = sample_shadows(StateVector::random(5, 3), 300, 21);
  std::stringstream ss;
  write_shadow_dataset(ss, data);
  EXPECT_EQ(read_shadow_dataset(ss), data);
  std::stringstream bad("NOTSHDW1");
  EXPECT_THROW(read_shadow_dataset(bad), Error);
}

TEST(Budgets, PurityShots) {
  EXPECT_EQ(required_shots_purity(10, 0.05), 409600u);
  EXPECT_EQ(required_shots_purity(4, 0.1), 1600u);
  EXPECT_EQ(required_shots_purity(6, 1.0), 64u);
  EXPECT_THROW(required_shots_purity(3, 0.0), Error);
}

TEST(Budgets, DistributionShots) {
  EXPECT_EQ(required_shots_distribution(1024, 0.1, 0.05), 1433u);
  EXPECT_EQ(required_shots_distribution(1024, 0.1, 1.0), 1000u);
  const auto a = required_shots_distribution(256, 0.1, 0.05);
  const auto b = required_shots_distribution(256, 0.2, 0.05);
  EXPECT_NEAR(static_cast<double>(a) / static_cast<double>(b), 4.0, 0.01);
}

TEST(Purity, BellHalfAndProductSubsystem) {
  const auto bell_est = estimate_purity_randomized(bell(), Bipartition({0}, 2), 10000, 1, 3);
  EXPECT_NEAR(bell_est.value, 0.5, std::max(2.0 * bell_est.std_error, 0.02));
  const auto prod = estimate_purity_randomized(StateVector::product("0+1"), Bipartition({0, 1}, 3), 4000, 1, 4);
  EXPECT_NEAR(prod.value, 1.0, 2.0 * prod.std_error + 1e-12);
}

TEST(Purity, UnbiasedOnRandomStates) {
  const auto psi = StateVector::random(4, 71);
  const Bipartition part({0, 1}, 4);
  const double exact = entanglement_entropies(psi, part).purity;
  double mean = 0.0, var = 0.0;
  const int runs = 50;
  std::vector<double> v;
  for (int r = 0; r < runs; ++r) v.push_back(estimate_purity_randomized(psi, part, 200, 1, 1000 + r).value);
  for (double x : v) mean += x / runs;
  for (double x : v) var += (x - mean) * (x - mean) / (runs - 1);
  EXPECT_NEAR(mean, exact, 3.0 * std::sqrt(var / runs));
}

TEST(Purity, ErrorScalesAsInverseRootShots) {
  const auto psi = StateVector::random(3, 8);
  const Bipartition part({0}, 3);
  const double exact = entanglement_entropies(psi, part).purity;
  std::vector<double> xs, ys;
  for (std::size_t shots : {200u, 400u, 800u, 1600u, 3200u}) {
    double mse = 0.0;
    const int reps = 60;
    for (int r = 0; r < reps; ++r) {
      const double e = estimate_purity_randomized(psi, part, shots, 1, 77 * shots + r).value - exact;
      mse += e * e / reps;
    }
    xs.push_back(std::log(static_cast<double>(shots)));
    ys.push_back(0.5 * std::log(mse));
  }
  const double mx = sum(xs) / xs.size(), my = sum(ys) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -0.5, 0.1);
}

TEST(Purity, BudgetEnforcement) {
  PurityOptions opt;
  opt.epsilon = 0.1;
  opt.enforce_budget = true;
  try {
    (void)estimate_purity_randomized(bell(), Bipartition({0}, 2), 10, 1, 1, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::budget);
  }
}

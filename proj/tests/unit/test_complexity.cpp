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

#include "eeperf/complexity.hpp"
#include "eeperf/entanglement.hpp"
#include "eeperf/error.hpp"
#include "eeperf/rng.hpp"
#include "eeperf/sampling.hpp"

using namespace eeperf;

TEST(KL, Examples) {
  EXPECT_NEAR(kl_to_uniform(EmpiricalDistribution::exact({0.25, 0.25, 0.25, 0.25})), 0.0, 1e-15);
  EXPECT_NEAR(kl_to_uniform(EmpiricalDistribution({10.0, 0, 0, 0, 0, 0, 0, 0}, 0.0)), 3.0, 1e-15);
  EXPECT_NEAR(kl_to_uniform(EmpiricalDistribution::exact({0.75, 0.25})), 0.188721875540867, 1e-12);
}

TEST(KKL, ExamplesAndIdentity) {
  EXPECT_NEAR(k_kl(EmpiricalDistribution::exact({0.25, 0.25, 0.25, 0.25})).k_kl, 2.0, 1e-15);
  EXPECT_NEAR(k_kl(EmpiricalDistribution({7.0, 0.0}, 0.0)).k_kl, 0.0, 1e-15);
  const auto e = k_kl(EmpiricalDistribution::exact({0.5, 0.5, 0.0, 0.0}));
  EXPECT_NEAR(e.k_kl, 1.0, 1e-15);
  EXPECT_NEAR(e.k_kl, e.shannon_bits, 1e-10);
  EXPECT_NEAR(e.k_kl, std::log2(4.0) - e.d_kl_to_uniform, 1e-12);
  EXPECT_EQ(e.m_out, 4u);
}

TEST(KKL, RangeOnRandomDistributions) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + rng.below(300);
    std::vector<double> counts(m);
    for (auto& c : counts) c = rng.uniform() < 0.3 ? 0.0 : std::floor(rng.uniform() * 50);
    counts[0] += 1;
    const auto est = k_kl(EmpiricalDistribution(counts, trial % 2 ? 0.5 : 0.0));
    EXPECT_GE(est.k_kl, -1e-12);
    EXPECT_LE(est.k_kl, std::log2(static_cast<double>(m)) + 1e-12);
    EXPECT_NEAR(est.k_kl, est.shannon_bits, 1e-10);
  }
}

TEST(ErrorBound, Examples) {
  EXPECT_NEAR(statistical_error_bound(1024, 0.01), 0.01 * std::log2(102400.0), 1e-15);
  EXPECT_NEAR(statistical_error_bound(1024, 0.01), 0.16644, 1e-5);
  EXPECT_LT(statistical_error_bound(1024, 1e-12), 1e-10);
  EXPECT_LT(statistical_error_bound(16, 0.1), statistical_error_bound(32, 0.1));
  const auto est = k_kl(EmpiricalDistribution::exact({0.5, 0.5}), 0.05, 0.1);
  EXPECT_NEAR(est.f_epsilon, statistical_error_bound(2, 0.05), 1e-15);
  EXPECT_NEAR(est.confidence, 0.9, 1e-15);
}

TEST(LowerBound, Examples) {
  CalibrationFit fit;
  fit.c_g = 0.5;
  fit.k_m = 3.0;
  ComplexityEstimate est;
  est.k_kl = 3.0;
  EXPECT_EQ(c_opt_lower_bound(est, fit, 0.0).slack_free, 0.0);
  EXPECT_EQ(c_opt_lower_bound(est, fit).with_slack, 0.0);
  est.k_kl = 23.0;
  EXPECT_NEAR(c_opt_lower_bound(est, fit, 0.0).with_slack, 10.0, 1e-12);
  EXPECT_NEAR(c_opt_lower_bound(est, fit, 1.0).with_slack, 10.0 - std::log2(23.0), 1e-12);
  double prev = 1e300;
  for (double f : {0.0, 0.5, 1.0, 2.0}) {
    est.f_epsilon = f;
    const double b = c_opt_lower_bound(est, fit, 0.0).slack_free;
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(Calibration, ExactLineRecovery) {
  std::vector<std::pair<double, double>> pts;
  for (double k = 4; k <= 13; ++k) pts.emplace_back(0.5 * (k - 3.0), k);
  const auto fit = calibrate(pts);
  EXPECT_NEAR(fit.c_g, 0.5, 1e-12);
  EXPECT_NEAR(fit.k_m, 3.0, 1e-10);
  EXPECT_LT(fit.residual_rms, 1e-10);
  const auto two = calibrate({{1.0, 5.0}, {2.0, 9.0}});
  EXPECT_NEAR(two.c_g, 0.25, 1e-15);
  EXPECT_LT(two.residual_rms, 1e-12);
}

TEST(Calibration, Errors) {
  auto code = [](const std::vector<std::pair<double, double>>& p) {
    try {
      (void)calibrate(p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io;
  };
  EXPECT_EQ(code({{1.0, 2.0}}), ErrorCode::insufficient_data);
  EXPECT_EQ(code({{1.0, 2.0}, {2.0, 2.0}}), ErrorCode::singular_fit);
  EXPECT_EQ(code({{2.0, 1.0}, {1.0, 2.0}}), ErrorCode::calibration_failure);
}

TEST(Calibration, GhzExactPointsAreDegenerate) {
  std::vector<std::pair<double, double>> pts;
  for (int n : {2, 4, 8}) {
    const auto b = ghz_benchmark(n);
    pts.emplace_back(b.c_opt, k_kl(EmpiricalDistribution::exact(ghz_state(n).probabilities())).k_kl);
  }
  EXPECT_THROW(calibrate(pts), Error);
}

TEST(Calibration, GhzSampledPointsGivePositiveSlope) {
  std::vector<std::pair<double, double>> pts;
  for (int n : {2, 4, 8}) {
    const auto b = ghz_benchmark(n);
    const auto dist = sample_bitstrings(ghz_state(n), required_shots_distribution(std::uint64_t{1} << n, 0.05, 0.05), 5 + n);
    pts.emplace_back(b.c_opt, k_kl(dist).k_kl);
  }
  EXPECT_GT(calibrate(pts).c_g, 0.0);
}

TEST(Ghz, BenchmarkCircuits) {
  const auto two = ghz_benchmark(2);
  EXPECT_EQ(two.circuit.depth(), 2u);
  EXPECT_DOUBLE_EQ(two.c_opt, 2.0);
  const auto eight = ghz_benchmark(8);
  EXPECT_EQ(eight.circuit.depth(), 4u);
  EXPECT_DOUBLE_EQ(eight.c_opt, 4.0);
  EXPECT_GE(apply_circuit(eight.circuit, StateVector::zero(8)).fidelity(ghz_state(8)), 1.0 - 1e-10);
  EXPECT_THROW(ghz_benchmark(6), Error);
  EXPECT_THROW(ghz_benchmark(1), Error);
  const auto s = entanglement_entropies(ghz_state(8), Bipartition::half(8));
  EXPECT_NEAR(s.s2_bits, 1.0, 1e-10);
}

TEST(Ghz, SampledComplexityNearOneBit) {
  const double eps = 0.05, delta = 0.05;
  const auto shots = required_shots_distribution(256, eps, delta);
  const auto est = k_kl(sample_bitstrings(ghz_state(8), shots, 99), eps, delta);
  EXPECT_NEAR(est.k_kl, 1.0, est.f_epsilon);
}

TEST(Randomness, Examples) {
  const std::vector<std::uint8_t> zeros(10000, 0);
  const auto z = randomness_screen(zeros);
  EXPECT_LT(z.p_monobit, 1e-6);
  EXPECT_FALSE(z.monobit_pass);
  std::vector<std::uint8_t> alt(10000);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
  const auto a = randomness_screen(alt);
  EXPECT_TRUE(a.monobit_pass);
  EXPECT_FALSE(a.runs_pass);
  EXPECT_THROW(randomness_screen(std::vector<std::uint8_t>(99, 1)), Error);
  int passes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(12345, trial);
    std::vector<std::uint8_t> bits(100000);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    const auto r = randomness_screen(bits);
    for (double p : {r.p_monobit, r.p_block_frequency, r.p_runs}) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
    passes += r.all_pass();
  }
  EXPECT_GE(passes, 95);
}

TEST(Randomness, MonobitClosedForm) {
  const std::string s = "1001101011";
  std::vector<std::uint8_t> bits;
  for (int rep = 0; rep < 10; ++rep)
    for (char c : s) bits.push_back(c == '1');
  const auto r = randomness_screen(bits);
  EXPECT_NEAR(r.p_monobit, std::erfc(std::abs(20.0) / std::sqrt(100.0) / std::sqrt(2.0)), 1e-12);
}

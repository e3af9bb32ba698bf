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

#include "eeperf/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "eeperf/error.hpp"

namespace eeperf {

double kl_to_uniform(const EmpiricalDistribution& p) {
  const double m = static_cast<double>(p.m_out());
  require(m > 0, ErrorCode::invalid_argument, "m_out must be positive");
  double d = 0.0;
  for (double x : p.probabilities())
    if (x > 0.0) d += x * std::log2(x * m);
  return d;
}

double shannon_entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

ComplexityEstimate k_kl(const EmpiricalDistribution& p, double epsilon, double delta) {
  ComplexityEstimate e;
  e.m_out = p.m_out();
  const double log_m = std::log2(static_cast<double>(e.m_out));
  e.d_kl_to_uniform = kl_to_uniform(p);
  e.k_kl = log_m - e.d_kl_to_uniform;
  e.shannon_bits = shannon_entropy_bits(p.probabilities());
  require(std::abs(e.k_kl - e.shannon_bits) < 1e-10, ErrorCode::numerical_consistency,
          "K_KL disagrees with the Shannon entropy");
  require(e.k_kl >= -1e-12 && e.k_kl <= log_m + 1e-12, ErrorCode::numerical_consistency,
          "K_KL outside [0, log2 M_out]");
  e.k_kl = std::clamp(e.k_kl, 0.0, log_m);
  e.epsilon = epsilon;
  e.f_epsilon = statistical_error_bound(e.m_out, epsilon);
  e.confidence = 1.0 - delta;
  return e;
}

double statistical_error_bound(std::size_t m_out, double epsilon) {
  require(epsilon >= 0.0 && epsilon <= 1.0, ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
  require(m_out >= 1, ErrorCode::invalid_argument, "m_out must be positive");
  if (epsilon == 0.0) return 0.0;
  return epsilon * std::log2(static_cast<double>(m_out) / epsilon);
}

CalibrationFit calibrate(const std::vector<std::pair<double, double>>& points) {
  require(points.size() >= 2, ErrorCode::insufficient_data, "calibration needs at least two points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (auto [c, k] : points) {
    mx += k;
    my += c;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (auto [c, k] : points) {
    sxx += (k - mx) * (k - mx);
    sxy += (k - mx) * (c - my);
    syy += (c - my) * (c - my);
  }
  require(sxx > 1e-12 * std::max(1.0, mx * mx) * n, ErrorCode::singular_fit,
          "calibration abscissas (K_KL) are degenerate");
  CalibrationFit fit;
  fit.points = points;
  fit.c_g = sxy / sxx;
  fit.intercept = my - fit.c_g * mx;
  require(fit.c_g > 0.0, ErrorCode::calibration_failure, "calibration slope is not positive");
  fit.k_m = -fit.intercept / fit.c_g;
  double sse = 0.0;
  for (auto [c, k] : points) {
    const double r = c - (fit.intercept + fit.c_g * k);
    sse += r * r;
  }
  fit.residual_rms = std::sqrt(sse / n);
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

ComplexityBound c_opt_lower_bound(const ComplexityEstimate& est, const CalibrationFit& fit, double log_slack) {
  const double core = fit.c_g * (est.k_kl - fit.k_m - est.f_epsilon);
  const double slack = log_slack * std::log2(std::max(2.0, est.k_kl));
  return {std::max(0.0, core), std::max(0.0, core - slack)};
}

StateVector ghz_state(int n) {
  CVector a = CVector::Zero(Eigen::Index{1} << n);
  a[0] = a[a.size() - 1] = 1.0 / std::numbers::sqrt2;
  return StateVector(n, std::move(a));
}

GhzBenchmark ghz_benchmark(int n) {
  require(n >= 2 && std::has_single_bit(static_cast<unsigned>(n)), ErrorCode::unsupported_size,
          "GHZ benchmark requires n to be a power of two");
  Circuit c(n);
  c.add_layer({Gate("H", {0}, gates::h())});
  for (int span = 1; span < n; span *= 2) {
    std::vector<Gate> layer;
    for (int i = 0; i < span; ++i) layer.emplace_back("CNOT", std::vector<int>{i, i + span}, gates::cnot());
    c.add_layer(std::move(layer));
  }
  const double fid = apply_circuit(c, StateVector::zero(n)).fidelity(ghz_state(n));
  require(fid >= 1.0 - 1e-10, ErrorCode::numerical_consistency, "GHZ circuit does not prepare GHZ");
  return {static_cast<double>(c.depth()), std::move(c)};
}

RandomnessReport randomness_screen(const std::vector<std::uint8_t>& bits, double alpha_sig) {
  const std::size_t n = bits.size();
  require(n >= 100, ErrorCode::insufficient_data, "randomness screen needs at least 100 bits");
  require(alpha_sig > 0.0 && alpha_sig < 1.0, ErrorCode::invalid_argument, "significance level must lie in (0, 1)");
  RandomnessReport r;
  r.n_bits = n;
  r.alpha_sig = alpha_sig;
  const double nd = static_cast<double>(n);

  std::size_t ones = 0;
  for (auto b : bits) ones += b ? 1 : 0;
  const double s = 2.0 * static_cast<double>(ones) - nd;
  r.p_monobit = std::erfc(std::abs(s) / std::sqrt(nd) / std::numbers::sqrt2);

  const std::size_t m = std::min<std::size_t>(128, n / 10);
  const std::size_t blocks = n / m;
  double chi2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) k += bits[b * m + i] ? 1 : 0;
    const double pi = static_cast<double>(k) / static_cast<double>(m) - 0.5;
    chi2 += pi * pi;
  }
  chi2 *= 4.0 * static_cast<double>(m);
  r.block_length = m;
  r.p_block_frequency = boost::math::gamma_q(static_cast<double>(blocks) / 2.0, chi2 / 2.0);

  const double pi = static_cast<double>(ones) / nd;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(nd)) {
    r.p_runs = 0.0;
  } else {
    std::size_t runs = 1;
    for (std::size_t i = 1; i < n; ++i) runs += (bits[i] != 0) != (bits[i - 1] != 0) ? 1 : 0;
    const double v = static_cast<double>(runs);
    r.p_runs = std::erfc(std::abs(v - 2.0 * nd * pi * (1.0 - pi)) / (2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi)));
  }
  r.monobit_pass = r.p_monobit >= alpha_sig;
  r.block_frequency_pass = r.p_block_frequency >= alpha_sig;
  r.runs_pass = r.p_runs >= alpha_sig;
  return r;
}

std::vector<std::uint8_t> outcomes_to_bits(const std::vector<std::uint64_t>& outcomes, int bits_per_outcome) {
  require(bits_per_outcome >= 1 && bits_per_outcome <= 64, ErrorCode::invalid_argument, "invalid bit width");
  std::vector<std::uint8_t> bits;
  bits.reserve(outcomes.size() * static_cast<std::size_t>(bits_per_outcome));
  for (auto x : outcomes)
    for (int j = 0; j < bits_per_outcome; ++j) bits.push_back(static_cast<std::uint8_t>((x >> j) & 1));
  return bits;
}

}  // namespace eeperf

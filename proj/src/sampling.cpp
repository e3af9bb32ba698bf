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

#include "eeperf/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "eeperf/error.hpp"
#include "eeperf/rng.hpp"

namespace eeperf {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> counts, double alpha)
    : counts_(std::move(counts)), alpha_(alpha) {
  require(!counts_.empty(), ErrorCode::invalid_argument, "distribution needs at least one outcome");
  require(alpha_ >= 0.0 && std::isfinite(alpha_), ErrorCode::invalid_argument, "alpha must be non-negative");
  total_ = 0.0;
  for (double c : counts_) {
    require(c >= 0.0 && std::isfinite(c), ErrorCode::invalid_argument, "counts must be non-negative");
    total_ += c;
  }
  const double denom = total_ + static_cast<double>(counts_.size()) * alpha_;
  require(denom > 0.0, ErrorCode::insufficient_data, "distribution has no shots and no smoothing");
  p_.resize(counts_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) p_[i] = (counts_[i] + alpha_) / denom;
}

EmpiricalDistribution EmpiricalDistribution::exact(const std::vector<double>& probabilities) {
  return EmpiricalDistribution(probabilities, 0.0);
}

namespace {

std::uint64_t draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), std::ssize(cdf) - 1));
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  return cdf;
}

std::uint64_t gather(std::uint64_t x, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) out |= ((x >> qubits[j]) & 1) << j;
  return out;
}

void check_readout(const StateVector& state, const std::vector<int>& qubits) {
  for (int q : qubits)
    require(q >= 0 && q < state.n_qubits(), ErrorCode::invalid_argument, "readout qubit out of range");
}

}  // namespace

std::vector<std::uint64_t> sample_outcomes(const StateVector& state, std::size_t n_shots, std::uint64_t seed,
                                           const std::vector<int>& qubits) {
  require(n_shots >= 1, ErrorCode::invalid_argument, "at least one shot is required");
  check_readout(state, qubits);
  const auto cdf = cumulative(state.probabilities());
  std::vector<std::uint64_t> out(n_shots);
  for (std::size_t i = 0; i < n_shots; ++i) {
    Rng rng(seed, i);
    const std::uint64_t x = draw(cdf, rng.uniform());
    out[i] = qubits.empty() ? x : gather(x, qubits);
  }
  return out;
}

EmpiricalDistribution sample_bitstrings(const StateVector& state, std::size_t n_shots, std::uint64_t seed,
                                        double alpha, const std::vector<int>& qubits) {
  const std::size_t m = std::size_t{1} << (qubits.empty() ? state.n_qubits() : static_cast<int>(qubits.size()));
  std::vector<double> counts(m, 0.0);
  for (auto x : sample_outcomes(state, n_shots, seed, qubits)) counts[x] += 1.0;
  return EmpiricalDistribution(std::move(counts), alpha);
}

const std::vector<CMatrix>& clifford_group() {
  static const std::vector<CMatrix> group = [] {
    auto canonical = [](CMatrix m) {
      for (Eigen::Index i = 0; i < m.size(); ++i)
        if (std::abs(m(i)) > 1e-6) return CMatrix(m * std::polar(1.0, -std::arg(m(i))));
      return m;
    };
    CMatrix h(2, 2), s(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    s << 1, 0, 0, kI;
    std::vector<CMatrix> g{CMatrix::Identity(2, 2)};
    for (std::size_t k = 0; k < g.size(); ++k)
      for (const CMatrix* gen : {&h, &s}) {
        const CMatrix c = canonical(*gen * g[k]);
        const bool seen = std::any_of(g.begin(), g.end(), [&](const CMatrix& e) { return (e - c).norm() < 1e-9; });
        if (!seen) g.push_back(c);
      }
    require(g.size() == 24, ErrorCode::numerical_consistency, "Clifford closure did not give 24 elements");
    return g;
  }();
  return group;
}

std::string to_string(ShadowProtocol p) { return p == ShadowProtocol::direct_z ? "direct-z" : "local-clifford"; }

ShadowProtocol shadow_protocol_from_string(const std::string& s) {
  if (s == "direct-z") return ShadowProtocol::direct_z;
  if (s == "local-clifford") return ShadowProtocol::local_clifford;
  fail(ErrorCode::config, "unknown shadow protocol '" + s + "'");
}

ShadowDataset sample_shadows(const StateVector& state, std::size_t n_shots, std::uint64_t seed,
                             ShadowProtocol protocol) {
  require(n_shots >= 1, ErrorCode::invalid_argument, "at least one shot is required");
  const int n = state.n_qubits();
  ShadowDataset data{protocol, seed, n, {}};
  data.snapshots.reserve(n_shots);
  const auto& cliffords = clifford_group();
  const auto direct_cdf = cumulative(state.probabilities());
  for (std::size_t i = 0; i < n_shots; ++i) {
    Rng rng(seed, i);
    Snapshot snap{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), 0};
    if (protocol == ShadowProtocol::direct_z) {
      snap.outcome = draw(direct_cdf, rng.uniform());
    } else {
      CVector amps = state.amplitudes();
      for (int q = 0; q < n; ++q) {
        snap.labels[q] = static_cast<std::uint8_t>(rng.below(24));
        const int qs[1] = {q};
        apply_local(amps, n, cliffords[snap.labels[q]], qs);
      }
      std::vector<double> p(amps.size());
      for (Eigen::Index x = 0; x < amps.size(); ++x) p[x] = std::norm(amps[x]);
      snap.outcome = draw(cumulative(p), rng.uniform());
    }
    data.snapshots.push_back(std::move(snap));
  }
  return data;
}

namespace {

// Median over batches of the batch means of per-snapshot estimates.
template <class PerSnapshot>
std::vector<double> median_of_means(const ShadowDataset& shadows, int batches, std::size_t width, PerSnapshot f) {
  const std::size_t n = shadows.snapshots.size();
  require(batches >= 1, ErrorCode::invalid_argument, "median-of-means needs at least one batch");
  require(static_cast<std::size_t>(batches) <= n, ErrorCode::invalid_argument, "more batches than shots");
  std::vector<std::vector<double>> means(static_cast<std::size_t>(batches), std::vector<double>(width, 0.0));
  std::vector<double> scratch(width);
  for (int b = 0; b < batches; ++b) {
    const std::size_t lo = n * b / batches, hi = n * (b + 1) / batches;
    for (std::size_t s = lo; s < hi; ++s) {
      f(shadows.snapshots[s], scratch);
      for (std::size_t k = 0; k < width; ++k) means[b][k] += scratch[k];
    }
    for (auto& m : means[b]) m /= static_cast<double>(hi - lo);
  }
  std::vector<double> out(width), column(static_cast<std::size_t>(batches));
  for (std::size_t k = 0; k < width; ++k) {
    for (int b = 0; b < batches; ++b) column[b] = means[b][k];
    std::sort(column.begin(), column.end());
    const std::size_t mid = column.size() / 2;
    out[k] = column.size() % 2 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
  }
  return out;
}

}  // namespace

EmpiricalDistribution reconstruct_distribution(const ShadowDataset& shadows, int batches, double alpha) {
  const int n = shadows.n_qubits;
  require(n >= 1 && n <= 12, ErrorCode::unsupported_size, "distribution reconstruction is limited to 12 qubits");
  const std::size_t m = std::size_t{1} << n;
  const double shots = static_cast<double>(shadows.snapshots.size());
  require(batches >= 1, ErrorCode::invalid_argument, "median-of-means needs at least one batch");
  require(static_cast<std::size_t>(batches) <= shadows.snapshots.size(), ErrorCode::invalid_argument,
          "more batches than shots");
  if (shadows.protocol == ShadowProtocol::direct_z) {
    std::vector<double> counts(m, 0.0);
    for (const auto& s : shadows.snapshots) counts[s.outcome] += 1.0;
    return EmpiricalDistribution(std::move(counts), alpha);
  }
  const auto& cliffords = clifford_group();
  auto estimate = [&](const Snapshot& snap, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 1.0);
    std::size_t stride = 1;
    for (int q = 0; q < n; ++q) {
      const CMatrix& u = cliffords[snap.labels[q]];
      const Eigen::Index b = static_cast<Eigen::Index>((snap.outcome >> q) & 1);
      const double f0 = 3.0 * std::norm(u(b, 0)) - 1.0;
      const double f1 = 3.0 * std::norm(u(b, 1)) - 1.0;
      for (std::size_t x = 0; x < m; ++x) out[x] *= (x & stride) ? f1 : f0;
      stride <<= 1;
    }
  };
  std::vector<double> p = median_of_means(shadows, batches, m, estimate);
  for (double& v : p) v = std::max(0.0, v);
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  require(sum > 0.0, ErrorCode::insufficient_data, "reconstructed distribution is identically zero");
  for (double& v : p) v = v / sum * shots;
  return EmpiricalDistribution(std::move(p), alpha);
}

double shadow_expectation(const ShadowDataset& shadows, const PauliString& pauli, int batches) {
  for (int q : pauli.sites())
    require(q < shadows.n_qubits, ErrorCode::invalid_argument, "Pauli string outside the dataset qubits");
  const auto& cliffords = clifford_group();
  std::vector<CMatrix> paulis;
  for (Pauli p : pauli.letters()) paulis.push_back(pauli_matrix(p));
  auto estimate = [&](const Snapshot& snap, std::vector<double>& out) {
    double v = 1.0;
    for (std::size_t k = 0; k < paulis.size(); ++k) {
      const int q = pauli.sites()[k];
      const CMatrix& u = cliffords[snap.labels[q]];
      const Eigen::Index b = static_cast<Eigen::Index>((snap.outcome >> q) & 1);
      const cplx e = (u * paulis[k] * u.adjoint())(b, b);
      v *= 3.0 * e.real();
    }
    out[0] = v;
  };
  if (shadows.protocol == ShadowProtocol::direct_z)
    for (Pauli p : pauli.letters())
      require(p == Pauli::Z, ErrorCode::invalid_argument, "direct-Z data only estimates Z strings");
  if (shadows.protocol == ShadowProtocol::direct_z) {
    auto z_estimate = [&](const Snapshot& snap, std::vector<double>& out) {
      int parity = 0;
      for (int q : pauli.sites()) parity ^= static_cast<int>((snap.outcome >> q) & 1);
      out[0] = parity ? -1.0 : 1.0;
    };
    return median_of_means(shadows, batches, 1, z_estimate)[0];
  }
  return median_of_means(shadows, batches, 1, estimate)[0];
}

namespace {

constexpr char kMagic[8] = {'E', 'E', 'P', 'S', 'H', 'D', 'W', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  require(static_cast<bool>(in), ErrorCode::io, "truncated shadow dataset");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

}  // namespace

void write_shadow_dataset(std::ostream& out, const ShadowDataset& data) {
  out.write(kMagic, sizeof kMagic);
  out.put(static_cast<char>(data.protocol));
  put_u64(out, data.master_seed);
  put_u64(out, static_cast<std::uint64_t>(data.n_qubits));
  put_u64(out, data.snapshots.size());
  for (const auto& s : data.snapshots) {
    out.write(reinterpret_cast<const char*>(s.labels.data()), static_cast<std::streamsize>(s.labels.size()));
    put_u64(out, s.outcome);
  }
  require(static_cast<bool>(out), ErrorCode::io, "failed to write shadow dataset");
}

ShadowDataset read_shadow_dataset(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  require(in && std::equal(magic, magic + 8, kMagic), ErrorCode::io, "not a shadow dataset file");
  const int proto = in.get();
  require(proto == 0 || proto == 1, ErrorCode::io, "unknown shadow protocol tag");
  ShadowDataset d;
  d.protocol = static_cast<ShadowProtocol>(proto);
  d.master_seed = get_u64(in);
  const auto n = get_u64(in);
  require(n >= 1 && n <= 64, ErrorCode::io, "invalid qubit count in shadow dataset");
  d.n_qubits = static_cast<int>(n);
  const auto shots = get_u64(in);
  d.snapshots.reserve(shots);
  for (std::uint64_t i = 0; i < shots; ++i) {
    Snapshot s{std::vector<std::uint8_t>(n), 0};
    in.read(reinterpret_cast<char*>(s.labels.data()), static_cast<std::streamsize>(n));
    s.outcome = get_u64(in);
    for (auto l : s.labels) require(l < 24, ErrorCode::io, "Clifford label out of range");
    d.snapshots.push_back(std::move(s));
  }
  return d;
}

namespace {

// Ceiling that ignores the last few ulps of round-off in x.
std::uint64_t guarded_ceil(double x) { return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-12))); }

}  // namespace

std::uint64_t required_shots_purity(int a_size, double epsilon) {
  require(a_size >= 1 && a_size <= 60, ErrorCode::invalid_argument, "subsystem size out of range");
  require(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::invalid_argument, "epsilon must lie in (0, 1]");
  return guarded_ceil(std::ldexp(1.0, a_size) / (epsilon * epsilon));
}

std::uint64_t required_shots_distribution(std::uint64_t m_out, double epsilon, double delta, double c) {
  require(m_out >= 1, ErrorCode::invalid_argument, "m_out must be positive");
  require(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::invalid_argument, "epsilon must lie in (0, 1]");
  require(delta > 0.0 && delta <= 1.0, ErrorCode::invalid_argument, "delta must lie in (0, 1]");
  require(c > 0.0, ErrorCode::invalid_argument, "budget constant must be positive");
  return guarded_ceil(c / (epsilon * epsilon) * (std::log2(static_cast<double>(m_out)) + std::log2(1.0 / delta)));
}

PurityEstimate estimate_purity_randomized(const StateVector& state, const Bipartition& part,
                                          std::size_t n_unitaries, std::size_t shots_per_unitary,
                                          std::uint64_t seed, const PurityOptions& options) {
  require(state.n_qubits() == part.n_qubits(), ErrorCode::dimension_mismatch,
          "state and bipartition qubit counts differ");
  require(part.size_a() <= 10, ErrorCode::unsupported_size, "randomized purity is limited to |A| <= 10");
  require(n_unitaries >= 1 && shots_per_unitary >= 1, ErrorCode::invalid_argument, "zero shots requested");
  const std::uint64_t total = static_cast<std::uint64_t>(n_unitaries) * shots_per_unitary;
  if (options.enforce_budget && options.epsilon > 0.0) {
    const auto need = required_shots_purity(part.size_a(), options.epsilon);
    require(total >= need, ErrorCode::budget,
            std::to_string(total) + " shots are below the budget of " + std::to_string(need));
  }
  const auto& a = part.subsystem_a();
  const int n = state.n_qubits();
  const std::size_t ma = std::size_t{1} << a.size();
  const double scale = static_cast<double>(ma);
  const auto& cliffords = clifford_group();
  double sum = 0.0, sum_sq = 0.0;
  std::vector<double> marginal(ma);
  for (std::size_t u = 0; u < n_unitaries; ++u) {
    Rng rng(seed, u);
    CVector amps = state.amplitudes();
    for (int q : a) {
      const int qs[1] = {q};
      apply_local(amps, n, cliffords[rng.below(24)], qs);
    }
    std::fill(marginal.begin(), marginal.end(), 0.0);
    for (Eigen::Index x = 0; x < amps.size(); ++x)
      marginal[gather(static_cast<std::uint64_t>(x), a)] += std::norm(amps[x]);
    const auto cdf = cumulative(marginal);
    for (std::size_t k = 0; k < shots_per_unitary; ++k) {
      const auto s = draw(cdf, rng.uniform());
      const auto t = draw(cdf, rng.uniform());
      const int d = std::popcount(s ^ t);
      const double x = scale * std::pow(-2.0, -d);
      sum += x;
      sum_sq += x * x;
    }
  }
  const double nshots = static_cast<double>(total);
  PurityEstimate est;
  est.value = sum / nshots;
  est.shots_used = total;
  est.epsilon_target = options.epsilon;
  if (total > 1) {
    const double var = std::max(0.0, (sum_sq - nshots * est.value * est.value) / (nshots - 1.0));
    est.std_error = std::sqrt(var / nshots);
  }
  return est;
}

}  // namespace eeperf

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

#include "eeperf/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "eeperf/error.hpp"

namespace eeperf {

namespace {

constexpr int kMaxSubsystem = 12;

// Amplitudes arranged as a 2^|A| x 2^|B| matrix.
CMatrix bipartite_matrix(const StateVector& state, const Bipartition& part) {
  require(state.n_qubits() == part.n_qubits(), ErrorCode::dimension_mismatch,
          "state and bipartition qubit counts differ");
  const auto a = part.subsystem_a();
  const auto b = part.subsystem_b();
  CMatrix m(Eigen::Index{1} << a.size(), Eigen::Index{1} << b.size());
  for (std::uint64_t x = 0; x < state.dim(); ++x) {
    std::uint64_t ia = 0, ib = 0;
    for (std::size_t j = 0; j < a.size(); ++j) ia |= ((x >> a[j]) & 1) << j;
    for (std::size_t j = 0; j < b.size(); ++j) ib |= ((x >> b[j]) & 1) << j;
    m(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)) = state[x];
  }
  return m;
}

double entropy_bits(const RVector& eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > 0.0) s -= l * std::log2(l);
  return std::max(0.0, s);
}

}  // namespace

Bipartition::Bipartition(std::vector<int> subsystem_a, int n_qubits, const Geometry& geometry)
    : a_(std::move(subsystem_a)), n_(n_qubits), boundary_(0) {
  std::sort(a_.begin(), a_.end());
  require(!a_.empty(), ErrorCode::invalid_argument, "subsystem A is empty");
  require(std::adjacent_find(a_.begin(), a_.end()) == a_.end(), ErrorCode::invalid_argument,
          "subsystem A has repeated qubits");
  require(a_.front() >= 0 && a_.back() < n_, ErrorCode::invalid_argument, "subsystem A qubit out of range");
  require(static_cast<int>(a_.size()) < n_, ErrorCode::invalid_argument, "subsystem A must be a proper subset");
  for (auto [p, q] : geometry.edges(n_)) {
    const bool in_p = std::binary_search(a_.begin(), a_.end(), p);
    const bool in_q = std::binary_search(a_.begin(), a_.end(), q);
    if (in_p != in_q) ++boundary_;
  }
}

Bipartition Bipartition::half(int n_qubits, const Geometry& geometry) {
  std::vector<int> a;
  for (int q = 0; q < n_qubits / 2; ++q) a.push_back(q);
  return Bipartition(std::move(a), n_qubits, geometry);
}

std::vector<int> Bipartition::subsystem_b() const {
  std::vector<int> b;
  for (int q = 0; q < n_; ++q)
    if (!std::binary_search(a_.begin(), a_.end(), q)) b.push_back(q);
  return b;
}

CMatrix reduced_density(const StateVector& state, const Bipartition& part) {
  require(part.size_a() <= kMaxSubsystem, ErrorCode::unsupported_size,
          "subsystem of " + std::to_string(part.size_a()) + " qubits is too large");
  const CMatrix m = bipartite_matrix(state, part);
  return m * m.adjoint();
}

double purity(const CMatrix& rho) { return (rho * rho).trace().real(); }

double renyi2(const CMatrix& rho) { return -std::log2(purity(rho)); }

double von_neumann(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues());
}

Entropies entanglement_entropies(const StateVector& state, const Bipartition& part) {
  const CMatrix m = bipartite_matrix(state, part);
  const CMatrix g = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  const double p = g.squaredNorm();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  return {p, std::max(0.0, -std::log2(p)), entropy_bits(es.eigenvalues())};
}

Trajectory evolve_with_entropy(const LocalHamiltonian& h, const StateVector& psi0, double delta_t,
                               const Bipartition& part, EvolveOptions options) {
  std::vector<double> s2, svn;
  auto user = options.observer;
  options.observer = [&](std::size_t i, double t, const StateVector& s) {
    const auto e = entanglement_entropies(s, part);
    s2.push_back(e.s2_bits);
    svn.push_back(e.s_vn_bits);
    if (user) user(i, t, s);
  };
  Trajectory tr = evolve(h, psi0, delta_t, options);
  tr.s2_bits = std::move(s2);
  tr.s_vn_bits = std::move(svn);
  return tr;
}

std::vector<double> central_differences(const std::vector<double>& t, const std::vector<double>& y) {
  require(t.size() == y.size() && t.size() >= 2, ErrorCode::invalid_argument,
          "differences need at least two matching samples");
  const std::size_t n = t.size();
  std::vector<double> d(n);
  d[0] = (y[1] - y[0]) / (t[1] - t[0]);
  d[n - 1] = (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
  return d;
}

double peak_growth_rate(const std::vector<double>& t, const std::vector<double>& s, double horizon) {
  const auto rate = central_differences(t, s);
  double peak = 0.0;
  for (std::size_t i = 0; i < rate.size(); ++i) {
    if (t[i] > horizon * (1.0 + 1e-12)) break;
    peak = std::max(peak, rate[i]);
    // Mean-value bound: the true peak is at least the average rate since t = 0.
    if (t[i] > t.front()) peak = std::max(peak, (s[i] - s.front()) / (t[i] - t.front()));
  }
  return peak;
}

std::string to_string(EntropyMeasure m) { return m == EntropyMeasure::renyi2 ? "renyi2" : "von-neumann"; }
std::string to_string(RateWindow w) { return w == RateWindow::early ? "early" : "full"; }

GammaEstimate estimate_gamma(const Bipartition& part, const std::vector<Quench>& ensemble,
                             const GammaOptions& options) {
  require(!ensemble.empty(), ErrorCode::invalid_argument, "gamma ensemble is empty");
  const double hbar = options.evolve.hbar;
  GammaEstimate est;
  est.boundary_bonds = part.boundary_bonds();
  est.ensemble_size = static_cast<int>(ensemble.size());
  est.measure = options.measure;
  est.window = options.window;
  for (const auto& q : ensemble) {
    const auto s0 = entanglement_entropies(q.initial, part);
    require(s0.s_vn_bits < 1e-10, ErrorCode::invalid_argument,
            "quench '" + q.label + "' does not start from a product state across the cut");
    const double j = options.shared_j > 0.0 ? options.shared_j : interaction_bound(q.hamiltonian).value();
    require(j > 0.0, ErrorCode::trivial_dynamics, "quench '" + q.label + "' has J = 0");
    const Trajectory tr = evolve_with_entropy(q.hamiltonian, q.initial, q.delta_t, part, options.evolve);
    const auto& s = options.measure == EntropyMeasure::renyi2 ? tr.s2_bits : tr.s_vn_bits;
    const double horizon = options.window == RateWindow::early
                               ? std::min(0.25 * part.size_a() * hbar / j, q.delta_t)
                               : q.delta_t;
    const double peak = peak_growth_rate(tr.times, s, horizon);
    est.max_rate_observed = std::max(est.max_rate_observed, peak);
    est.gamma = std::max(est.gamma, peak * hbar / j);
  }
  // Rates at round-off level come from product states that never entangle.
  require(est.gamma > 1e-10, ErrorCode::trivial_dynamics, "no entanglement growth observed in the ensemble");
  require(est.boundary_bonds > 0, ErrorCode::invalid_argument, "bipartition has no boundary bonds");
  est.c_constant = est.gamma / est.boundary_bonds;
  return est;
}

}  // namespace eeperf

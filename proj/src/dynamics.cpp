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

#include "eeperf/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "eeperf/error.hpp"

namespace eeperf {

double Trajectory::certified_depth() const {
  const double sum = std::accumulate(interval_angles.begin(), interval_angles.end(), 0.0);
  return 2.0 / std::numbers::pi * sum;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  require(t.size() == y.size() && t.size() >= 2, ErrorCode::invalid_argument,
          "trapezoid needs at least two matching samples");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) acc += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
  return acc;
}

Quantity sigma_avail(Trajectory& traj) {
  const auto& t = traj.times;
  require(t.size() >= 2 && traj.dh.size() == t.size(), ErrorCode::invalid_argument,
          "trajectory needs at least two samples");
  const double span = t.back() - t.front();
  require(span > 0.0, ErrorCode::degenerate_interval, "evolution interval has zero length");
  const auto& left = traj.dh_left.size() == t.size() ? traj.dh_left : traj.dh;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) acc += 0.5 * (t[i + 1] - t[i]) * (traj.dh[i] + left[i + 1]);
  traj.sigma_avail = energy(acc / span);
  traj.delta_t = duration(span);
  return traj.sigma_avail;
}

namespace {

std::vector<double> build_grid(const std::vector<double>& edges, const EvolveOptions& opt) {
  std::vector<double> grid;
  const double total = edges.back();
  if (opt.grid_points > 0) {
    require(opt.grid_points >= 2, ErrorCode::invalid_argument, "grid needs at least two points");
    const double tol = 1e-12 * total;
    std::size_t e = 1;
    grid.push_back(0.0);
    for (int i = 1; i < opt.grid_points; ++i) {
      const double t = i + 1 == opt.grid_points ? total : total * i / (opt.grid_points - 1);
      while (e + 1 < edges.size() && edges[e] <= t + tol) {
        if (edges[e] > grid.back() + tol) grid.push_back(edges[e]);
        ++e;
      }
      if (t > grid.back() + tol) grid.push_back(t);
    }
    grid.back() = total;
    return grid;
  }
  require(opt.points_per_interval >= 2, ErrorCode::invalid_argument,
          "at least two points per interval are required");
  grid.push_back(0.0);
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double a = edges[j], b = edges[j + 1];
    const int steps = opt.points_per_interval - 1;
    for (int k = 1; k <= steps; ++k) grid.push_back(k == steps ? b : a + (b - a) * k / steps);
  }
  return grid;
}

// Propagator for one constant interval. The Hamiltonian splits into blocks on
// disjoint qubit sets; each block is diagonalized densely.
class BlockPropagator {
 public:
  BlockPropagator(const PauliSum& h, double hbar) : n_(h.n_qubits), hbar_(hbar) {
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int q) {
      while (parent[q] != q) q = parent[q] = parent[parent[q]];
      return q;
    };
    for (const auto& e : h.entries) {
      const std::uint64_t m = e.flip | e.sign_mask;
      if (m == 0) {
        shift_ += e.weight.real();
        continue;
      }
      const int first = std::countr_zero(m);
      for (int q = 0; q < n_; ++q)
        if (m >> q & 1) parent[find(q)] = find(first);
    }
    std::vector<int> block_of(static_cast<std::size_t>(n_), -1);
    std::vector<bool> active(static_cast<std::size_t>(n_), false);
    for (const auto& e : h.entries)
      for (int q = 0; q < n_; ++q)
        if ((e.flip | e.sign_mask) >> q & 1) active[q] = true;
    for (int q = 0; q < n_; ++q) {
      if (!active[q]) continue;
      const int r = find(q);
      if (block_of[r] < 0) {
        block_of[r] = static_cast<int>(blocks_.size());
        blocks_.emplace_back();
      }
      blocks_[block_of[r]].qubits.push_back(q);
    }
    for (auto& b : blocks_) {
      const int k = static_cast<int>(b.qubits.size());
      largest_ = std::max(largest_, k);
      PauliSum local;
      local.n_qubits = k;
      for (const auto& e : h.entries) {
        const std::uint64_t m = e.flip | e.sign_mask;
        if (m == 0 || !belongs(m, b.qubits)) continue;
        local.entries.push_back({remap(e.flip, b.qubits), remap(e.sign_mask, b.qubits), e.weight});
      }
      b.local = std::move(local);
    }
  }

  int largest_block() const { return largest_; }

  void diagonalize() {
    for (auto& b : blocks_) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(b.local.dense());
      require(es.info() == Eigen::Success, ErrorCode::numerical_consistency, "eigendecomposition failed");
      b.energies = es.eigenvalues();
      b.vectors = es.eigenvectors();
    }
  }

  // Moves psi_a into the product eigenbasis of all blocks.
  CVector to_eigenbasis(const CVector& psi) const {
    CVector c = psi;
    for (const auto& b : blocks_) apply_local(c, n_, b.vectors.adjoint(), b.qubits);
    return c;
  }

  CVector at(const CVector& coeffs, double tau) const {
    CVector psi(coeffs.size());
    const double s = tau / hbar_;
    const std::uint64_t dim = static_cast<std::uint64_t>(coeffs.size());
    for (std::uint64_t x = 0; x < dim; ++x) {
      double e = shift_;
      for (const auto& b : blocks_) {
        std::uint64_t l = 0;
        for (std::size_t j = 0; j < b.qubits.size(); ++j) l |= ((x >> b.qubits[j]) & 1) << j;
        e += b.energies[static_cast<Eigen::Index>(l)];
      }
      psi[static_cast<Eigen::Index>(x)] = std::polar(1.0, -e * s) * coeffs[static_cast<Eigen::Index>(x)];
    }
    for (const auto& b : blocks_) apply_local(psi, n_, b.vectors, b.qubits);
    return psi;
  }

 private:
  struct Block {
    std::vector<int> qubits;
    PauliSum local;
    RVector energies;
    CMatrix vectors;
  };

  static bool belongs(std::uint64_t m, const std::vector<int>& qubits) {
    for (int q : qubits)
      if (m >> q & 1) return true;
    return false;
  }

  static std::uint64_t remap(std::uint64_t m, const std::vector<int>& qubits) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) out |= ((m >> qubits[j]) & 1) << j;
    return out;
  }

  int n_;
  double hbar_;
  double shift_ = 0.0;
  int largest_ = 0;
  std::vector<Block> blocks_;
};

// exp(-i H tau / hbar) v by Chebyshev expansion with Bessel coefficients.
CVector chebyshev_step(const PauliSum& h, const CVector& v, double tau, double hbar) {
  double center = 0.0, half = 0.0;
  for (const auto& e : h.entries) {
    if ((e.flip | e.sign_mask) == 0)
      center += e.weight.real();
    else
      half += std::abs(e.weight);
  }
  const cplx global = std::polar(1.0, -center * tau / hbar);
  if (half == 0.0) return global * v;
  const double x = half * tau / hbar;
  auto scaled_apply = [&](const CVector& in, CVector& out) {
    h.apply(in, out);
    out = (out - center * in) / half;
  };
  CVector prev = v, cur, next;
  scaled_apply(prev, cur);
  CVector acc = std::cyl_bessel_j(0.0, x) * prev + 2.0 * (-kI) * std::cyl_bessel_j(1.0, x) * cur;
  cplx phase = -kI;
  for (int k = 2;; ++k) {
    scaled_apply(cur, next);
    next = 2.0 * next - prev;
    phase *= -kI;
    const double jk = std::cyl_bessel_j(static_cast<double>(k), x);
    acc += 2.0 * phase * jk * next;
    if (k > x && std::abs(jk) < 1e-17) break;
    require(k < 100000, ErrorCode::numerical_consistency, "Chebyshev expansion did not converge");
    prev.swap(cur);
    cur.swap(next);
  }
  return global * acc;
}

}  // namespace

Trajectory evolve(const LocalHamiltonian& h, const StateVector& psi0, double delta_t, const EvolveOptions& opt) {
  require(h.n_qubits() == psi0.n_qubits(), ErrorCode::dimension_mismatch,
          "state and Hamiltonian qubit counts differ");
  require(h.n_qubits() <= opt.max_qubits, ErrorCode::capacity,
          std::to_string(h.n_qubits()) + " qubits exceed the simulation cap of " + std::to_string(opt.max_qubits));
  require(std::isfinite(delta_t) && delta_t > 0.0, ErrorCode::degenerate_interval, "evolution time must be positive");
  require(opt.hbar > 0.0, ErrorCode::invalid_argument, "hbar must be positive");

  std::vector<double> edges{0.0};
  for (double b : h.breakpoints(delta_t)) edges.push_back(b);
  edges.push_back(delta_t);
  const std::vector<double> grid = build_grid(edges, opt);

  Trajectory tr;
  tr.hbar = opt.hbar;
  tr.times = grid;
  tr.dh.resize(grid.size());
  tr.dh_left.resize(grid.size());
  tr.energy_mean.resize(grid.size());

  StateVector psi = psi0;
  std::size_t k = 0;
  auto emit = [&](std::size_t idx, const StateVector& s) {
    if (opt.keep_states) tr.states.push_back(s);
    if (opt.observer) opt.observer(idx, grid[idx], s);
  };

  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double a = edges[j], b = edges[j + 1];
    const PauliSum hj = compile(h, 0.5 * (a + b));
    BlockPropagator blocks(hj, opt.hbar);
    const bool dense = blocks.largest_block() <= opt.dense_max_qubits;
    CVector coeffs;
    if (dense) {
      blocks.diagonalize();
      coeffs = blocks.to_eigenbasis(psi.amplitudes());
    }
    const CVector start = psi.amplitudes();
    CVector cur = start;
    double t_prev = a;
    // Grid point k sits at a; the interval owns points up to the one at b.
    std::size_t first = k;
    while (true) {
      const double t = grid[k];
      if (k != first) {
        cur = dense ? blocks.at(coeffs, t - a) : chebyshev_step(hj, cur, t - t_prev, opt.hbar);
        tr.max_norm_drift = std::max(tr.max_norm_drift, std::abs(cur.norm() - 1.0));
        cur /= cur.norm();
      }
      t_prev = t;
      const auto m = energy_moments(hj, cur);
      const double mean = m.mean.value();
      const double dh = std::sqrt(std::max(0.0, m.second_moment.value() - mean * mean));
      tr.dh[k] = dh;
      tr.energy_mean[k] = mean;
      if (k != first || j == 0) {
        tr.dh_left[k] = dh;
        psi = StateVector(h.n_qubits(), cur);
        emit(k, psi);
      }
      if (grid[k] >= b || k + 1 == grid.size()) break;
      ++k;
    }
    psi = StateVector(h.n_qubits(), cur);
    tr.interval_starts.push_back(a);
    tr.interval_angles.push_back(std::acos(std::min(1.0, std::abs(start.dot(cur)))));
  }
  // The final point keeps the left limit as its value.
  tr.dh.back() = tr.dh_left.back();
  tr.final_state = psi;
  sigma_avail(tr);
  return tr;
}

CMatrix gate_generator(const CMatrix& unitary, double gate_time, double hbar) {
  require(gate_time > 0.0, ErrorCode::invalid_argument, "gate time must be positive");
  const Eigen::Index d = unitary.rows();
  require(unitary.cols() == d, ErrorCode::dimension_mismatch, "gate matrix must be square");
  require((unitary.adjoint() * unitary - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10,
          ErrorCode::invalid_argument, "gate matrix is not unitary");
  const cplx det = unitary.determinant();
  const CMatrix u = unitary * std::polar(1.0, -std::arg(det) / static_cast<double>(d));
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  RVector theta(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    theta[i] = std::arg(t(i, i));
    require(std::abs(theta[i]) <= std::numbers::pi - 1e-10, ErrorCode::ambiguous_generator,
            "gate eigenvalue lies on the logarithm branch cut; perturb the gate");
  }
  return -(hbar / gate_time) * q * theta.cast<cplx>().asDiagonal() * q.adjoint();
}

std::vector<PauliString> pauli_decompose(const CMatrix& m, const std::vector<int>& support, double cutoff) {
  const int k = static_cast<int>(support.size());
  const Eigen::Index d = Eigen::Index{1} << k;
  require(m.rows() == d && m.cols() == d, ErrorCode::dimension_mismatch, "matrix does not match support size");
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * k);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<int> sites;
    std::vector<Pauli> letters;
    for (int j = 0; j < k; ++j) {
      const int p = static_cast<int>((code >> (2 * j)) & 3);
      if (p == 0) continue;
      sites.push_back(support[j]);
      letters.push_back(static_cast<Pauli>(p - 1));
    }
    const PauliString unit(sites, letters, 1.0);
    const cplx c = (unit.matrix_on(support) * m).trace() / static_cast<double>(d);
    if (std::abs(c.real()) > cutoff) out.emplace_back(sites, letters, c.real());
  }
  return out;
}

LocalHamiltonian circuit_to_schedule(const Circuit& circuit, double gate_time, double hbar) {
  require(gate_time > 0.0, ErrorCode::invalid_argument, "gate time must be positive");
  std::vector<LocalTerm> terms;
  const auto& layers = circuit.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const double a = static_cast<double>(l) * gate_time;
    const double b = static_cast<double>(l + 1) * gate_time;
    const Schedule window = l == 0 ? Schedule({0.0, b}, {1.0, 0.0}) : Schedule({0.0, a, b}, {0.0, 1.0, 0.0});
    for (const auto& g : layers[l]) {
      const CMatrix gen = gate_generator(g.unitary, gate_time, hbar);
      auto strings = pauli_decompose(gen, g.qubits);
      if (strings.empty()) continue;
      std::vector<int> support = g.qubits;
      std::sort(support.begin(), support.end());
      terms.push_back(LocalTerm{support, std::move(strings), window});
    }
  }
  return LocalHamiltonian(circuit.n_qubits(), std::move(terms));
}

}  // namespace eeperf

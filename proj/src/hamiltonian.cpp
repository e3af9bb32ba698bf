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

#include "eeperf/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

#include "eeperf/error.hpp"

namespace eeperf {

namespace {

constexpr int kMaxDenseSupport = 12;

cplx i_power(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

char to_char(Pauli p) { return "XYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: fail(ErrorCode::invalid_argument, std::string("unknown Pauli letter '") + c + "'");
  }
}

CMatrix pauli_matrix(Pauli p) {
  CMatrix m(2, 2);
  switch (p) {
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliString::PauliString(std::vector<int> sites, std::vector<Pauli> letters, double coefficient)
    : coefficient_(coefficient) {
  require(sites.size() == letters.size(), ErrorCode::invalid_argument,
          "Pauli string needs one letter per site");
  require(std::isfinite(coefficient), ErrorCode::invalid_argument, "Pauli coefficient must be finite");
  std::vector<std::size_t> order(sites.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sites[a] < sites[b]; });
  for (auto i : order) {
    require(sites[i] >= 0, ErrorCode::invalid_argument, "negative qubit index");
    require(sites_.empty() || sites_.back() != sites[i], ErrorCode::invalid_argument,
            "Pauli string sites must be distinct");
    sites_.push_back(sites[i]);
    letters_.push_back(letters[i]);
  }
}

PauliString::PauliString(std::vector<int> sites, const std::string& letters, double coefficient)
    : PauliString(std::move(sites), [&] {
        std::vector<Pauli> out;
        for (char c : letters) out.push_back(pauli_from_char(c));
        return out;
      }(), coefficient) {}

std::string PauliString::label() const {
  if (sites_.empty()) return "I";
  std::string s;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    s += to_char(letters_[i]);
    s += std::to_string(sites_[i]);
  }
  return s;
}

CMatrix PauliString::matrix_on(const std::vector<int>& support) const {
  const int k = static_cast<int>(support.size());
  // Build through the mask representation to share conventions with PauliSum.
  std::uint64_t flip = 0, sign = 0;
  int ny = 0;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const auto it = std::find(support.begin(), support.end(), sites_[i]);
    require(it != support.end(), ErrorCode::invalid_argument, "Pauli string site outside term support");
    const auto bit = std::uint64_t{1} << (it - support.begin());
    if (letters_[i] != Pauli::Z) flip |= bit;
    if (letters_[i] != Pauli::X) sign |= bit;
    if (letters_[i] == Pauli::Y) ++ny;
  }
  const Eigen::Index d = Eigen::Index{1} << k;
  CMatrix m = CMatrix::Zero(d, d);
  const cplx w = coefficient_ * i_power(ny);
  for (Eigen::Index x = 0; x < d; ++x) {
    const double s = (std::popcount(static_cast<std::uint64_t>(x) & sign) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(static_cast<std::uint64_t>(x) ^ flip), x) += w * s;
  }
  return m;
}

Schedule::Schedule(std::vector<double> starts, std::vector<double> values)
    : starts_(std::move(starts)), values_(std::move(values)) {
  require(!starts_.empty() && starts_.size() == values_.size(), ErrorCode::config,
          "schedule needs one value per breakpoint");
  require(starts_.front() == 0.0, ErrorCode::config, "schedule must start at t = 0");
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    require(std::isfinite(starts_[i]) && std::isfinite(values_[i]), ErrorCode::config,
            "schedule entries must be finite");
    require(i == 0 || starts_[i] > starts_[i - 1], ErrorCode::config,
            "schedule breakpoints must be strictly increasing");
  }
}

double Schedule::at(double t) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  const auto idx = it == starts_.begin() ? 0 : (it - starts_.begin()) - 1;
  return values_[static_cast<std::size_t>(idx)];
}

std::vector<double> Schedule::values_until(double horizon) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < starts_.size(); ++i)
    if (i == 0 || starts_[i] < horizon) out.push_back(values_[i]);
  return out;
}

LocalTerm LocalTerm::from_strings(std::vector<PauliString> strings, Schedule schedule) {
  std::set<int> sup;
  for (const auto& s : strings) sup.insert(s.sites().begin(), s.sites().end());
  return {std::vector<int>(sup.begin(), sup.end()), std::move(strings), std::move(schedule)};
}

CMatrix LocalTerm::static_matrix() const {
  const Eigen::Index d = Eigen::Index{1} << support.size();
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& s : strings) m += s.matrix_on(support);
  return m;
}

std::vector<std::pair<int, int>> Geometry::edges(int n) const {
  std::vector<std::pair<int, int>> e;
  switch (kind) {
    case Kind::open_chain:
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      break;
    case Kind::ring:
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      if (n > 2) e.emplace_back(0, n - 1);
      break;
    case Kind::grid:
      require(rows > 0 && cols > 0 && rows * cols == n, ErrorCode::config,
              "grid dimensions do not match the qubit count");
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          const int q = r * cols + c;
          if (c + 1 < cols) e.emplace_back(q, q + 1);
          if (r + 1 < rows) e.emplace_back(q, q + cols);
        }
      break;
  }
  return e;
}

std::string Geometry::name() const {
  switch (kind) {
    case Kind::open_chain: return "open-chain";
    case Kind::ring: return "ring";
    case Kind::grid: return "grid(" + std::to_string(rows) + "," + std::to_string(cols) + ")";
  }
  return "unknown";
}

LocalHamiltonian::LocalHamiltonian(int n_qubits, std::vector<LocalTerm> terms, Geometry geometry)
    : n_(n_qubits), terms_(std::move(terms)), geometry_(geometry) {
  require(n_ >= 1, ErrorCode::invalid_argument, "Hamiltonian needs at least one qubit");
  if (geometry_.kind == Geometry::Kind::grid) geometry_.edges(n_);
  for (auto& term : terms_) {
    std::sort(term.support.begin(), term.support.end());
    require(std::adjacent_find(term.support.begin(), term.support.end()) == term.support.end(),
            ErrorCode::config, "term support has repeated sites");
    for (int q : term.support)
      require(q >= 0 && q < n_, ErrorCode::config, "term support outside [0, n_qubits)");
    for (const auto& s : term.strings)
      for (int q : s.sites())
        require(std::binary_search(term.support.begin(), term.support.end(), q), ErrorCode::config,
                "Pauli string " + s.label() + " leaves its term support");
    if (static_cast<int>(term.support.size()) <= kMaxDenseSupport) {
      const CMatrix m = term.static_matrix();
      require((m - m.adjoint()).norm() <= 1e-12 * std::max(1.0, m.norm()), ErrorCode::numerical_consistency,
              "term is not Hermitian");
    }
  }
}

std::vector<double> LocalHamiltonian::breakpoints(double horizon) const {
  std::set<double> b;
  for (const auto& term : terms_)
    for (double s : term.schedule.starts())
      if (s > 0.0 && s < horizon) b.insert(s);
  return {b.begin(), b.end()};
}

LocalHamiltonian LocalHamiltonian::scaled(double factor) const {
  auto terms = terms_;
  for (auto& term : terms)
    for (auto& s : term.strings) s = PauliString(s.sites(), s.letters(), s.coefficient() * factor);
  return LocalHamiltonian(n_, std::move(terms), geometry_);
}

void PauliSum::apply(const CVector& in, CVector& out) const {
  out.setZero(in.size());
  const std::uint64_t dim = static_cast<std::uint64_t>(in.size());
  for (const auto& e : entries) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      const cplx a = in[static_cast<Eigen::Index>(x)];
      const cplx w = (std::popcount(x & e.sign_mask) & 1) ? -e.weight : e.weight;
      out[static_cast<Eigen::Index>(x ^ e.flip)] += w * a;
    }
  }
}

CMatrix PauliSum::dense() const {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& e : entries)
    for (Eigen::Index x = 0; x < d; ++x) {
      const auto ux = static_cast<std::uint64_t>(x);
      m(static_cast<Eigen::Index>(ux ^ e.flip), x) += (std::popcount(ux & e.sign_mask) & 1) ? -e.weight : e.weight;
    }
  return m;
}

PauliSum compile(const LocalHamiltonian& h, double t) {
  PauliSum sum;
  sum.n_qubits = h.n_qubits();
  for (const auto& term : h.terms()) {
    const double v = term.schedule.at(t);
    if (v == 0.0) continue;
    for (const auto& s : term.strings) {
      if (s.coefficient() == 0.0) continue;
      PauliSum::Entry e{0, 0, {}};
      int ny = 0;
      for (std::size_t i = 0; i < s.sites().size(); ++i) {
        const auto bit = std::uint64_t{1} << s.sites()[i];
        const Pauli p = s.letters()[i];
        if (p != Pauli::Z) e.flip |= bit;
        if (p != Pauli::X) e.sign_mask |= bit;
        if (p == Pauli::Y) ++ny;
      }
      e.weight = v * s.coefficient() * i_power(ny);
      // Merge strings that share masks so repeated declarations cost nothing.
      auto it = std::find_if(sum.entries.begin(), sum.entries.end(), [&](const auto& o) {
        return o.flip == e.flip && o.sign_mask == e.sign_mask;
      });
      if (it != sum.entries.end())
        it->weight += e.weight;
      else
        sum.entries.push_back(e);
    }
  }
  std::erase_if(sum.entries, [](const auto& e) { return e.weight == cplx{}; });
  return sum;
}

namespace {

double static_norm(const LocalTerm& term) {
  require(static_cast<int>(term.support.size()) <= kMaxDenseSupport, ErrorCode::unsupported_size,
          "term support of " + std::to_string(term.support.size()) + " sites exceeds dense limit");
  if (term.strings.empty()) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(term.static_matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

Quantity term_norm(const LocalTerm& term, double t) {
  return energy(std::abs(term.schedule.at(t)) * static_norm(term));
}

Quantity interaction_bound(const LocalHamiltonian& h) {
  double j = 0.0;
  for (const auto& term : h.terms()) {
    const double base = static_norm(term);
    for (double v : term.schedule.values()) j = std::max(j, std::abs(v) * base);
  }
  return energy(j);
}

CVector apply_hamiltonian(const LocalHamiltonian& h, double t, const StateVector& state) {
  require(state.n_qubits() == h.n_qubits(), ErrorCode::dimension_mismatch,
          "state and Hamiltonian qubit counts differ");
  CVector out;
  compile(h, t).apply(state.amplitudes(), out);
  return out;
}

EnergyMoments energy_moments(const PauliSum& h, const CVector& state) {
  require(state.size() == (Eigen::Index{1} << h.n_qubits), ErrorCode::dimension_mismatch,
          "state and Hamiltonian dimensions differ");
  CVector hpsi;
  h.apply(state, hpsi);
  const cplx mean = state.dot(hpsi);
  require(std::abs(mean.imag()) <= 1e-8, ErrorCode::numerical_consistency,
          "energy expectation has an imaginary part");
  return {energy(mean.real()), {hpsi.squaredNorm(), dims::energy_squared}};
}

EnergyMoments energy_moments(const LocalHamiltonian& h, double t, const StateVector& state) {
  require(state.n_qubits() == h.n_qubits(), ErrorCode::dimension_mismatch,
          "state and Hamiltonian qubit counts differ");
  return energy_moments(compile(h, t), state.amplitudes());
}

double energy_std(const PauliSum& h, const CVector& state) {
  const auto m = energy_moments(h, state);
  const double mean = m.mean.value();
  return std::sqrt(std::max(0.0, m.second_moment.value() - mean * mean));
}

Quantity energy_std(const LocalHamiltonian& h, double t, const StateVector& state) {
  require(state.n_qubits() == h.n_qubits(), ErrorCode::dimension_mismatch,
          "state and Hamiltonian qubit counts differ");
  return energy(energy_std(compile(h, t), state.amplitudes()));
}

CMatrix dense_matrix(const LocalHamiltonian& h, double t) { return compile(h, t).dense(); }

namespace models {

LocalHamiltonian heisenberg(int n, double coupling, Geometry geometry) {
  std::vector<LocalTerm> terms;
  for (auto [a, b] : geometry.edges(n)) {
    std::vector<PauliString> s;
    for (const char* l : {"XX", "YY", "ZZ"}) s.emplace_back(std::vector<int>{a, b}, l, coupling);
    terms.push_back(LocalTerm::from_strings(std::move(s)));
  }
  return LocalHamiltonian(n, std::move(terms), geometry);
}

LocalHamiltonian ising(int n, double coupling, double field, Geometry geometry) {
  std::vector<LocalTerm> terms;
  for (auto [a, b] : geometry.edges(n))
    terms.push_back(LocalTerm::from_strings({PauliString({a, b}, "ZZ", coupling)}));
  if (field != 0.0)
    for (int q = 0; q < n; ++q) terms.push_back(LocalTerm::from_strings({PauliString({q}, "X", field)}));
  return LocalHamiltonian(n, std::move(terms), geometry);
}

LocalHamiltonian rabi(double omega) {
  return LocalHamiltonian(1, {LocalTerm::from_strings({PauliString({0}, "X", omega / 2.0)})});
}

}  // namespace models

}  // namespace eeperf

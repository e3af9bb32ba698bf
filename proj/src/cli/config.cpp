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

#include "eeperf/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "eeperf/complexity.hpp"
#include "eeperf/error.hpp"
#include "eeperf/rng.hpp"

namespace eeperf::cli {

namespace {

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  return m.is_null() ? std::string("config: ") : "line " + std::to_string(m.line + 1) + ": ";
}

[[noreturn]] void bad(const YAML::Node& n, const std::string& msg) { fail(ErrorCode::config, where(n) + msg); }

template <class T>
T as(const YAML::Node& n, const std::string& what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    bad(n, "'" + what + "' has the wrong type");
  }
}

template <class T>
T get(const YAML::Node& parent, const char* key, T fallback) {
  const YAML::Node n = parent[key];
  return n ? as<T>(n, key) : fallback;
}

template <class T>
std::optional<T> maybe(const YAML::Node& parent, const char* key) {
  const YAML::Node n = parent[key];
  if (!n) return std::nullopt;
  return as<T>(n, key);
}

YAML::Node need(const YAML::Node& parent, const char* key) {
  const YAML::Node n = parent[key];
  if (!n) bad(parent, std::string("missing required key '") + key + "'");
  return n;
}

void allow_keys(const YAML::Node& block, std::initializer_list<const char*> keys) {
  if (!block.IsMap()) bad(block, "expected a mapping");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& kv : block) {
    const auto k = kv.first.as<std::string>();
    if (!ok.count(k)) bad(kv.first, "unknown key '" + k + "'");
  }
}

// Re-anchors errors raised by the core library at the node being parsed.
template <class F>
auto anchored(const YAML::Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config && std::string(e.what()).find("line ") != std::string::npos) throw;
    if (e.code() == ErrorCode::capacity || e.code() == ErrorCode::unsupported_size) throw;
    bad(n, e.what());
  }
}

std::uint64_t derive(std::uint64_t master, std::uint64_t tag) { return mix64(master ^ mix64(tag + 0x51ed)); }

Geometry parse_geometry(const YAML::Node& sys) {
  const auto name = get<std::string>(sys, "geometry", "open-chain");
  if (name == "open-chain") return Geometry::chain();
  if (name == "ring") return Geometry::make_ring();
  if (name == "grid") {
    const auto g = need(sys, "grid");
    const auto rc = as<std::vector<int>>(g, "grid");
    if (rc.size() != 2) bad(g, "grid must be [rows, cols]");
    return Geometry::make_grid(rc[0], rc[1]);
  }
  bad(sys["geometry"], "unknown geometry '" + name + "'");
}

Schedule parse_schedule(const YAML::Node& n) {
  if (!n) return {};
  allow_keys(n, {"starts", "values"});
  return anchored(n, [&] {
    return Schedule(as<std::vector<double>>(need(n, "starts"), "starts"), as<std::vector<double>>(need(n, "values"), "values"));
  });
}

LocalTerm parse_term(const YAML::Node& n) {
  allow_keys(n, {"support", "strings", "schedule"});
  std::vector<PauliString> strings;
  for (const auto& s : need(n, "strings")) {
    allow_keys(s, {"sites", "letters", "coefficient"});
    strings.push_back(anchored(s, [&] {
      return PauliString(get<std::vector<int>>(s, "sites", {}), get<std::string>(s, "letters", ""),
                         as<double>(need(s, "coefficient"), "coefficient"));
    }));
  }
  auto term = LocalTerm::from_strings(std::move(strings), parse_schedule(n["schedule"]));
  if (n["support"]) {
    auto sup = as<std::vector<int>>(n["support"], "support");
    const std::set<int> declared(sup.begin(), sup.end());
    for (int q : term.support)
      if (!declared.count(q)) bad(n["support"], "string site " + std::to_string(q) + " outside declared support");
    term.support.assign(declared.begin(), declared.end());
  }
  return term;
}

LocalHamiltonian parse_system(const YAML::Node& sys, int n, const Geometry& geometry) {
  std::vector<LocalTerm> terms;
  if (const auto model = sys["model"]) {
    allow_keys(model, {"type", "coupling", "field", "omega"});
    const auto type = as<std::string>(need(model, "type"), "type");
    const auto built = anchored(model, [&]() -> std::optional<LocalHamiltonian> {
      if (type == "heisenberg") return models::heisenberg(n, get<double>(model, "coupling", 1.0), geometry);
      if (type == "ising")
        return models::ising(n, get<double>(model, "coupling", 1.0), get<double>(model, "field", 0.0), geometry);
      if (type == "rabi") {
        if (n != 1) bad(model, "the rabi model needs n = 1");
        return models::rabi(get<double>(model, "omega", 2.0));
      }
      if (type == "none") return std::nullopt;
      bad(model["type"], "unknown model '" + type + "'");
    });
    if (built) terms = built->terms();
  }
  if (const auto extra = sys["terms"])
    for (const auto& t : extra) terms.push_back(parse_term(t));
  return anchored(sys, [&] { return LocalHamiltonian(n, std::move(terms), geometry); });
}

CMatrix parse_matrix(const YAML::Node& m) {
  if (!m.IsSequence() || m.size() == 0) bad(m, "matrix must be a list of rows");
  const auto d = static_cast<Eigen::Index>(m.size());
  CMatrix out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto row = m[static_cast<std::size_t>(r)];
    if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != d) bad(row, "matrix must be square");
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto e = row[static_cast<std::size_t>(c)];
      if (e.IsSequence()) {
        const auto pair = as<std::vector<double>>(e, "matrix entry");
        if (pair.size() != 2) bad(e, "complex entries are [re, im]");
        out(r, c) = cplx(pair[0], pair[1]);
      } else {
        out(r, c) = as<double>(e, "matrix entry");
      }
    }
  }
  return out;
}

CircuitSpec parse_circuit(const YAML::Node& c, int n, std::uint64_t master) {
  allow_keys(c, {"gate_time", "c_opt", "layers", "brickwork", "ghz"});
  CircuitSpec spec{Circuit(n), get<double>(c, "gate_time", 1.0), maybe<double>(c, "c_opt")};
  if (spec.gate_time <= 0.0) bad(c["gate_time"], "gate_time must be positive");
  int sources = 0;
  if (const auto layers = c["layers"]) {
    ++sources;
    for (const auto& layer : layers) {
      std::vector<Gate> gates_in_layer;
      for (const auto& g : layer) {
        allow_keys(g, {"gate", "qubits", "matrix"});
        const auto qubits = as<std::vector<int>>(need(g, "qubits"), "qubits");
        gates_in_layer.push_back(anchored(g, [&] {
          if (g["matrix"]) return Gate(get<std::string>(g, "gate", "U"), qubits, parse_matrix(g["matrix"]));
          const auto name = as<std::string>(need(g, "gate"), "gate");
          return Gate(name, qubits, gates::by_name(name));
        }));
      }
      anchored(layer, [&] {
        spec.circuit.add_layer(std::move(gates_in_layer));
        return 0;
      });
    }
  }
  if (const auto bw = c["brickwork"]) {
    ++sources;
    allow_keys(bw, {"depth", "entangler", "random_rotations", "seed"});
    spec.circuit = anchored(bw, [&] {
      return brickwork(n, as<int>(need(bw, "depth"), "depth"), gates::by_name(get<std::string>(bw, "entangler", "CNOT")),
                       get<std::uint64_t>(bw, "seed", derive(master, 2)),
                       BrickworkOptions{get<bool>(bw, "random_rotations", true)},
                       get<std::string>(bw, "entangler", "CNOT"));
    });
  }
  if (const auto g = c["ghz"]) {
    ++sources;
    const int size = as<int>(g, "ghz");
    if (size != n) bad(g, "ghz size must equal system.n");
    auto bench = anchored(g, [&] { return ghz_benchmark(size); });
    spec.circuit = std::move(bench.circuit);
    if (!spec.c_opt) spec.c_opt = bench.c_opt;
  }
  if (sources != 1) bad(c, "circuit needs exactly one of layers, brickwork, ghz");
  return spec;
}

StateVector random_product(int n, std::uint64_t seed) {
  CVector a = CVector::Ones(1);
  for (int q = 0; q < n; ++q) {
    const CMatrix u = gates::random_su2(seed, static_cast<std::uint64_t>(q));
    CVector next(a.size() * 2);
    // Qubit q becomes the new most significant bit.
    next.head(a.size()) = u(0, 0) * a;
    next.tail(a.size()) = u(1, 0) * a;
    a = std::move(next);
  }
  return StateVector::normalized(n, std::move(a));
}

StateVector parse_state(const YAML::Node& s, int n, std::uint64_t fallback_seed) {
  if (s.IsScalar()) {
    const auto label = as<std::string>(s, "initial");
    if (static_cast<int>(label.size()) != n) bad(s, "product label length must equal system.n");
    return anchored(s, [&] { return StateVector::product(label); });
  }
  allow_keys(s, {"kind", "product", "seed", "delta_t", "label"});
  const auto kind = get<std::string>(s, "kind", s["product"] ? "product" : "zero");
  const auto seed = get<std::uint64_t>(s, "seed", fallback_seed);
  return anchored(s, [&]() -> StateVector {
    if (kind == "zero") return StateVector::zero(n);
    if (kind == "neel") return StateVector::neel(n);
    if (kind == "ghz") return ghz_state(n);
    if (kind == "random") return StateVector::random(n, seed);
    if (kind == "random-product") return random_product(n, seed);
    if (kind == "product") {
      const auto label = as<std::string>(need(s, "product"), "product");
      if (static_cast<int>(label.size()) != n) bad(s["product"], "product label length must equal system.n");
      return StateVector::product(label);
    }
    bad(s["kind"], "unknown initial state kind '" + kind + "'");
  });
}

RateWindow parse_window(const YAML::Node& n, RateWindow fallback) {
  if (!n) return fallback;
  const auto w = as<std::string>(n, "window");
  if (w == "early") return RateWindow::early;
  if (w == "full") return RateWindow::full;
  bad(n, "window must be early or full");
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<Bipartition> RunConfig::bipartition() const {
  if (partition.empty()) {
    if (n < 2) return std::nullopt;
    return Bipartition::half(n, geometry);
  }
  return Bipartition(partition, n, geometry);
}

LocalHamiltonian RunConfig::driving_hamiltonian() const {
  if (circuit) return circuit_to_schedule(circuit->circuit, circuit->gate_time, hbar);
  if (hamiltonian) return *hamiltonian;
  return LocalHamiltonian(n, {}, geometry);
}

double RunConfig::run_delta_t() const {
  if (delta_t) return *delta_t;
  if (circuit) return circuit->gate_time * static_cast<double>(std::max<std::size_t>(1, circuit->circuit.depth()));
  fail(ErrorCode::config, "protocol.delta_t is required");
}

RunSpec RunConfig::run_spec(const std::string& id) const {
  RunSpec spec{id,
               driving_hamiltonian(),
               initial.value_or(StateVector::zero(n)),
               run_delta_t(),
               bipartition(),
               std::nullopt,
               c_opt,
               designation,
               measure};
  if (circuit) {
    spec.c_exp = c_exp(circuit->circuit);
    if (!spec.c_opt) spec.c_opt = circuit->c_opt;
  }
  return spec;
}

RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    fail(ErrorCode::config, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) fail(ErrorCode::config, "config: top level must be a mapping");
  allow_keys(root, {"schema_version", "seed", "system", "initial_state", "circuit", "protocol", "sampling",
                    "constants", "analysis", "inputs", "calibration", "frontier"});

  RunConfig cfg;
  cfg.text = text;
  cfg.hash = fnv1a64(text);
  cfg.schema_version = get<int>(root, "schema_version", 0);
  if (cfg.schema_version != kSchemaVersion)
    bad(root["schema_version"] ? root["schema_version"] : root,
        "schema_version must be " + std::to_string(kSchemaVersion));
  cfg.seed = seed_override.value_or(get<std::uint64_t>(root, "seed", 0));

  if (const auto c = root["constants"]) {
    allow_keys(c, {"hbar", "gamma", "gamma_window", "entropy", "gamma_ensemble"});
    cfg.hbar = get<double>(c, "hbar", 1.0);
    if (!(cfg.hbar > 0.0)) bad(c["hbar"], "hbar must be positive");
    cfg.gamma = maybe<double>(c, "gamma");
    if (cfg.gamma && !(*cfg.gamma > 0.0)) bad(c["gamma"], "gamma must be positive");
    cfg.gamma_window = parse_window(c["gamma_window"], RateWindow::early);
    const auto ent = get<std::string>(c, "entropy", "renyi2");
    if (ent == "renyi2")
      cfg.measure = EntropyMeasure::renyi2;
    else if (ent == "von-neumann")
      cfg.measure = EntropyMeasure::von_neumann;
    else
      bad(c["entropy"], "entropy must be renyi2 or von-neumann");
  }

  if (const auto sys = root["system"]) {
    allow_keys(sys, {"n", "geometry", "grid", "model", "terms"});
    cfg.n = as<int>(need(sys, "n"), "n");
    if (cfg.n < 1) bad(sys["n"], "n must be positive");
    cfg.geometry = parse_geometry(sys);
    anchored(sys, [&] { return cfg.geometry.edges(cfg.n).size(); });
    cfg.hamiltonian = parse_system(sys, cfg.n, cfg.geometry);
  }

  if (const auto p = root["protocol"]) {
    allow_keys(p, {"delta_t", "points_per_interval", "grid_points", "dense_max_qubits", "max_qubits"});
    cfg.delta_t = maybe<double>(p, "delta_t");
    if (cfg.delta_t && !(*cfg.delta_t > 0.0)) bad(p["delta_t"], "delta_t must be positive");
    cfg.evolve.points_per_interval = get<int>(p, "points_per_interval", 64);
    cfg.evolve.grid_points = get<int>(p, "grid_points", 0);
    cfg.evolve.dense_max_qubits = get<int>(p, "dense_max_qubits", 10);
    cfg.evolve.max_qubits = get<int>(p, "max_qubits", 14);
    if (cfg.evolve.points_per_interval < 2) bad(p, "points_per_interval must be at least 2");
    if (cfg.evolve.grid_points == 1 || cfg.evolve.grid_points < 0) bad(p, "grid_points must be 0 or at least 2");
  }
  cfg.evolve.hbar = cfg.hbar;

  const bool needs_system = root["initial_state"] || root["circuit"] ||
                            (root["protocol"] && root["protocol"]["delta_t"]) ||
                            (root["analysis"] && root["analysis"]["partition"]);
  if (needs_system && cfg.n == 0) bad(root, "a system block with n is required");
  if (cfg.n > 0 && cfg.n > cfg.evolve.max_qubits)
    fail(ErrorCode::capacity, where(root["system"]["n"]) + std::to_string(cfg.n) +
                                  " qubits exceed the simulation cap of " + std::to_string(cfg.evolve.max_qubits));

  if (const auto s = root["initial_state"]) cfg.initial = parse_state(s, cfg.n, derive(cfg.seed, 1));

  if (const auto c = root["circuit"]) {
    if (cfg.hamiltonian && !cfg.hamiltonian->terms().empty())
      bad(c, "a circuit drives the run; remove the system model and terms");
    cfg.circuit = parse_circuit(c, cfg.n, cfg.seed);
  }

  if (const auto s = root["sampling"]) {
    allow_keys(s, {"shots", "epsilon", "delta", "alpha", "protocol", "batches", "budget_constant", "qubits",
                   "alpha_sig"});
    auto& sp = cfg.sampling;
    sp.shots = get<std::size_t>(s, "shots", 0);
    sp.epsilon = get<double>(s, "epsilon", sp.epsilon);
    sp.delta = get<double>(s, "delta", sp.delta);
    sp.alpha = get<double>(s, "alpha", sp.alpha);
    sp.batches = get<int>(s, "batches", sp.batches);
    sp.budget_constant = get<double>(s, "budget_constant", sp.budget_constant);
    sp.qubits = get<std::vector<int>>(s, "qubits", {});
    sp.alpha_sig = get<double>(s, "alpha_sig", sp.alpha_sig);
    if (s["protocol"]) sp.protocol = anchored(s["protocol"], [&] { return shadow_protocol_from_string(as<std::string>(s["protocol"], "protocol")); });
    if (!(sp.epsilon > 0.0 && sp.epsilon <= 1.0)) bad(s, "epsilon must lie in (0, 1]");
    if (!(sp.delta > 0.0 && sp.delta <= 1.0)) bad(s, "delta must lie in (0, 1]");
    if (sp.alpha < 0.0) bad(s, "alpha must be non-negative");
    if (sp.budget_constant <= 0.0) bad(s, "budget_constant must be positive");
    for (int q : sp.qubits)
      if (q < 0 || q >= cfg.n) bad(s["qubits"], "readout qubit out of range");
  }

  if (const auto c = root["constants"]; c && c["gamma_ensemble"]) {
    int k = 0;
    for (const auto& e : c["gamma_ensemble"]) {
      const auto dt = as<double>(need(e, "delta_t"), "delta_t");
      if (!(dt > 0.0)) bad(e, "delta_t must be positive");
      const auto init = e["initial"] ? e["initial"] : e;
      QuenchSpec q{get<std::string>(e, "label", "quench-" + std::to_string(k)),
                   parse_state(init, cfg.n, derive(cfg.seed, 100 + static_cast<std::uint64_t>(k))), dt};
      cfg.gamma_ensemble.push_back(std::move(q));
      ++k;
    }
  }

  if (const auto a = root["analysis"]) {
    allow_keys(a, {"partition", "designation", "c_opt", "calibration_file", "slack", "band"});
    cfg.partition = get<std::vector<int>>(a, "partition", {});
    const auto d = get<std::string>(a, "designation", "c_opt");
    if (d == "c_opt")
      cfg.designation = Designation::c_opt;
    else if (d == "c_exp")
      cfg.designation = Designation::c_exp;
    else
      bad(a["designation"], "designation must be c_opt or c_exp");
    cfg.c_opt = maybe<double>(a, "c_opt");
    cfg.calibration_file = get<std::string>(a, "calibration_file", "");
    cfg.slack = get<double>(a, "slack", 1.0);
    cfg.band = get<double>(a, "band", 0.1);
    if (!cfg.partition.empty()) anchored(a["partition"], [&] { return cfg.bipartition()->size_a(); });
  }

  if (const auto in = root["inputs"]) {
    allow_keys(in, {"sigma_avail", "delta_t", "s_e", "c", "c_exp", "j", "gamma", "designation"});
    RunInputs ri;
    ri.sigma_avail = energy(as<double>(need(in, "sigma_avail"), "sigma_avail"));
    ri.delta_t = duration(as<double>(need(in, "delta_t"), "delta_t"));
    ri.s_e = as<double>(need(in, "s_e"), "s_e");
    ri.j_bound = energy(as<double>(need(in, "j"), "j"));
    ri.gamma = get<double>(in, "gamma", cfg.gamma.value_or(0.0));
    ri.hbar = action(cfg.hbar);
    const double c = as<double>(need(in, "c"), "c");
    const auto d = get<std::string>(in, "designation", "c_opt");
    if (d == "c_opt") {
      ri.designation = Designation::c_opt;
      ri.c_opt = c;
      ri.c_exp = get<double>(in, "c_exp", c);
      ri.c_opt_source = "user";
    } else if (d == "c_exp") {
      ri.designation = Designation::c_exp;
      ri.c_exp = c;
    } else {
      bad(in["designation"], "designation must be c_opt or c_exp");
    }
    if (!(ri.delta_t.value() > 0.0)) bad(in["delta_t"], "delta_t must be positive");
    if (ri.s_e < 0.0 || ri.sigma_avail.value() < 0.0 || ri.j_bound.value() < 0.0 || c < 0.0)
      bad(in, "inputs must be non-negative");
    cfg.synthetic = ri;
  }

  if (const auto c = root["calibration"]) {
    allow_keys(c, {"points", "ghz", "exact"});
    CalibrationSpec cs;
    if (const auto pts = c["points"])
      for (const auto& p : pts) {
        const auto v = as<std::vector<double>>(p, "point");
        if (v.size() != 2) bad(p, "calibration points are [c_opt, k_kl]");
        cs.points.emplace_back(v[0], v[1]);
      }
    cs.ghz_sizes = get<std::vector<int>>(c, "ghz", {});
    cs.exact = get<bool>(c, "exact", false);
    if (cs.points.empty() == cs.ghz_sizes.empty()) bad(c, "calibration needs exactly one of points, ghz");
    cfg.calibration = std::move(cs);
  }

  if (const auto f = root["frontier"]) {
    allow_keys(f, {"brickwork", "gamma", "gamma_window", "bins", "top_k"});
    FrontierSpec fs;
    const auto bw = need(f, "brickwork");
    allow_keys(bw, {"n", "depths", "seeds", "runs_per_depth", "entangler", "random_rotations", "gate_time"});
    fs.n = as<int>(need(bw, "n"), "n");
    fs.depths = get<std::vector<int>>(bw, "depths", {});
    fs.seeds = get<std::vector<std::uint64_t>>(bw, "seeds", {});
    if (fs.seeds.empty()) {
      const int per = get<int>(bw, "runs_per_depth", 1);
      for (int i = 0; i < per; ++i) fs.seeds.push_back(derive(cfg.seed, 1000 + static_cast<std::uint64_t>(i)));
    }
    fs.entangler = get<std::string>(bw, "entangler", fs.entangler);
    anchored(bw, [&] { return gates::by_name(fs.entangler).rows(); });
    fs.random_rotations = get<bool>(bw, "random_rotations", true);
    fs.gate_time = get<double>(bw, "gate_time", 1.0);
    fs.gamma = maybe<double>(f, "gamma");
    fs.window = parse_window(f["gamma_window"], RateWindow::full);
    fs.bins = get<int>(f, "bins", 8);
    fs.top_k = get<int>(f, "top_k", 1);
    if (fs.n < 2) bad(bw["n"], "brickwork needs n >= 2");
    if (fs.n > cfg.evolve.max_qubits) fail(ErrorCode::capacity, where(bw["n"]) + "frontier n exceeds the simulation cap");
    for (int d : fs.depths)
      if (d < 1) bad(bw["depths"], "depths must be positive");
    if (fs.gate_time <= 0.0) bad(bw["gate_time"], "gate_time must be positive");
    cfg.frontier = std::move(fs);
  }
  return cfg;
}

RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::config, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), seed_override);
}

}  // namespace eeperf::cli

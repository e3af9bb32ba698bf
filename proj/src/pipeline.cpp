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

#include "eeperf/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "eeperf/error.hpp"
#include "eeperf/parallel.hpp"

namespace eeperf {

RunSpec circuit_run(std::string id, const Circuit& circuit, const StateVector& initial, double gate_time,
                    std::optional<Bipartition> partition, double hbar) {
  require(circuit.depth() > 0, ErrorCode::invalid_argument, "circuit run needs at least one layer");
  return RunSpec{std::move(id),
                 circuit_to_schedule(circuit, gate_time, hbar),
                 initial,
                 gate_time * static_cast<double>(circuit.depth()),
                 partition,
                 c_exp(circuit),
                 std::nullopt,
                 Designation::c_opt,
                 EntropyMeasure::renyi2};
}

SimulatedRun simulate(const RunSpec& spec, const EvolveOptions& options) {
  SimulatedRun out;
  out.id = spec.id;
  if (spec.partition) {
    out.trajectory = evolve_with_entropy(spec.hamiltonian, spec.initial, spec.delta_t, *spec.partition, options);
    const auto& s = spec.measure == EntropyMeasure::renyi2 ? out.trajectory.s2_bits : out.trajectory.s_vn_bits;
    out.s_e = s.back();
    out.size_a = spec.partition->size_a();
    out.boundary_bonds = spec.partition->boundary_bonds();
  } else {
    out.trajectory = evolve(spec.hamiltonian, spec.initial, spec.delta_t, options);
  }
  out.j = interaction_bound(spec.hamiltonian).value();
  out.certified_depth = out.trajectory.certified_depth();
  out.c_exp = spec.c_exp;
  out.c_opt = spec.c_opt;
  out.designation = spec.designation;
  out.measure = spec.measure;
  return out;
}

std::vector<SimulatedRun> simulate_all(const std::vector<RunSpec>& specs, const EvolveOptions& options) {
  std::vector<std::optional<SimulatedRun>> slots(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { slots[i] = simulate(specs[i], options); });
  std::vector<SimulatedRun> out;
  out.reserve(specs.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

GammaEstimate gamma_from_runs(const std::vector<SimulatedRun>& runs, RateWindow window, double shared_j,
                              double hbar) {
  require(!runs.empty(), ErrorCode::invalid_argument, "gamma ensemble is empty");
  GammaEstimate est;
  est.ensemble_size = static_cast<int>(runs.size());
  est.window = window;
  est.measure = runs.front().measure;
  est.boundary_bonds = runs.front().boundary_bonds;
  for (const auto& r : runs) {
    require(r.boundary_bonds == est.boundary_bonds, ErrorCode::invalid_argument,
            "gamma ensemble mixes cuts with different boundaries");
    const double j = shared_j > 0.0 ? shared_j : r.j;
    if (j <= 0.0) continue;
    const auto& tr = r.trajectory;
    require(!tr.s2_bits.empty(), ErrorCode::invalid_argument, "run " + r.id + " carries no entropy samples");
    const auto& s = r.measure == EntropyMeasure::renyi2 ? tr.s2_bits : tr.s_vn_bits;
    require(s.front() < 1e-10, ErrorCode::invalid_argument,
            "run " + r.id + " does not start from a product state across the cut");
    const double horizon =
        window == RateWindow::early ? std::min(0.25 * r.size_a * hbar / j, tr.times.back()) : tr.times.back();
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

RunInputs make_inputs(const SimulatedRun& run, double gamma, double hbar, double j_override) {
  RunInputs in;
  in.sigma_avail = run.trajectory.sigma_avail;
  in.delta_t = run.trajectory.delta_t;
  in.s_e = run.s_e;
  in.c_exp = run.c_exp.value_or(0.0);
  in.j_bound = energy(j_override > 0.0 ? j_override : run.j);
  in.gamma = gamma;
  in.hbar = action(hbar);
  in.designation = run.designation;
  if (run.c_opt) {
    in.c_opt = run.c_opt;
    in.c_opt_source = "benchmark";
  } else {
    in.c_opt = run.certified_depth;
    in.c_opt_source = "certified-depth";
  }
  if (in.designation == Designation::c_exp && !run.c_exp) in.c_exp = run.certified_depth;
  return in;
}

RunResult run_pipeline(const RunSpec& spec, double gamma, const EvolveOptions& options) {
  RunResult r{simulate(spec, options), {}, {}};
  r.inputs = make_inputs(r.run, gamma, options.hbar);
  r.report = evaluate(r.inputs);
  return r;
}

FrontierPoint to_frontier_point(const SimulatedRun& run, const RunInputs& inputs) {
  FrontierPoint p;
  p.run_id = run.id;
  p.report = evaluate(inputs);
  p.complexity_x = p.report.complexity;
  p.resource_output_y = inputs.sigma_avail * pure(inputs.s_e);
  p.sigma_avail = inputs.sigma_avail.value();
  p.s_e = inputs.s_e;
  p.c_exp = run.c_exp.value_or(0.0);
  return p;
}

FrontierResult frontier_sweep(const std::vector<RunSpec>& runs, const FrontierOptions& options) {
  require(!runs.empty(), ErrorCode::invalid_argument, "frontier sweep is empty");
  const auto sims = simulate_all(runs, options.evolve);
  FrontierResult out;
  out.hbar = options.evolve.hbar;
  double max_j = 0.0;
  for (const auto& s : sims) max_j = std::max(max_j, s.j);
  out.shared_j = options.shared_j.value_or(max_j);
  require(out.shared_j >= max_j * (1.0 - 1e-12), ErrorCode::invalid_argument,
          "inconsistent shared constants: a run exceeds the shared J");
  if (options.gamma) {
    out.gamma = *options.gamma;
  } else {
    out.gamma_estimate = gamma_from_runs(sims, options.window, out.shared_j, out.hbar);
    out.gamma = out.gamma_estimate->gamma;
  }
  for (const auto& s : sims) out.points.push_back(to_frontier_point(s, make_inputs(s, out.gamma, out.hbar, out.shared_j)));
  out.envelope = fit_envelope(out.points, out.gamma, out.shared_j, options.bins, options.top_k);
  return out;
}

}  // namespace eeperf

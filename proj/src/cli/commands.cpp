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

#include "eeperf/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "CLI11.hpp"

#include "eeperf/cli/report_io.hpp"
#include "eeperf/complexity.hpp"
#include "eeperf/pipeline.hpp"
#include "eeperf/rng.hpp"

#ifndef EEPERF_VERSION
#define EEPERF_VERSION "dev"
#endif

namespace eeperf::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestSchema = "eeperf-manifest/1";

std::uint64_t derive(std::uint64_t master, std::uint64_t tag) { return mix64(master ^ mix64(tag + 0x5eed)); }

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

fs::path prepare_out_dir(const CommandOptions& opts) {
  const fs::path dir = opts.out_dir.empty() ? fs::path(default_out_dir()) : fs::path(opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::io, "cannot create output directory " + dir.string());
  return dir;
}

template <class Writer>
void emit(const fs::path& path, Writer&& w) {
  std::ostringstream ss;
  w(ss);
  write_file(path.string(), ss.str());
}

void finish(const RunConfig& cfg, const std::string& command, const CommandOptions& opts, Json results,
            const fs::path& dir) {
  Json m;
  m["schema"] = kManifestSchema;
  m["toolkit_version"] = EEPERF_VERSION;
  m["command"] = command;
  m["config_hash"] = hex64(cfg.hash);
  m["master_seed"] = cfg.seed;
  m["options"] = {{"override_budget", opts.override_budget},
                  {"slack", opts.slack ? Json(*opts.slack) : Json(nullptr)}};
  m["results"] = std::move(results);
  m["config_text"] = cfg.text;
  write_file((dir / "manifest.json").string(), m.dump(2) + "\n");
  // Wall-clock data lives outside the reproducible outputs.
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  write_file((dir / "run.log").string(),
             fmt::format("command={}\nconfig_hash={}\nmaster_seed={}\nfinished_utc={:%Y-%m-%dT%H:%M:%SZ}\n", command,
                         hex64(cfg.hash), cfg.seed, now));
}

struct ResolvedGamma {
  double gamma;
  std::optional<GammaEstimate> estimate;
};

std::vector<Quench> ensemble_of(const RunConfig& cfg) {
  std::vector<Quench> quenches;
  const auto h = cfg.driving_hamiltonian();
  for (const auto& q : cfg.gamma_ensemble) quenches.push_back({q.label, h, q.initial, q.delta_t});
  return quenches;
}

std::optional<ResolvedGamma> resolve_gamma(const RunConfig& cfg) {
  if (cfg.gamma) return ResolvedGamma{*cfg.gamma, std::nullopt};
  if (cfg.gamma_ensemble.empty()) return std::nullopt;
  const auto part = cfg.bipartition();
  require(part.has_value(), ErrorCode::config, "gamma estimation needs at least two qubits");
  GammaOptions go;
  go.evolve = cfg.evolve;
  go.measure = cfg.measure;
  go.window = cfg.gamma_window;
  const auto est = estimate_gamma(*part, ensemble_of(cfg), go);
  return ResolvedGamma{est.gamma, est};
}

StateVector prepared_state(const RunConfig& cfg) {
  const StateVector init = cfg.initial.value_or(StateVector::zero(cfg.n));
  if (cfg.circuit) return apply_circuit(cfg.circuit->circuit, init);
  if (cfg.hamiltonian && !cfg.hamiltonian->terms().empty() && cfg.delta_t)
    return *evolve(*cfg.hamiltonian, init, *cfg.delta_t, cfg.evolve).final_state;
  return init;
}

Json trajectory_summary(const SimulatedRun& run) {
  const auto& tr = run.trajectory;
  return Json{{"sigma_avail", {{"value", tr.sigma_avail.value()}, {"unit", "energy"}}},
              {"delta_t", {{"value", tr.delta_t.value()}, {"unit", "time"}}},
              {"s_e_bits", run.s_e},
              {"entropy", to_string(run.measure)},
              {"j_bound", {{"value", run.j}, {"unit", "energy"}}},
              {"certified_depth", run.certified_depth},
              {"c_exp", run.c_exp ? Json(*run.c_exp) : Json(nullptr)},
              {"grid_points", tr.times.size()},
              {"max_norm_drift", tr.max_norm_drift},
              {"trivial", tr.sigma_avail.value() == 0.0}};
}

void print_report(const EfficiencyReport& r) {
  auto show = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string("undefined"); };
  std::cout << fmt::format("eta_qsl={} eta_lr={} ratio={} gate_a={} gate_b={} residual={}{}\n", show(r.eta_qsl),
                           format_number(r.eta_lr), show(r.ratio), r.gate_a_pass ? "pass" : "fail",
                           r.gate_b_pass ? "pass" : "fail", show(r.identity_residual), r.trivial ? " (trivial)" : "");
}

struct Evaluated {
  RunInputs inputs;
  EfficiencyReport report;
  Json extra;
};

void attach_complexity(const RunConfig& cfg, RunInputs& in, const StateVector& final_state, Json& extra) {
  if (cfg.calibration_file.empty() || cfg.sampling.shots == 0) return;
  const auto fit = read_calibration(cfg.calibration_file);
  const auto dist = sample_bitstrings(final_state, cfg.sampling.shots, derive(cfg.seed, 3), cfg.sampling.alpha,
                                      cfg.sampling.qubits);
  in.k_kl = k_kl(dist, cfg.sampling.epsilon, cfg.sampling.delta);
  in.calibration = fit;
  extra["k_kl"] = to_json(*in.k_kl);
  extra["calibration"] = to_json(fit);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::config:
    case ErrorCode::invalid_argument:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::layer_conflict:
    case ErrorCode::ambiguous_generator:
    case ErrorCode::budget:
    case ErrorCode::missing_calibration:
    case ErrorCode::io:
      return kExitConfig;
    case ErrorCode::capacity:
    case ErrorCode::unsupported_size:
      return kExitCapacity;
    default:
      return kExitFailure;
  }
}

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? std::string(env) : std::string("eeperf-out");
}

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opts) {
  const auto dir = prepare_out_dir(opts);
  const auto spec = cfg.run_spec();
  const auto sim = simulate(spec, cfg.evolve);
  emit(dir / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, sim.trajectory); });
  Json results;
  results["trajectory"] = trajectory_summary(sim);
  const auto g = resolve_gamma(cfg);
  if (g) {
    RunInputs in = make_inputs(sim, g->gamma, cfg.hbar);
    attach_complexity(cfg, in, *sim.trajectory.final_state, results);
    const auto report = evaluate(in);
    results["gamma"] = g->estimate ? to_json(*g->estimate) : Json{{"gamma", g->gamma}, {"source", "frozen"}};
    results["inputs"] = to_json(in);
    results["report"] = to_json(report);
    print_report(report);
  }
  std::cout << fmt::format("sigma_avail={} delta_t={} S_E={}{}\n", format_number(sim.trajectory.sigma_avail.value()),
                           format_number(sim.trajectory.delta_t.value()), format_number(sim.s_e),
                           sim.trajectory.sigma_avail.value() == 0.0 ? " (trivial dynamics)" : "");
  finish(cfg, "simulate", opts, std::move(results), dir);
  return kExitOk;
}

namespace {

int write_diagnosis(const RunConfig& cfg, const CommandOptions& opts, const RunInputs& in, Json results,
                    const std::string& run_id, const std::string& command) {
  const auto dir = prepare_out_dir(opts);
  const auto report = evaluate(in);
  results["inputs"] = to_json(in);
  results["report"] = to_json(report);
  if (report.eta_qsl && report.identity_residual) {
    const auto id = rect_eta_identity(in);
    results["identity"] = {{"lhs", id.lhs.value()},
                           {"rhs", id.rhs.value()},
                           {"residual", id.residual},
                           {"proxy_rhs", id.proxy_rhs ? Json(id.proxy_rhs->value()) : Json(nullptr)},
                           {"proxy_residual", id.proxy_residual ? Json(*id.proxy_residual) : Json(nullptr)}};
  }
  if (report.ratio) {
    const auto d = diagnose(report, cfg.band);
    results["diagnosis"] = {{"verdict", to_string(d.verdict)}, {"band", cfg.band}, {"narrative", d.narrative}};
    std::cout << "verdict=" << to_string(d.verdict) << "\n";
  }
  FrontierPoint p;
  p.run_id = run_id;
  p.report = report;
  p.complexity_x = report.complexity;
  p.sigma_avail = in.sigma_avail.value();
  p.s_e = in.s_e;
  p.resource_output_y = in.sigma_avail * pure(in.s_e);
  emit(dir / "report.csv", [&](std::ostream& o) { write_report_csv(o, {p}); });
  write_file((dir / "report.json").string(), results.dump(2) + "\n");
  print_report(report);
  finish(cfg, command, opts, std::move(results), dir);
  return report.gate_a_pass && report.gate_b_pass ? kExitOk : kExitGateFailure;
}

}  // namespace

int cmd_diagnose(const RunConfig& cfg, const CommandOptions& opts) {
  Json results;
  if (cfg.synthetic) {
    results["source"] = "inputs";
    return write_diagnosis(cfg, opts, *cfg.synthetic, std::move(results), "inputs", "diagnose");
  }
  const auto g = resolve_gamma(cfg);
  require(g.has_value(), ErrorCode::config, "diagnose needs constants.gamma or constants.gamma_ensemble");
  const auto sim = simulate(cfg.run_spec(), cfg.evolve);
  RunInputs in = make_inputs(sim, g->gamma, cfg.hbar);
  attach_complexity(cfg, in, *sim.trajectory.final_state, results);
  results["source"] = "simulation";
  results["trajectory"] = trajectory_summary(sim);
  results["gamma"] = g->estimate ? to_json(*g->estimate) : Json{{"gamma", g->gamma}, {"source", "frozen"}};
  return write_diagnosis(cfg, opts, in, std::move(results), "run", "diagnose");
}

int cmd_diagnose_manifest(const std::string& manifest_path, const CommandOptions& opts) {
  Json m;
  try {
    m = Json::parse(read_file(manifest_path));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::config, "manifest " + manifest_path + ": " + e.what());
  }
  require(m.value("schema", "") == kManifestSchema, ErrorCode::config, "not an eeperf manifest");
  const RunConfig cfg = parse_config(m.at("config_text").get<std::string>(), m.at("master_seed").get<std::uint64_t>());
  const Json& res = m.at("results");
  require(res.contains("inputs"), ErrorCode::config, "manifest records no diagnostic inputs (gamma unknown)");
  try {
    const Json& ij = res.at("inputs");
    RunInputs in;
    in.sigma_avail = energy(ij.at("sigma_avail").at("value").get<double>());
    in.delta_t = duration(ij.at("delta_t").at("value").get<double>());
    in.s_e = ij.at("s_e_bits").get<double>();
    if (!ij.at("c_opt").is_null()) in.c_opt = ij.at("c_opt").get<double>();
    in.c_exp = ij.at("c_exp").get<double>();
    in.j_bound = energy(ij.at("j_bound").at("value").get<double>());
    in.gamma = ij.at("gamma").get<double>();
    in.hbar = action(ij.at("hbar").at("value").get<double>());
    in.designation = ij.at("designation").get<std::string>() == "C_opt" ? Designation::c_opt : Designation::c_exp;
    if (res.contains("report") && res.at("report").contains("c_opt_source"))
      in.c_opt_source = res.at("report").at("c_opt_source").get<std::string>();
    Json results;
    results["source"] = "manifest";
    results["manifest_config_hash"] = m.at("config_hash");
    return write_diagnosis(cfg, opts, in, std::move(results), "manifest", "diagnose");
  } catch (const Json::exception& e) {
    fail(ErrorCode::config, std::string("malformed manifest: ") + e.what());
  }
}

int cmd_gamma(const RunConfig& cfg, const CommandOptions& opts) {
  require(!cfg.gamma_ensemble.empty(), ErrorCode::config, "gamma needs constants.gamma_ensemble");
  const auto dir = prepare_out_dir(opts);
  const auto part = cfg.bipartition();
  require(part.has_value(), ErrorCode::config, "gamma estimation needs at least two qubits");
  GammaOptions go;
  go.evolve = cfg.evolve;
  go.measure = cfg.measure;
  go.window = cfg.gamma_window;
  const auto est = estimate_gamma(*part, ensemble_of(cfg), go);
  Json ensemble = Json::array();
  for (const auto& q : cfg.gamma_ensemble) ensemble.push_back({{"label", q.label}, {"delta_t", q.delta_t}});
  Json results{{"gamma", to_json(est)},
               {"partition", part->subsystem_a()},
               {"geometry", cfg.geometry.name()},
               {"j_bound", interaction_bound(cfg.driving_hamiltonian()).value()},
               {"ensemble", ensemble}};
  write_file((dir / "gamma.json").string(), results.dump(2) + "\n");
  std::cout << fmt::format("gamma={} c={} boundary_bonds={}\n", format_number(est.gamma),
                           format_number(est.c_constant), est.boundary_bonds);
  finish(cfg, "gamma", opts, std::move(results), dir);
  return kExitOk;
}

int cmd_shadow(const RunConfig& cfg, const CommandOptions& opts) {
  require(cfg.n >= 1, ErrorCode::config, "shadow needs a system block");
  const auto& sp = cfg.sampling;
  const int read_bits = sp.qubits.empty() ? cfg.n : static_cast<int>(sp.qubits.size());
  const std::uint64_t m_out = std::uint64_t{1} << read_bits;
  const auto required = required_shots_distribution(m_out, sp.epsilon, sp.delta, sp.budget_constant);
  const std::size_t shots = sp.shots ? sp.shots : required;
  if (shots < required && !opts.override_budget)
    fail(ErrorCode::budget, fmt::format("{} shots are below the budget of {} for M_out={}, eps={}, delta={}; "
                                        "pass --override-budget to proceed",
                                        shots, required, m_out, format_number(sp.epsilon), format_number(sp.delta)));
  if (!sp.qubits.empty())
    require(sp.protocol == ShadowProtocol::direct_z, ErrorCode::config,
            "restricted readout qubits need the direct-z protocol");
  const auto dir = prepare_out_dir(opts);
  const StateVector state = prepared_state(cfg);
  const auto seed = derive(cfg.seed, 3);

  std::vector<std::uint64_t> outcomes;
  std::optional<EmpiricalDistribution> dist;
  if (sp.qubits.empty()) {
    const auto data = sample_shadows(state, shots, seed, sp.protocol);
    emit(dir / "shadows.bin", [&](std::ostream& o) { write_shadow_dataset(o, data); });
    dist = reconstruct_distribution(data, sp.batches, sp.alpha);
    for (const auto& s : data.snapshots) outcomes.push_back(s.outcome);
  } else {
    outcomes = sample_outcomes(state, shots, seed, sp.qubits);
    std::vector<double> counts(m_out, 0.0);
    for (auto x : outcomes) counts[x] += 1.0;
    dist = EmpiricalDistribution(std::move(counts), sp.alpha);
  }
  const auto est = k_kl(*dist, sp.epsilon, sp.delta);
  emit(dir / "distribution.csv", [&](std::ostream& o) { write_distribution_csv(o, *dist); });

  Json results;
  results["protocol"] = to_string(sp.protocol);
  results["shots"] = shots;
  results["required_shots"] = required;
  results["budget_overridden"] = shots < required;
  results["m_out"] = m_out;
  results["alpha"] = sp.alpha;
  results["complexity"] = to_json(est);
  const auto bits = outcomes_to_bits(outcomes, read_bits);
  if (bits.size() >= 100) results["randomness"] = to_json(randomness_screen(bits, sp.alpha_sig));
  if (!cfg.calibration_file.empty()) {
    const auto fit = read_calibration(cfg.calibration_file);
    const double slack = opts.slack.value_or(cfg.slack);
    const auto bound = c_opt_lower_bound(est, fit, slack);
    results["c_opt_lower_bound"] = {{"slack", slack}, {"slack_free", bound.slack_free}, {"with_slack", bound.with_slack}};
    results["calibration"] = to_json(fit);
  }
  write_file((dir / "complexity.json").string(), results.dump(2) + "\n");
  std::cout << fmt::format("K_KL={} bits (M_out={}, f(eps)={})\n", format_number(est.k_kl), m_out,
                           format_number(est.f_epsilon));
  finish(cfg, "shadow", opts, std::move(results), dir);
  return kExitOk;
}

int cmd_calibrate(const RunConfig& cfg, const CommandOptions& opts) {
  require(cfg.calibration.has_value(), ErrorCode::config, "calibrate needs a calibration block");
  const auto& cs = *cfg.calibration;
  std::vector<std::pair<double, double>> points = cs.points;
  Json benchmarks = Json::array();
  for (int n : cs.ghz_sizes) {
    const auto bench = ghz_benchmark(n);
    const auto state = apply_circuit(bench.circuit, StateVector::zero(n));
    const std::uint64_t m_out = std::uint64_t{1} << n;
    std::optional<EmpiricalDistribution> dist;
    std::size_t shots = 0;
    if (cs.exact) {
      dist = EmpiricalDistribution::exact(state.probabilities());
    } else {
      shots = cfg.sampling.shots ? cfg.sampling.shots
                                 : required_shots_distribution(m_out, cfg.sampling.epsilon, cfg.sampling.delta,
                                                               cfg.sampling.budget_constant);
      dist = sample_bitstrings(state, shots, derive(cfg.seed, 10 + static_cast<std::uint64_t>(n)), cfg.sampling.alpha);
    }
    const auto est = k_kl(*dist);
    points.emplace_back(bench.c_opt, est.k_kl);
    benchmarks.push_back({{"benchmark", fmt::format("ghz-{}", n)}, {"c_opt", bench.c_opt}, {"k_kl", est.k_kl},
                          {"shots", shots}, {"exact", cs.exact}});
  }
  const auto fit = calibrate(points);
  const auto dir = prepare_out_dir(opts);
  const auto gate_set = default_gate_set();
  Json results{{"calibration", to_json(fit)},
               {"benchmarks", benchmarks},
               {"gate_set", {{"gates", gate_set}, {"c_g_formula", c_g_from_gate_set(gate_set.size())}}},
               {"c_g_used", "fitted"}};
  write_file((dir / "calibration.json").string(), results.dump(2) + "\n");
  std::cout << fmt::format("c_G={} K(M)={} rms={}\n", format_number(fit.c_g), format_number(fit.k_m),
                           format_number(fit.residual_rms));
  finish(cfg, "calibrate", opts, std::move(results), dir);
  return kExitOk;
}

int cmd_frontier(const RunConfig& cfg, const CommandOptions& opts) {
  require(cfg.frontier.has_value(), ErrorCode::config, "frontier needs a frontier block");
  const auto& fs_spec = *cfg.frontier;
  std::vector<RunSpec> runs;
  const auto entangler = gates::by_name(fs_spec.entangler);
  const Bipartition part = Bipartition::half(fs_spec.n);
  for (int depth : fs_spec.depths)
    for (std::size_t k = 0; k < fs_spec.seeds.size(); ++k) {
      const auto circuit = brickwork(fs_spec.n, depth, entangler, fs_spec.seeds[k],
                                     BrickworkOptions{fs_spec.random_rotations}, fs_spec.entangler);
      runs.push_back(circuit_run(fmt::format("bw-d{}-s{}", depth, k), circuit, StateVector::zero(fs_spec.n),
                                 fs_spec.gate_time, part, cfg.hbar));
    }
  require(!runs.empty(), ErrorCode::config, "frontier sweep is empty");
  FrontierOptions fo;
  fo.evolve = cfg.evolve;
  fo.gamma = fs_spec.gamma ? fs_spec.gamma : cfg.gamma;
  fo.window = fs_spec.window;
  fo.bins = fs_spec.bins;
  fo.top_k = fs_spec.top_k;
  const auto res = frontier_sweep(runs, fo);
  const auto dir = prepare_out_dir(opts);
  emit(dir / "frontier.csv", [&](std::ostream& o) { write_report_csv(o, res.points); });
  emit(dir / "frontier_envelope.csv", [&](std::ostream& o) { write_envelope_csv(o, res.points, res.envelope); });
  emit(dir / "frontier.svg", [&](std::ostream& o) { write_frontier_svg(o, res.points, res.envelope); });
  bool gates_ok = true;
  Json pts = Json::array();
  for (const auto& p : res.points) {
    gates_ok = gates_ok && p.report.gate_a_pass && p.report.gate_b_pass;
    pts.push_back({{"run_id", p.run_id}, {"x", p.complexity_x}, {"y", p.resource_output_y.value()},
                   {"c_exp", p.c_exp}, {"report", to_json(p.report)}});
  }
  Json results{{"gamma", res.gamma_estimate ? to_json(*res.gamma_estimate) : Json{{"gamma", res.gamma}, {"source", "frozen"}}},
               {"shared_j", res.shared_j},
               {"hbar", res.hbar},
               {"envelope", to_json(res.envelope)},
               {"points", pts}};
  write_file((dir / "frontier.json").string(), results.dump(2) + "\n");
  std::cout << fmt::format("runs={} slope={} theoretical={} ratio={} all_below_line={}\n", res.points.size(),
                           format_number(res.envelope.slope), format_number(res.envelope.theoretical_slope),
                           format_number(res.envelope.slope_ratio), res.envelope.all_below_line);
  finish(cfg, "frontier", opts, std::move(results), dir);
  return gates_ok ? kExitOk : kExitGateFailure;
}

int cmd_replay(const std::string& manifest_path, const CommandOptions& opts) {
  Json m;
  try {
    m = Json::parse(read_file(manifest_path));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::config, "manifest " + manifest_path + ": " + e.what());
  }
  require(m.value("schema", "") == kManifestSchema, ErrorCode::config, "not an eeperf manifest");
  const auto cfg = parse_config(m.at("config_text").get<std::string>(), m.at("master_seed").get<std::uint64_t>());
  CommandOptions o = opts;
  const Json& mo = m.at("options");
  o.override_budget = mo.value("override_budget", false);
  if (!mo.at("slack").is_null()) o.slack = mo.at("slack").get<double>();
  const auto command = m.at("command").get<std::string>();
  if (command == "simulate") return cmd_simulate(cfg, o);
  if (command == "diagnose") return cmd_diagnose(cfg, o);
  if (command == "gamma") return cmd_gamma(cfg, o);
  if (command == "shadow") return cmd_shadow(cfg, o);
  if (command == "calibrate") return cmd_calibrate(cfg, o);
  if (command == "frontier") return cmd_frontier(cfg, o);
  fail(ErrorCode::config, "manifest names unknown command '" + command + "'");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Energy-entanglement performance toolkit for small spin systems", "eeperf"};
  app.set_version_flag("--version", std::string(EEPERF_VERSION));
  app.require_subcommand(1);

  std::string config_path, manifest_path;
  std::optional<std::uint64_t> seed;
  CommandOptions opts;
  std::optional<double> slack;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "Run configuration (YAML)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Master seed (overrides the config)");
    sub->add_option("--out-dir", opts.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or eeperf-out)");
    sub->add_flag("--override-budget", opts.override_budget, "Proceed when shots are below the statistical budget");
    sub->add_option("--slack", slack, "Coefficient of the logarithmic slack in the complexity bound");
  };
  auto* simulate_cmd = app.add_subcommand("simulate", "Evolve and record the trajectory");
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Efficiency factors, gates and verdict");
  auto* gamma_cmd = app.add_subcommand("gamma", "Estimate the entanglement-growth constant");
  auto* shadow_cmd = app.add_subcommand("shadow", "Sample, reconstruct and compute K_KL");
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit c_G and K(M) from benchmarks");
  auto* frontier_cmd = app.add_subcommand("frontier", "Brickwork sweep, envelope fit and plot");
  auto* replay_cmd = app.add_subcommand("replay", "Re-execute a recorded manifest");
  for (auto* s : {simulate_cmd, gamma_cmd, shadow_cmd, calibrate_cmd, frontier_cmd}) add_common(s, true);
  add_common(diagnose_cmd, false);
  diagnose_cmd->add_option("--manifest", manifest_path, "Diagnose a simulate manifest instead of a config")
      ->check(CLI::ExistingFile);
  replay_cmd->add_option("--manifest", manifest_path, "Manifest to re-execute")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--out-dir", opts.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  opts.slack = slack;
  try {
    if (replay_cmd->parsed()) return cmd_replay(manifest_path, opts);
    if (diagnose_cmd->parsed() && !manifest_path.empty()) return cmd_diagnose_manifest(manifest_path, opts);
    require(!config_path.empty(), ErrorCode::config, "--config is required");
    const auto cfg = load_config(config_path, seed);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, opts);
    if (diagnose_cmd->parsed()) return cmd_diagnose(cfg, opts);
    if (gamma_cmd->parsed()) return cmd_gamma(cfg, opts);
    if (shadow_cmd->parsed()) return cmd_shadow(cfg, opts);
    if (calibrate_cmd->parsed()) return cmd_calibrate(cfg, opts);
    if (frontier_cmd->parsed()) return cmd_frontier(cfg, opts);
  } catch (const Error& e) {
    std::cerr << "eeperf: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "eeperf: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace eeperf::cli

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

#include "eeperf/cli/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "eeperf/error.hpp"

namespace eeperf::cli {

namespace {

Json number_or_null(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

std::string cell(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,E_mean,dH,S_vn_bits,S2_bits\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    fmt::print(out, "{},{},{},{},{}\n", format_number(traj.times[i]), format_number(traj.energy_mean[i]),
               format_number(traj.dh[i]),
               i < traj.s_vn_bits.size() ? format_number(traj.s_vn_bits[i]) : std::string(),
               i < traj.s2_bits.size() ? format_number(traj.s2_bits[i]) : std::string());
  }
}

void write_distribution_csv(std::ostream& out, const EmpiricalDistribution& dist) {
  out << "outcome_index,count,p_hat\n";
  for (std::size_t i = 0; i < dist.m_out(); ++i)
    fmt::print(out, "{},{},{}\n", i, format_number(dist.counts()[i]), format_number(dist.probabilities()[i]));
}

void write_report_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
  out << "run_id,C,sigma_avail,S_E,y,eta_qsl,eta_lr,ratio,gate_a,gate_b,residual\n";
  for (const auto& p : points) {
    const auto& r = p.report;
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{}\n", p.run_id, format_number(p.complexity_x),
               format_number(p.sigma_avail), format_number(p.s_e), format_number(p.resource_output_y.value()),
               cell(r.eta_qsl), format_number(r.eta_lr), cell(r.ratio), r.gate_a_pass ? "pass" : "fail",
               r.gate_b_pass ? "pass" : "fail", cell(r.identity_residual));
  }
}

namespace {

double max_x(const std::vector<FrontierPoint>& points) {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, p.complexity_x);
  return m;
}

}  // namespace

void write_envelope_csv(std::ostream& out, const std::vector<FrontierPoint>& points, const EnvelopeFit& fit) {
  const double x1 = max_x(points);
  out << "line,slope,x0,y0,x1,y1\n";
  fmt::print(out, "theoretical,{},0,0,{},{}\n", format_number(fit.theoretical_slope), format_number(x1),
             format_number(fit.theoretical_slope * x1));
  fmt::print(out, "envelope,{},0,0,{},{}\n", format_number(fit.slope), format_number(x1),
             format_number(fit.slope * x1));
}

void write_frontier_svg(std::ostream& out, const std::vector<FrontierPoint>& points, const EnvelopeFit& fit) {
  const double x1 = std::max(max_x(points), 1e-12);
  double y1 = fit.theoretical_slope * x1;
  for (const auto& p : points) y1 = std::max(y1, p.resource_output_y.value());
  y1 = std::max(y1, 1e-12);
  constexpr double w = 640, h = 480, pad = 50;
  // Data coordinates are mapped by a single transform; marks carry raw values.
  const double sx = (w - 2 * pad) / x1, sy = (h - 2 * pad) / y1;
  fmt::print(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  fmt::print(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", w, h, w, h);
  fmt::print(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  fmt::print(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", pad, h - pad, w - pad, h - pad);
  fmt::print(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", pad, h - pad, pad, pad);
  fmt::print(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">C</text>\n", w / 2, h - 15);
  fmt::print(out, "<text x=\"15\" y=\"{}\" font-size=\"14\" transform=\"rotate(-90 15 {})\">sigma_avail * S_E</text>\n",
             h / 2, h / 2);
  fmt::print(out, "<g transform=\"translate({} {}) scale({} {})\">\n", pad, h - pad, format_number(sx), format_number(-sy));
  fmt::print(out,
             "<line class=\"theoretical\" x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" "
             "stroke-dasharray=\"6 4\" vector-effect=\"non-scaling-stroke\"/>\n",
             format_number(x1), format_number(fit.theoretical_slope * x1));
  fmt::print(out,
             "<line class=\"envelope\" x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\" stroke=\"crimson\" "
             "vector-effect=\"non-scaling-stroke\"/>\n",
             format_number(x1), format_number(fit.slope * x1));
  // Zero-length round-capped lines keep markers circular under the
  // anisotropic data transform.
  for (const auto& p : points) {
    const auto x = format_number(p.complexity_x), y = format_number(p.resource_output_y.value());
    fmt::print(out,
               "<line class=\"run\" data-run=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" "
               "stroke-width=\"8\" stroke-linecap=\"round\" vector-effect=\"non-scaling-stroke\"/>\n",
               p.run_id, x, y, x, y);
  }
  fmt::print(out, "</g>\n</svg>\n");
}

Json to_json(const EfficiencyReport& r) {
  Json j;
  j["eta_qsl"] = number_or_null(r.eta_qsl);
  j["eta_lr"] = r.eta_lr;
  j["eta_qsl_k"] = number_or_null(r.eta_qsl_k);
  j["eta_qsl_k_clamped"] = r.eta_qsl_k_clamped;
  j["ratio"] = number_or_null(r.ratio);
  j["gate_a_pass"] = r.gate_a_pass;
  j["gate_b_pass"] = r.gate_b_pass;
  j["identity_residual"] = number_or_null(r.identity_residual);
  j["proxy_residual"] = number_or_null(r.proxy_residual);
  j["dimensions_ok"] = r.dimensions_ok;
  j["dimensions"] = {{"lhs", {{"energy", 1}, {"time", 0}}}, {"rhs", {{"energy", 1}, {"time", 0}}}};
  j["trivial"] = r.trivial;
  j["designation"] = to_string(r.designation);
  j["complexity"] = r.complexity;
  if (!r.c_opt_source.empty()) j["c_opt_source"] = r.c_opt_source;
  if (r.designation == Designation::c_exp) j["designation_note"] = "upper-bound input: C_exp stands in for C_opt";
  return j;
}

Json to_json(const RunInputs& in) {
  Json j;
  j["sigma_avail"] = {{"value", in.sigma_avail.value()}, {"unit", "energy"}};
  j["delta_t"] = {{"value", in.delta_t.value()}, {"unit", "time"}};
  j["s_e_bits"] = in.s_e;
  j["c_opt"] = number_or_null(in.c_opt);
  j["c_exp"] = in.c_exp;
  j["j_bound"] = {{"value", in.j_bound.value()}, {"unit", "energy"}};
  j["gamma"] = in.gamma;
  j["hbar"] = {{"value", in.hbar.value()}, {"unit", "energy*time"}};
  j["designation"] = to_string(in.designation);
  return j;
}

Json to_json(const GammaEstimate& g) {
  return Json{{"gamma", g.gamma},
              {"c_constant", g.c_constant},
              {"boundary_bonds", g.boundary_bonds},
              {"ensemble_size", g.ensemble_size},
              {"max_rate_observed_bits_per_time", g.max_rate_observed},
              {"entropy", to_string(g.measure)},
              {"window", to_string(g.window)}};
}

Json to_json(const ComplexityEstimate& c) {
  return Json{{"k_kl_bits", c.k_kl},         {"d_kl_to_uniform_bits", c.d_kl_to_uniform},
              {"shannon_bits", c.shannon_bits}, {"m_out", c.m_out},
              {"epsilon", c.epsilon},         {"f_epsilon_bits", c.f_epsilon},
              {"confidence", c.confidence}};
}

Json to_json(const CalibrationFit& f) {
  Json pts = Json::array();
  for (auto [c, k] : f.points) pts.push_back({c, k});
  return Json{{"c_g", f.c_g},
              {"k_m", f.k_m},
              {"intercept", f.intercept},
              {"residual_rms", f.residual_rms},
              {"r_squared", f.r_squared},
              {"n_points", f.n_points()},
              {"points", pts}};
}

Json to_json(const RandomnessReport& r) {
  return Json{{"n_bits", r.n_bits},
              {"alpha_sig", r.alpha_sig},
              {"block_length", r.block_length},
              {"monobit", {{"p_value", r.p_monobit}, {"pass", r.monobit_pass}}},
              {"block_frequency", {{"p_value", r.p_block_frequency}, {"pass", r.block_frequency_pass}}},
              {"runs", {{"p_value", r.p_runs}, {"pass", r.runs_pass}}},
              {"all_pass", r.all_pass()}};
}

Json to_json(const EnvelopeFit& f) {
  Json j{{"slope", f.slope},
         {"theoretical_slope", f.theoretical_slope},
         {"slope_ratio", f.slope_ratio},
         {"all_below_line", f.all_below_line},
         {"max_excess", f.max_excess},
         {"envelope_points", f.envelope_indices}};
  j["r_exp"] = number_or_null(f.r_exp);
  return j;
}

CalibrationFit calibration_from_json(const Json& j) {
  try {
    CalibrationFit f;
    const Json& body = j.contains("calibration") ? j.at("calibration") : j;
    f.c_g = body.at("c_g").get<double>();
    f.k_m = body.at("k_m").get<double>();
    f.intercept = body.value("intercept", -f.c_g * f.k_m);
    f.residual_rms = body.value("residual_rms", 0.0);
    f.r_squared = body.value("r_squared", 1.0);
    if (body.contains("points"))
      for (const auto& p : body.at("points")) f.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    require(f.c_g > 0.0, ErrorCode::calibration_failure, "calibration file has a non-positive slope");
    return f;
  } catch (const Json::exception& e) {
    fail(ErrorCode::config, std::string("malformed calibration file: ") + e.what());
  }
}

CalibrationFit read_calibration(const std::string& path) {
  try {
    return calibration_from_json(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::config, "calibration file " + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, "cannot open " + path + " for writing");
  out << content;
  require(static_cast<bool>(out), ErrorCode::io, "failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::config, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace eeperf::cli

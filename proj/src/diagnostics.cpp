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

#include "eeperf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eeperf/error.hpp"

namespace eeperf {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double relative_residual(const Quantity& lhs, const Quantity& rhs) {
  const double diff = std::abs((lhs - rhs).value());
  const double scale = std::max(std::abs(lhs.value()), std::abs(rhs.value()));
  return scale > 0.0 ? diff / scale : 0.0;
}

}  // namespace

std::string to_string(Designation d) { return d == Designation::c_opt ? "C_opt" : "C_exp"; }

double RunInputs::complexity() const {
  if (designation == Designation::c_opt) {
    require(c_opt.has_value(), ErrorCode::invalid_argument, "C_opt designated but not supplied");
    return *c_opt;
  }
  return c_exp;
}

double eta_qsl(const RunInputs& in) {
  require(in.delta_t.in(dims::time) > 0.0, ErrorCode::degenerate_interval, "delta t must be positive");
  require(in.sigma_avail.in(dims::energy) > 0.0, ErrorCode::zero_resource,
          "sigma_avail is zero; the speed limit needs non-trivial dynamics");
  const double c = in.complexity();
  require(c > 0.0, ErrorCode::trivial_dynamics, "complexity input is zero");
  const Quantity eta = kHalfPi * in.hbar * pure(c) / (in.sigma_avail * in.delta_t);
  return eta.in(dims::none);
}

double eta_lr(const RunInputs& in) {
  require(in.delta_t.in(dims::time) > 0.0, ErrorCode::degenerate_interval, "delta t must be positive");
  require(in.j_bound.in(dims::energy) > 0.0 && in.gamma > 0.0, ErrorCode::trivial_dynamics,
          "J and gamma must be positive for the entanglement channel");
  const Quantity eta = pure(in.s_e) * in.hbar / (pure(in.gamma) * in.j_bound * in.delta_t);
  return eta.in(dims::none);
}

ProxyEta eta_qsl_k(const RunInputs& in) {
  require(in.k_kl.has_value() && in.calibration.has_value(), ErrorCode::missing_calibration,
          "proxy efficiency needs K_KL and a calibration fit");
  require(in.delta_t.in(dims::time) > 0.0, ErrorCode::degenerate_interval, "delta t must be positive");
  require(in.sigma_avail.in(dims::energy) > 0.0, ErrorCode::zero_resource, "sigma_avail is zero");
  const double excess = in.k_kl->k_kl - in.calibration->k_m;
  ProxyEta out;
  if (excess <= 0.0) {
    out.clamped = excess < 0.0;
    return out;
  }
  const Quantity eta =
      kHalfPi * in.hbar * pure(in.calibration->c_g * excess) / (in.sigma_avail * in.delta_t);
  out.value = eta.in(dims::none);
  return out;
}

GateVerdict compliance_gates(const RunInputs& in) {
  const Quantity spent = in.sigma_avail * in.delta_t;
  const Quantity needed = kHalfPi * in.hbar * pure(in.complexity());
  GateVerdict v;
  v.gate_a = spent.in(dims::action) >= needed.in(dims::action) * (1.0 - kGateTolerance);
  const double cap = (pure(in.gamma) * in.j_bound * in.delta_t / in.hbar).in(dims::none);
  // The absolute floor absorbs round-off in entropies of product states.
  v.gate_b = in.s_e <= cap * (1.0 + kGateTolerance) + 1e-12;
  return v;
}

IdentityCheck rect_eta_identity(const RunInputs& in) {
  const double eq = eta_qsl(in);
  const double el = eta_lr(in);
  IdentityCheck out;
  out.lhs = in.sigma_avail * pure(in.s_e);
  out.rhs = pure(el / eq) * (kHalfPi * pure(in.gamma) * in.j_bound) * pure(in.complexity());
  out.residual = relative_residual(out.lhs, out.rhs);
  out.dimensions_ok = out.lhs.dimension() == dims::energy && out.rhs.dimension() == dims::energy;
  if (in.k_kl && in.calibration) {
    const auto ek = eta_qsl_k(in);
    if (ek.value > 0.0) {
      const double proxy_c = in.calibration->c_g * (in.k_kl->k_kl - in.calibration->k_m);
      out.proxy_rhs = pure(el / ek.value) * (kHalfPi * pure(in.gamma) * in.j_bound) * pure(proxy_c);
      out.proxy_residual = relative_residual(out.lhs, *out.proxy_rhs);
      out.dimensions_ok = out.dimensions_ok && out.proxy_rhs->dimension() == dims::energy;
    }
  }
  return out;
}

EfficiencyReport evaluate(const RunInputs& in) {
  EfficiencyReport r;
  r.designation = in.designation;
  r.complexity = in.complexity();
  r.c_opt_source = in.c_opt_source;
  const bool has_resource = in.sigma_avail.in(dims::energy) > 0.0;
  const bool has_channel = in.j_bound.in(dims::energy) > 0.0 && in.gamma > 0.0;
  r.trivial = r.complexity <= 0.0 || !has_resource || !has_channel;
  const auto gates = compliance_gates(in);
  r.gate_a_pass = gates.gate_a;
  r.gate_b_pass = gates.gate_b;
  if (has_channel) r.eta_lr = eta_lr(in);
  if (has_resource && r.complexity > 0.0) {
    r.eta_qsl = eta_qsl(in);
    if (*r.eta_qsl > 0.0) r.ratio = r.eta_lr / *r.eta_qsl;
  }
  if (has_resource && in.k_kl && in.calibration) {
    const auto ek = eta_qsl_k(in);
    r.eta_qsl_k = ek.value;
    r.eta_qsl_k_clamped = ek.clamped;
  }
  if (r.eta_qsl && has_channel) {
    const auto id = rect_eta_identity(in);
    r.identity_residual = id.residual;
    r.proxy_residual = id.proxy_residual;
    r.dimensions_ok = id.dimensions_ok;
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::propagation_limited: return "propagation-limited";
    case Verdict::resource_limited: return "resource-limited";
    case Verdict::balanced: return "balanced";
  }
  return "unknown";
}

Diagnosis diagnose(const EfficiencyReport& report, double band) {
  require(report.ratio.has_value(), ErrorCode::invalid_argument, "efficiency ratio is undefined for this run");
  require(band >= 0.0 && band < 1.0, ErrorCode::invalid_argument, "band must lie in [0, 1)");
  const double r = *report.ratio;
  if (r < 1.0 - band)
    return {Verdict::propagation_limited,
            "entanglement output lags its Lieb-Robinson budget relative to the energy budget; "
            "propagation is the bottleneck"};
  if (r > 1.0 + band)
    return {Verdict::resource_limited,
            "energy spread is used inefficiently relative to entanglement output; "
            "the dynamical resource is the bottleneck"};
  return {Verdict::balanced, "both channels run at comparable efficiency"};
}

EnvelopeFit fit_envelope(const std::vector<FrontierPoint>& points, double gamma, double j, int bins, int top_k) {
  require(bins >= 1 && top_k >= 1, ErrorCode::invalid_argument, "bins and top_k must be positive");
  EnvelopeFit fit;
  fit.theoretical_slope = kHalfPi * gamma * j;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].complexity_x > 0.0) live.push_back(i);
  fit.all_below_line = true;
  for (const auto& p : points) {
    const double line = fit.theoretical_slope * p.complexity_x;
    const double y = p.resource_output_y.in(dims::energy);
    if (y > line * (1.0 + kGateTolerance) + 1e-12) fit.all_below_line = false;
    if (line > 0.0) fit.max_excess = std::max(fit.max_excess, y / line - 1.0);
  }

  if (live.empty()) return fit;
  double lo = points[live.front()].complexity_x, hi = lo;
  for (auto i : live) {
    lo = std::min(lo, points[i].complexity_x);
    hi = std::max(hi, points[i].complexity_x);
  }
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  std::vector<std::vector<std::size_t>> binned(static_cast<std::size_t>(bins));
  for (auto i : live) {
    const int b = std::min(bins - 1, static_cast<int>((points[i].complexity_x - lo) / width));
    binned[b].push_back(i);
  }
  double sxy = 0.0, sxx = 0.0;
  for (auto& bin : binned) {
    std::sort(bin.begin(), bin.end(), [&](auto a, auto b) {
      return points[a].resource_output_y.value() > points[b].resource_output_y.value();
    });
    for (std::size_t k = 0; k < bin.size() && k < static_cast<std::size_t>(top_k); ++k) {
      const auto& p = points[bin[k]];
      sxy += p.complexity_x * p.resource_output_y.value();
      sxx += p.complexity_x * p.complexity_x;
      fit.envelope_indices.push_back(bin[k]);
    }
  }
  fit.slope = sxy / sxx;
  fit.slope_ratio = fit.theoretical_slope > 0.0 ? fit.slope / fit.theoretical_slope : 0.0;

  double r_sum = 0.0;
  int r_n = 0;
  for (auto i : live)
    if (points[i].c_exp > 0.0) {
      r_sum += points[i].complexity_x / points[i].c_exp;
      ++r_n;
    }
  if (r_n > 0) fit.r_exp = r_sum / r_n;
  return fit;
}

}  // namespace eeperf

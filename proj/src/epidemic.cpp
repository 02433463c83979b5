// Copyright 2026 The epiphase Authors
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

#include "epiphase/epidemic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace epiphase {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void EpidemicParams::validate() const {
  require(finite(r0) && r0 > 0, "epidemic: r0 must be > 0");
  require(finite(delta) && delta > 0, "epidemic: delta must be > 0");
  require(finite(gamma) && gamma > 0, "epidemic: gamma must be > 0");
  require(finite(population) && population > 0, "epidemic: population must be > 0");
  require(finite(exposed0) && exposed0 >= 0 && exposed0 < 1,
          "epidemic: exposed0 must lie in [0, 1)");
}

void PolicyPlan::validate() const {
  require(finite(horizon) && horizon > 0, "plan: horizon must be > 0");
  require(finite(tau0) && tau0 >= 0, "plan: tau0 must be >= 0");
  require(finite(tau1) && tau1 >= 0, "plan: tau1 must be >= 0");
  require(finite(tau2) && tau2 >= 0, "plan: tau2 must be >= 0");
  require(tau0 + tau1 + tau2 <= horizon,
          "plan: tau0 + tau1 + tau2 must not exceed the horizon");
  require(finite(r1) && r1 >= 0, "plan: r1 must be >= 0");
  require(finite(r2) && r2 >= 0, "plan: r2 must be >= 0");
  require(finite(r3) && r3 >= 0, "plan: r3 must be >= 0");
}

double DriftModel::slope(int phase) const {
  switch (phase) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    default: return 0.0;
  }
}

void DriftModel::validate(double horizon) const {
  require(finite(a1) && a1 >= 0, "drift: a1 must be >= 0");
  require(finite(a2) && a2 >= 0, "drift: a2 must be >= 0");
  require(finite(a3) && a3 >= 0, "drift: a3 must be >= 0");
  // No phase can outlast the horizon, so a_k * horizon <= 1 guarantees the
  // attenuation factor stays nonnegative for every admissible plan.
  const double worst = std::max({a1, a2, a3}) * horizon;
  require(worst <= 1.0,
          "drift: attenuation would become negative within the horizon "
          "(max slope * horizon = " + std::to_string(worst) + " > 1)");
}

void IntegratorConfig::validate() const {
  require(substeps_per_day >= 1, "integrator: substeps_per_day must be >= 1");
  if (method == IntegratorMethod::kAdaptiveRk45) {
    require(finite(abs_tol) && abs_tol > 0, "integrator: abs_tol must be > 0");
    require(finite(rel_tol) && rel_tol > 0, "integrator: rel_tol must be > 0");
  }
}

int phase_index(double t, const PolicyPlan& plan) {
  if (!(t >= 0 && t <= plan.horizon)) {
    throw ConfigError("phase_index: t = " + std::to_string(t) +
                      " outside [0, " + std::to_string(plan.horizon) + "]");
  }
  if (t < plan.tau0) return 0;
  if (t < plan.tau0 + plan.tau1) return 1;
  if (t < plan.tau0 + plan.tau1 + plan.tau2) return 2;
  return 3;
}

namespace {

double phase_start(int phase, const PolicyPlan& plan) {
  switch (phase) {
    case 1: return plan.tau0;
    case 2: return plan.tau0 + plan.tau1;
    case 3: return plan.tau0 + plan.tau1 + plan.tau2;
    default: return 0.0;
  }
}

double phase_target(int phase, const PolicyPlan& plan) {
  switch (phase) {
    case 1: return plan.r1;
    case 2: return plan.r2;
    default: return plan.r3;
  }
}

}  // namespace

double attenuation_at(double t, const PolicyPlan& plan, const DriftModel& drift) {
  const int phase = phase_index(t, plan);
  if (phase == 0) return 1.0;
  const double value = 1.0 - drift.slope(phase) * (t - phase_start(phase, plan));
  if (value < 0.0) {
    throw NumericError("attenuation negative at t = " + std::to_string(t) +
                       " (drift slope too large for the horizon)");
  }
  return value;
}

double control_at(double t, const PolicyPlan& plan, const EpidemicParams& params) {
  const int phase = phase_index(t, plan);
  if (phase == 0) return 0.0;
  return params.delta * (params.r0 - phase_target(phase, plan));
}

double transmission_at(double t, const PolicyPlan& plan, const DriftModel& drift,
                       const EpidemicParams& params) {
  const double beta =
      params.r0 * params.delta - control_at(t, plan, params) * attenuation_at(t, plan, drift);
  if (beta < 0.0) {
    throw NumericError("transmission rate negative at t = " + std::to_string(t));
  }
  return beta;
}

double reproduction_at(double t, const PolicyPlan& plan, const DriftModel& drift,
                       const EpidemicParams& params) {
  const int phase = phase_index(t, plan);
  if (phase == 0) return params.r0;
  const double a = attenuation_at(t, plan, drift);
  return params.r0 - (params.r0 - phase_target(phase, plan)) * a;
}

PhaseCoeffs phase_coeffs(int phase, const PolicyPlan& plan, const DriftModel& drift,
                         const EpidemicParams& params) {
  if (phase == 0) return {params.r0 * params.delta, 0.0};
  // beta(theta) = r0*d - d*(r0-rk)*(1 - a*theta) = d*rk + d*(r0-rk)*a*theta
  return make_phase_coeffs(phase_target(phase, plan), drift.slope(phase), params);
}

namespace detail {

bool rk45_day(SeirState& st, double day_theta, double abs_tol, double rel_tol,
              double& h, const PhaseCoeffs& pc, const SeirRates& rates) {
  // Fehlberg 4(5) tableau.
  static constexpr double a2 = 1.0 / 4, a3 = 3.0 / 8, a4 = 12.0 / 13, a5 = 1.0, a6 = 1.0 / 2;
  static constexpr double b21 = 1.0 / 4;
  static constexpr double b31 = 3.0 / 32, b32 = 9.0 / 32;
  static constexpr double b41 = 1932.0 / 2197, b42 = -7200.0 / 2197, b43 = 7296.0 / 2197;
  static constexpr double b51 = 439.0 / 216, b52 = -8.0, b53 = 3680.0 / 513, b54 = -845.0 / 4104;
  static constexpr double b61 = -8.0 / 27, b62 = 2.0, b63 = -3544.0 / 2565, b64 = 1859.0 / 4104,
                          b65 = -11.0 / 40;
  static constexpr double c1 = 25.0 / 216, c3 = 1408.0 / 2565, c4 = 2197.0 / 4104, c5 = -1.0 / 5;
  static constexpr double d1 = 16.0 / 135, d3 = 6656.0 / 12825, d4 = 28561.0 / 56430,
                          d5 = -9.0 / 50, d6 = 2.0 / 55;

  const double g = rates.gamma, d = rates.delta;
  auto deriv = [&](const std::array<double, 4>& y, double th, std::array<double, 4>& dy) {
    const double beta = pc.beta0 + pc.beta1 * th;
    const double f = beta * y[2] * y[0];
    dy[0] = -f;
    dy[1] = f - g * y[1];
    dy[2] = g * y[1] - d * y[2];
    dy[3] = d * y[2];
  };

  double local = 0.0;  // time elapsed within the day
  while (local < 1.0) {
    double step = std::min(h, 1.0 - local);
    const double th = day_theta + local;
    const std::array<double, 4> y{st.s, st.e, st.i, st.r};
    std::array<double, 4> k1, k2, k3, k4, k5, k6, y4, y5, tmp;
    deriv(y, th, k1);
    for (int j = 0; j < 4; ++j) tmp[j] = y[j] + step * (b21 * k1[j]);
    deriv(tmp, th + a2 * step, k2);
    for (int j = 0; j < 4; ++j) tmp[j] = y[j] + step * (b31 * k1[j] + b32 * k2[j]);
    deriv(tmp, th + a3 * step, k3);
    for (int j = 0; j < 4; ++j) tmp[j] = y[j] + step * (b41 * k1[j] + b42 * k2[j] + b43 * k3[j]);
    deriv(tmp, th + a4 * step, k4);
    for (int j = 0; j < 4; ++j)
      tmp[j] = y[j] + step * (b51 * k1[j] + b52 * k2[j] + b53 * k3[j] + b54 * k4[j]);
    deriv(tmp, th + a5 * step, k5);
    for (int j = 0; j < 4; ++j)
      tmp[j] = y[j] + step * (b61 * k1[j] + b62 * k2[j] + b63 * k3[j] + b64 * k4[j] + b65 * k5[j]);
    deriv(tmp, th + a6 * step, k6);

    double err = 0.0;
    for (int j = 0; j < 4; ++j) {
      y4[j] = y[j] + step * (c1 * k1[j] + c3 * k3[j] + c4 * k4[j] + c5 * k5[j]);
      y5[j] = y[j] + step * (d1 * k1[j] + d3 * k3[j] + d4 * k4[j] + d5 * k5[j] + d6 * k6[j]);
      const double scale = abs_tol + rel_tol * std::max(std::abs(y[j]), std::abs(y5[j]));
      err = std::max(err, std::abs(y5[j] - y4[j]) / scale);
    }

    if (err <= 1.0) {
      st = {y5[0], y5[1], y5[2], y5[3]};
      if (!(clamp_compartment(st.s) && clamp_compartment(st.e) &&
            clamp_compartment(st.i) && clamp_compartment(st.r))) {
        return false;
      }
      local += step;
    }
    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    h = step * factor;
    if (!(std::isfinite(h) && h > 1e-12)) return false;
  }
  return true;
}

}  // namespace detail

Trajectory simulate_policy(const EpidemicParams& params, const PolicyPlan& plan,
                           const DriftModel& drift, const IntegratorConfig& cfg,
                           double icu_fraction) {
  params.validate();
  plan.validate();
  drift.validate(plan.horizon);
  cfg.validate();
  if (!(is_integral_day(plan.tau0) && is_integral_day(plan.tau1) &&
        is_integral_day(plan.tau2) && is_integral_day(plan.horizon))) {
    throw ConfigError("simulate_policy: phase durations and horizon must be whole days");
  }

  const int horizon = static_cast<int>(plan.horizon);
  const SeirRates rates{params.gamma, params.delta};

  Trajectory traj;
  traj.population = params.population;
  traj.s.reserve(horizon + 1);
  traj.e.reserve(horizon + 1);
  traj.i.reserve(horizon + 1);
  traj.r.reserve(horizon + 1);

  SeirState st{1.0 - params.exposed0, params.exposed0, 0.0, 0.0};
  auto push = [&](const SeirState& x) {
    traj.s.push_back(x.s);
    traj.e.push_back(x.e);
    traj.i.push_back(x.i);
    traj.r.push_back(x.r);
  };
  push(st);

  const int bounds[5] = {0, static_cast<int>(plan.tau0),
                         static_cast<int>(plan.tau0 + plan.tau1),
                         static_cast<int>(plan.tau0 + plan.tau1 + plan.tau2), horizon};
  for (int phase = 0; phase < 4; ++phase) {
    const int n_days = bounds[phase + 1] - bounds[phase];
    if (n_days <= 0) continue;
    const PhaseCoeffs pc = phase_coeffs(phase, plan, drift, params);
    try {
      st = integrate_phase_segment(st, pc, rates, cfg, 0, n_days,
                                   [&](int, const SeirState& x) {
                                     push(x);
                                     return true;
                                   });
    } catch (const NumericError& err) {
      throw NumericError(std::string(err.what()) + " in phase " + std::to_string(phase) +
                         " starting at day " + std::to_string(bounds[phase]));
    }
  }

  traj.r_eff.resize(horizon + 1);
  traj.icu_load.resize(horizon + 1);
  for (int day = 0; day <= horizon; ++day) {
    traj.r_eff[day] = reproduction_at(day, plan, drift, params);
    traj.icu_load[day] = icu_fraction * params.population * traj.i[day];
  }

  // Invariant sweep: conservation, bounds, monotonicity.
  double prev_s = traj.s[0], prev_r = traj.r[0];
  for (int day = 0; day <= horizon; ++day) {
    const double total = traj.s[day] + traj.e[day] + traj.i[day] + traj.r[day];
    if (std::abs(total - 1.0) > 1e-9) {
      throw NumericError("conservation violated at day " + std::to_string(day) +
                         ": s+e+i+r = " + std::to_string(total));
    }
    for (double v : {traj.s[day], traj.e[day], traj.i[day], traj.r[day]}) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw NumericError("compartment out of [0,1] at day " + std::to_string(day));
      }
    }
    if (traj.s[day] > prev_s || traj.r[day] < prev_r) {
      throw NumericError("monotonicity violated at day " + std::to_string(day));
    }
    prev_s = traj.s[day];
    prev_r = traj.r[day];
  }
  return traj;
}

}  // namespace epiphase

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

#ifndef EPIPHASE_EPIDEMIC_HPP_
#define EPIPHASE_EPIDEMIC_HPP_

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "epiphase/errors.hpp"

namespace epiphase {

// Biological and demographic constants of the SEIR model.
struct EpidemicParams {
  double r0 = 0;          // natural reproduction number, dimensionless
  double delta = 0;       // removal rate, 1/day (1/delta = recovery period)
  double gamma = 0;       // incubation-exit rate, 1/day
  double population = 0;  // persons
  double exposed0 = 0;    // initially exposed fraction, in [0, 1)

  void validate() const;
};

// A four-phase management policy: a free phase of length tau0, a severe
// (lockdown) phase of length tau1 targeting r1, a post-lockdown phase of
// length tau2 targeting r2, and an adjustment phase targeting r3 that runs
// to the horizon. Durations in days.
struct PolicyPlan {
  double tau0 = 0;
  double tau1 = 0;
  double tau2 = 0;
  double r1 = 0;
  double r2 = 0;
  double r3 = 0;
  double horizon = 0;

  double lockdown_start() const { return tau0; }
  double post_start() const { return tau0 + tau1; }
  double adjustment_start() const { return tau0 + tau1 + tau2; }

  void validate() const;
};

// Per-phase attenuation slopes (1/day): within phase k the control action is
// multiplied by 1 - a_k * (t - phase_start), resetting to 1 whenever a new
// phase begins. Models compliance eroding between policy updates.
struct DriftModel {
  double a1 = 0;
  double a2 = 0;
  double a3 = 0;

  double slope(int phase) const;  // phase in {1,2,3}; 0 for the free phase

  // Rejects any slope that could drive the attenuation factor negative
  // within the horizon, whatever the phase boundaries.
  void validate(double horizon) const;
};

enum class IntegratorMethod {
  kFixedRk4,       // classical 4th order, fixed substeps per day
  kAdaptiveRk45,   // Fehlberg 4(5) with per-step error control
};

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::kFixedRk4;
  int substeps_per_day = 20;
  double abs_tol = 1e-10;  // adaptive only
  double rel_tol = 1e-8;   // adaptive only

  void validate() const;
};

struct SeirState {
  double s = 0;
  double e = 0;
  double i = 0;
  double r = 0;
};

// Daily-sampled trajectory on the grid t = 0, 1, ..., horizon.
struct Trajectory {
  std::vector<double> s, e, i, r;
  std::vector<double> r_eff;     // effective reproduction number
  std::vector<double> icu_load;  // icu_fraction * population * i(t), persons
  double population = 0;

  int horizon() const { return static_cast<int>(s.size()) - 1; }
  SeirState state_at(int day) const { return {s[day], e[day], i[day], r[day]}; }
};

// ---------------------------------------------------------------------------
// Closed-form policy evaluation at a time point.

// Phase of a policy at time t: 0 before tau0, then 1, 2 and 3 on the
// half-open intervals [tau0, tau0+tau1), [tau0+tau1, tau0+tau1+tau2),
// [tau0+tau1+tau2, horizon]. Throws outside [0, horizon].
int phase_index(double t, const PolicyPlan& plan);

// Attenuation factor in [0, 1]; exactly 1 in phase 0 and at each phase
// start. Throws NumericError if a drift slope drives it negative.
double attenuation_at(double t, const PolicyPlan& plan, const DriftModel& drift);

// Control action u(t) = delta * (r0 - r_k) in phase k, 0 in phase 0 (1/day).
double control_at(double t, const PolicyPlan& plan, const EpidemicParams& params);

// Transmission rate beta(t) = r0 * delta - u(t) * a(t) (1/day).
double transmission_at(double t, const PolicyPlan& plan, const DriftModel& drift,
                       const EpidemicParams& params);

// Effective reproduction number r0 - (r0 - r_k) * a(t); equals r_k at the
// start of phase k and drifts linearly toward r0 within the phase.
double reproduction_at(double t, const PolicyPlan& plan, const DriftModel& drift,
                       const EpidemicParams& params);

// ---------------------------------------------------------------------------
// Integration.

// Within one phase the transmission rate is linear in the time elapsed since
// the phase start: beta(theta) = beta0 + beta1 * theta. This is the exact
// algebraic rewrite of r0*delta - u*a(theta) for constant per-phase control.
struct PhaseCoeffs {
  double beta0 = 0;
  double beta1 = 0;
};

// Coefficients of a controlled phase targeting rk with attenuation slope ak.
inline PhaseCoeffs make_phase_coeffs(double rk, double ak, const EpidemicParams& params) {
  return {params.delta * rk, params.delta * (params.r0 - rk) * ak};
}

PhaseCoeffs phase_coeffs(int phase, const PolicyPlan& plan, const DriftModel& drift,
                         const EpidemicParams& params);

struct SeirRates {
  double gamma = 0;
  double delta = 0;
};

// Tolerated floating-point undershoot below zero. A larger undershoot means
// the integration itself is broken and surfaces as a NumericError.
inline constexpr double kUndershootTolerance = 1e-12;

// Clamps a compartment that undershoots zero within tolerance; returns false
// when the undershoot exceeds it.
inline bool clamp_compartment(double& x) {
  if (x < 0.0) {
    if (x < -kUndershootTolerance) return false;
    x = 0.0;
  }
  return true;
}

// One classical RK4 substep of width h at phase-local time theta.
//
// Every integration path in the project (plain simulation, memoized prefix
// reuse, batched candidate evaluation) funnels through this function so that
// shared policy prefixes produce bitwise-identical states no matter which
// path computed them.
inline void rk4_substep(double& s, double& e, double& i, double& r, double theta,
                        double h, const PhaseCoeffs& pc, const SeirRates& rates) {
  const double g = rates.gamma;
  const double d = rates.delta;
  const double h2 = 0.5 * h;

  const double ba = pc.beta0 + pc.beta1 * theta;
  const double f1 = ba * i * s;
  const double ks1 = -f1;
  const double ke1 = f1 - g * e;
  const double ki1 = g * e - d * i;
  const double kr1 = d * i;

  const double bm = pc.beta0 + pc.beta1 * (theta + h2);
  const double s2 = s + h2 * ks1;
  const double e2 = e + h2 * ke1;
  const double i2 = i + h2 * ki1;
  const double f2 = bm * i2 * s2;
  const double ks2 = -f2;
  const double ke2 = f2 - g * e2;
  const double ki2 = g * e2 - d * i2;
  const double kr2 = d * i2;

  const double s3 = s + h2 * ks2;
  const double e3 = e + h2 * ke2;
  const double i3 = i + h2 * ki2;
  const double f3 = bm * i3 * s3;
  const double ks3 = -f3;
  const double ke3 = f3 - g * e3;
  const double ki3 = g * e3 - d * i3;
  const double kr3 = d * i3;

  const double bb = pc.beta0 + pc.beta1 * (theta + h);
  const double s4 = s + h * ks3;
  const double e4 = e + h * ke3;
  const double i4 = i + h * ki3;
  const double f4 = bb * i4 * s4;
  const double ks4 = -f4;
  const double ke4 = f4 - g * e4;
  const double ki4 = g * e4 - d * i4;
  const double kr4 = d * i4;

  const double w = h / 6.0;
  s += w * (ks1 + 2.0 * ks2 + 2.0 * ks3 + ks4);
  e += w * (ke1 + 2.0 * ke2 + 2.0 * ke3 + ke4);
  i += w * (ki1 + 2.0 * ki2 + 2.0 * ki3 + ki4);
  r += w * (kr1 + 2.0 * kr2 + 2.0 * kr3 + kr4);
}

namespace detail {

// Advances one whole day with fixed RK4 substeps. day_theta is the whole-day
// offset from the phase start. Returns false on undershoot beyond tolerance.
inline bool rk4_day(SeirState& st, double day_theta, int substeps,
                    const PhaseCoeffs& pc, const SeirRates& rates) {
  const double h = 1.0 / substeps;
  for (int k = 0; k < substeps; ++k) {
    rk4_substep(st.s, st.e, st.i, st.r, day_theta + k * h, h, pc, rates);
    if (!(clamp_compartment(st.s) && clamp_compartment(st.e) &&
          clamp_compartment(st.i) && clamp_compartment(st.r))) {
      return false;
    }
  }
  return true;
}

// Adaptive Fehlberg 4(5) over one whole day; h carries across calls so the
// controller state evolves deterministically along a segment. Steps never
// cross a day boundary, which keeps daily samples exact and makes prefix
// reuse reproducible. Returns false on undershoot or non-finite state.
bool rk45_day(SeirState& st, double day_theta, double abs_tol, double rel_tol,
              double& h, const PhaseCoeffs& pc, const SeirRates& rates);

}  // namespace detail

// Integrates n_days whole days within a single phase, starting day_offset
// whole days after the phase start. Calls on_day(k, state) after each
// completed day, k = 1..n_days counted from the segment start; on_day returns
// false to stop early. Returns the state at the last integrated day.
// Throws NumericError on undershoot beyond tolerance or divergence.
template <typename OnDay>
SeirState integrate_phase_segment(SeirState st, const PhaseCoeffs& pc,
                                  const SeirRates& rates, const IntegratorConfig& cfg,
                                  int day_offset, int n_days, OnDay&& on_day) {
  double h45 = 0.25;  // initial step guess for the adaptive method
  for (int day = 0; day < n_days; ++day) {
    const double day_theta = static_cast<double>(day_offset + day);
    bool ok;
    if (cfg.method == IntegratorMethod::kFixedRk4) {
      ok = detail::rk4_day(st, day_theta, cfg.substeps_per_day, pc, rates);
    } else {
      ok = detail::rk45_day(st, day_theta, cfg.abs_tol, cfg.rel_tol, h45, pc, rates);
    }
    if (!ok || !std::isfinite(st.s + st.e + st.i + st.r)) {
      throw NumericError("integration failed at phase-local day " +
                         std::to_string(day_offset + day + 1) +
                         " (compartment undershoot or divergence)");
    }
    if (!on_day(day + 1, std::as_const(st))) break;
  }
  return st;
}

// Integrates the SEIR dynamics over [0, horizon] under the given plan,
// phase by phase so that integration steps never straddle a transmission
// discontinuity. Initial state: s = 1 - exposed0, e = exposed0, i = r = 0.
// icu_fraction scales the reported icu_load series (sigma in the ICU
// constraint); pass 0 if the series is not needed. Requires integer-valued
// phase boundaries and horizon.
Trajectory simulate_policy(const EpidemicParams& params, const PolicyPlan& plan,
                           const DriftModel& drift, const IntegratorConfig& cfg,
                           double icu_fraction = 0.0);

// True when v is a whole number of days.
inline bool is_integral_day(double v) { return std::nearbyint(v) == v; }

}  // namespace epiphase

#endif  // EPIPHASE_EPIDEMIC_HPP_

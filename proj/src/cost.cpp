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

#include "epiphase/cost.hpp"

#include <cmath>

namespace epiphase {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void CostParams::validate() const {
  require(std::isfinite(alpha) && alpha >= 0 && alpha <= 1, "cost: alpha must lie in [0, 1]");
  require(std::isfinite(ke) && ke > 0, "cost: ke must be > 0");
  require(std::isfinite(kh) && kh > 0, "cost: kh must be > 0");
  require(std::isfinite(mu1) && mu1 >= 1, "cost: mu1 must be >= 1");
  require(std::isfinite(mu2) && mu2 >= 1, "cost: mu2 must be >= 1");
  require(std::isfinite(sigma_icu) && sigma_icu >= 0 && sigma_icu <= 1,
          "cost: sigma_icu must lie in [0, 1]");
  require(std::isfinite(icu_capacity) && icu_capacity > 0, "cost: icu_capacity must be > 0");
  require(std::isfinite(t_min) && t_min >= 0, "cost: t_min must be >= 0");
  require(std::isfinite(r_gap) && r_gap >= 0, "cost: r_gap must be >= 0");
}

std::string constraint_name(ConstraintTag tag) {
  switch (tag) {
    case ConstraintTag::kIcu: return "icu";
    case ConstraintTag::kTMin: return "t_min";
    case ConstraintTag::kRGap: return "r_gap";
  }
  return "?";
}

double calibrate_ke(double delta_gdp, const EpidemicParams& params, double r1_ref,
                    double tau1_ref) {
  require(std::isfinite(delta_gdp) && delta_gdp > 0, "calibrate_ke: delta_gdp must be > 0");
  require(tau1_ref > 0, "calibrate_ke: tau1_ref must be > 0");
  require(r1_ref < params.r0,
          "calibrate_ke: r1_ref must be below r0 (zero control effort cannot "
          "account for a GDP loss)");
  const double q = params.r0 - r1_ref;
  return delta_gdp / (params.delta * params.delta * q * q * tau1_ref);
}

double economic_cost(const PolicyPlan& plan, const EpidemicParams& params,
                     const CostParams& cost) {
  const double d2 = params.delta * params.delta;
  const double q1 = params.r0 - plan.r1;
  const double q2 = params.r0 - plan.r2;
  const double q3 = params.r0 - plan.r3;
  const double rest = plan.horizon - plan.tau0 - plan.tau1 - plan.tau2;
  const double terms = q1 * q1 * plan.tau1 + q2 * q2 * plan.tau2 / (cost.mu1 * cost.mu1) +
                       q3 * q3 * rest / (cost.mu2 * cost.mu2);
  return cost.ke * d2 * terms;
}

double health_cost(const Trajectory& traj, const CostParams& cost) {
  return cost.kh * (traj.s.front() - traj.s.back());
}

Feasibility check_feasibility(const Trajectory& traj, const PolicyPlan& plan,
                              const CostParams& cost, const EpidemicParams& params) {
  const double sigma_n = cost.sigma_icu * params.population;
  for (double infected : traj.i) {
    if (sigma_n * infected > cost.icu_capacity) {
      return {false, ConstraintTag::kIcu};
    }
  }
  if (plan.tau1 < cost.t_min) return {false, ConstraintTag::kTMin};
  if (!r_gap_satisfied(plan.r1, plan.r2, cost.r_gap)) return {false, ConstraintTag::kRGap};
  return {true, std::nullopt};
}

Evaluation evaluate(const Trajectory& traj, const PolicyPlan& plan,
                    const EpidemicParams& params, const CostParams& cost) {
  Evaluation ev;
  ev.economic_cost = economic_cost(plan, params, cost);
  ev.health_cost = cost.kh * (traj.s.front() - traj.s.back());
  ev.total_cost = cost.alpha * ev.economic_cost + (1.0 - cost.alpha) * ev.health_cost;
  ev.infected_total = params.population * (traj.s.front() - traj.s.back());
  const double sigma_n = cost.sigma_icu * params.population;
  double peak = 0.0;
  for (double infected : traj.i) {
    const double load = sigma_n * infected;
    if (load > peak) peak = load;
  }
  ev.peak_icu = peak;
  const Feasibility feas = check_feasibility(traj, plan, cost, params);
  ev.feasible = feas.feasible;
  ev.violated = feas.violated;
  return ev;
}

Evaluation evaluate(const PolicyPlan& plan, const EpidemicParams& params,
                    const DriftModel& drift, const CostParams& cost,
                    const IntegratorConfig& cfg) {
  cost.validate();
  const Trajectory traj = simulate_policy(params, plan, drift, cfg, cost.sigma_icu);
  return evaluate(traj, plan, params, cost);
}

}  // namespace epiphase

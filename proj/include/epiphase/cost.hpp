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

#ifndef EPIPHASE_COST_HPP_
#define EPIPHASE_COST_HPP_

#include <optional>
#include <string>

#include "epiphase/epidemic.hpp"

namespace epiphase {

// Inputs of the economic conversion-factor calibration: ke is chosen so that
// a lockdown-only policy at (r1_ref, tau1_ref) costs exactly delta_gdp.
struct KeCalibration {
  double delta_gdp = 0;  // currency
  double r1_ref = 0;     // dimensionless
  double tau1_ref = 0;   // days
};

struct CostParams {
  double alpha = 0;         // trade-off weight in [0, 1]; 1 = economy only
  double ke = 0;            // economic conversion factor, currency * day
  double kh = 0;            // health conversion factor, persons
  double mu1 = 1;           // post-lockdown economic relief divisor, >= 1
  double mu2 = 1;           // adjustment-phase economic relief divisor, >= 1
  double sigma_icu = 0;     // fraction of infected requiring intensive care
  double icu_capacity = 0;  // persons
  double t_min = 0;         // minimum lockdown duration, days
  double r_gap = 0.2;       // required gap r2 - r1 (strict)

  void validate() const;
};

enum class ConstraintTag { kIcu, kTMin, kRGap };

std::string constraint_name(ConstraintTag tag);

struct Feasibility {
  bool feasible = false;
  std::optional<ConstraintTag> violated;
};

struct Evaluation {
  double economic_cost = 0;   // currency
  double health_cost = 0;     // persons, kh * (s(0) - s(T))
  double total_cost = 0;      // alpha * economic + (1 - alpha) * health
  double infected_total = 0;  // persons, population * (s(0) - s(T))
  double peak_icu = 0;        // max over daily samples of sigma * N * i(t)
  bool feasible = false;
  std::optional<ConstraintTag> violated;
};

// Guard against grid quantization noise: on a 0.1-quantized reproduction
// grid a nominal gap of exactly r_gap can evaluate a few ulps above it,
// which a strict comparison would wrongly accept.
inline constexpr double kRGapTolerance = 1e-9;

inline bool r_gap_satisfied(double r1, double r2, double r_gap) {
  return r2 - r1 > r_gap + kRGapTolerance;
}

// ke such that ke * delta^2 * (r0 - r1_ref)^2 * tau1_ref = delta_gdp.
double calibrate_ke(double delta_gdp, const EpidemicParams& params, double r1_ref,
                    double tau1_ref);

// Closed-form quadratic control-effort cost of a plan. Independent of the
// trajectory and of the drift model: the control is constant per phase and
// the drift enters the dynamics only.
double economic_cost(const PolicyPlan& plan, const EpidemicParams& params,
                     const CostParams& cost);

// kh * (s(0) - s(T)); with kh = population this is the total ever-infected
// count over the horizon.
double health_cost(const Trajectory& traj, const CostParams& cost);

// Checks, in this order: ICU load sigma*N*i(t) <= capacity on every daily
// sample, tau1 >= t_min, r2 > r1 + r_gap. Reports the first violation.
Feasibility check_feasibility(const Trajectory& traj, const PolicyPlan& plan,
                              const CostParams& cost, const EpidemicParams& params);

// Simulates the plan and assembles the full evaluation. Infeasible plans
// still report their costs.
Evaluation evaluate(const PolicyPlan& plan, const EpidemicParams& params,
                    const DriftModel& drift, const CostParams& cost,
                    const IntegratorConfig& cfg);

// Same, reusing an existing trajectory of the plan.
Evaluation evaluate(const Trajectory& traj, const PolicyPlan& plan,
                    const EpidemicParams& params, const CostParams& cost);

}  // namespace epiphase

#endif  // EPIPHASE_COST_HPP_

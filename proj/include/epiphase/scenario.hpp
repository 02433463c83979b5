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

#ifndef EPIPHASE_SCENARIO_HPP_
#define EPIPHASE_SCENARIO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "epiphase/cost.hpp"
#include "epiphase/epidemic.hpp"
#include "epiphase/optimizer.hpp"

namespace epiphase {

// A fully resolved experiment configuration. cost.ke is always derived from
// `calibration` (never set directly), so the alpha = 1 endpoint of the
// objective matches the calibrated GDP loss by construction.
struct Scenario {
  std::string label;
  double horizon = 0;
  std::string origin_date;  // ISO date mapped to simulation day 0
  EpidemicParams params;
  DriftModel drift;
  CostParams cost;
  KeCalibration calibration;
  GridSpec grid;
  IntegratorConfig integrator;

  void validate() const;
};

// The France calibration: r0 = 3.5, delta = 0.1857, gamma = 0.16, N = 66e6,
// 1.33e5 initially exposed, ICU capacity 15e3 at sigma = 1.5%, drift
// (0.1%, 0.2%, 0.2%)/day, mu = (1.41, 1.3), alpha = 1e-4, T = 300,
// t_min = 30, ke calibrated from a 120e9 GDP loss at (r1 = 0.6, tau1 = 55).
Scenario france_preset();

// Preset by name: "france" (T = 300) or "france-tradeoff" (T = 210).
Scenario preset(std::string_view name);

// The policy France applied from March 1 2020 (day 0): lockdown on day 17
// for 55 days at r1 = 0.6, then post-lockdown at r2 = 0.9. The adjustment
// phase begins at adjustment_start (default: the horizon, i.e. no adjustment
// phase inside the window) with target r3.
PolicyPlan french_policy_plan(double horizon, double r3 = 0.9, double adjustment_start = -1);

// Default quantization of the six decision variables: tau0 1..30,
// tau1 t_min..90 step 2, tau2 1..120 step 5, r 0.4..1.5 step 0.1.
GridSpec coarse_grid(double t_min);

// Single-day / 0.1 steps throughout, as in the full exhaustive search
// (hundreds of millions of candidates; expect long runtimes).
GridSpec full_grid(double t_min);

// Evenly stepped axis helper; values are snapped to 1e-6 so printed grids
// stay clean decimals.
std::vector<double> grid_range(double min, double max, double step);

// Parses a scenario document (JSON, // and /* */ comments allowed). Missing
// fields default to the France preset; unknown keys are rejected. The
// returned scenario is fully validated.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::filesystem::path& path);

// Resolves "france", "france-tradeoff", or a path to a scenario file.
Scenario resolve_scenario_ref(const std::string& ref);

// Standalone grid document: a JSON object with all six axes (arrays or
// {min,max,step} objects).
GridSpec load_grid_file(const std::filesystem::path& path);

// Canonical JSON serialization; load_scenario(serialize_scenario(s)) is
// identical to s.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace epiphase

#endif  // EPIPHASE_SCENARIO_HPP_

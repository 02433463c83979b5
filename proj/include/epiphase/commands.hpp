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

#ifndef EPIPHASE_COMMANDS_HPP_
#define EPIPHASE_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epiphase/scenario.hpp"

// The CLI surface as library functions; tools/main.cpp only parses arguments.
namespace epiphase::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kConfigExit = 3;
inline constexpr int kNumericExit = 4;
inline constexpr int kInfeasibleExit = 5;
inline constexpr int kIoExit = 6;

struct GlobalOptions {
  std::string scenario_ref = "france";  // preset name or scenario file path
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string grid_ref;            // "", "coarse", "full", or grid file path
  std::optional<double> horizon;   // override, days
  int threads = 1;                 // 0 = hardware concurrency
  std::vector<std::string> argv;   // recorded in the manifest
};

// A policy for simulate/validate/adjust: the French reference plan by
// default (with configurable r3 and adjustment start), or an explicit
// sextuple.
struct PlanSpec {
  std::optional<double> tau0, tau1, tau2, r1, r2, r3;
  double french_r3 = 0.9;
  std::optional<double> adjustment_start;

  bool explicit_plan() const { return tau0.has_value(); }
};

// Resolves the scenario reference and applies --grid/--horizon overrides.
Scenario resolve_scenario(const GlobalOptions& g);

// Builds the policy from a spec against a scenario horizon.
PolicyPlan make_plan(const PlanSpec& spec, const Scenario& scenario);

int cmd_simulate(const GlobalOptions& g, const PlanSpec& plan);
int cmd_optimize(const GlobalOptions& g, bool write_trajectory);
int cmd_tradeoff(const GlobalOptions& g, const std::vector<double>& alphas);
int cmd_sweep(const GlobalOptions& g, const std::vector<double>& alphas,
              const std::vector<std::pair<double, double>>& mu_pairs,
              std::optional<double> t_min_override);
int cmd_sensitivity(const GlobalOptions& g, const std::vector<double>& r0_values);
int cmd_uncertainty(const GlobalOptions& g, const std::vector<double>& sigma_levels,
                    int n_samples, double r_min, double r_max);
int cmd_adjust(const GlobalOptions& g, const std::vector<double>& r3_values,
               const PlanSpec& prefix);
int cmd_validate(const GlobalOptions& g, const std::string& reported_path, const PlanSpec& plan,
                 const std::optional<std::pair<std::string, std::string>>& window);
int cmd_calibrate(const GlobalOptions& g, double delta_gdp, double r1_ref, double tau1_ref);

// Log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int points);

}  // namespace epiphase::cli

#endif  // EPIPHASE_COMMANDS_HPP_

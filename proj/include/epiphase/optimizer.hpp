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

#ifndef EPIPHASE_OPTIMIZER_HPP_
#define EPIPHASE_OPTIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epiphase/cost.hpp"
#include "epiphase/epidemic.hpp"

namespace epiphase {

// Quantized candidate sets for the six policy decision variables. Duration
// values must be whole days (the search caches states at day boundaries).
struct GridSpec {
  std::vector<double> tau0;
  std::vector<double> tau1;
  std::vector<double> tau2;
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<double> r3;

  std::uint64_t candidate_count() const;
  void validate(double horizon) const;
};

struct SearchOptions {
  int threads = 1;  // 0 = hardware concurrency; results are thread-count invariant
};

struct SearchResult {
  PolicyPlan best_plan;
  Evaluation best_eval;
  std::uint64_t n_evaluated = 0;  // candidates whose trajectories were simulated
  std::uint64_t n_feasible = 0;
  std::uint64_t n_pruned = 0;  // removed by static filters (t_min, r_gap, horizon)
};

// Raised when no grid candidate is feasible. Carries the least-violating
// candidate (smallest observed ICU overshoot, ties broken by plan order)
// for diagnostics; the overshoot is measured up to the abort day.
class InfeasibleGridError : public std::runtime_error {
 public:
  InfeasibleGridError(std::string msg, PolicyPlan least, double overshoot)
      : std::runtime_error(std::move(msg)),
        least_violating(least),
        icu_overshoot(overshoot) {}

  PolicyPlan least_violating;
  double icu_overshoot = 0;
};

// Exhaustive constrained minimization of the scalarized cost over the grid.
//
// Static constraints (tau1 >= t_min, r2 > r1 + r_gap, tau0+tau1+tau2 <=
// horizon) are filtered before any simulation; the ICU constraint is checked
// per daily sample with early abort. Candidates sharing a policy prefix share
// the integration of that prefix: the state at tau0 depends only on tau0, the
// state at tau0+tau1 only on (tau0, tau1, r1), and the state at
// tau0+tau1+tau2 only on (tau0, tau1, r1, tau2, r2). Results are identical to
// simulating every candidate from t = 0. Ties in total cost break toward the
// lexicographically smallest (tau0, tau1, tau2, r1, r2, r3).
SearchResult grid_search(const GridSpec& grid, const EpidemicParams& params,
                         const DriftModel& drift, const CostParams& cost,
                         const IntegratorConfig& cfg, double horizon,
                         const SearchOptions& opts = {});

struct TradeoffPoint {
  double alpha = 0;
  double gdp_loss = 0;        // economic cost of the optimum, currency
  double infected_total = 0;  // persons
  PolicyPlan plan;
};

// One sweep point; `point` is empty when the search failed and `error`
// carries the reason.
struct TradeoffResult {
  double alpha = 0;
  std::optional<TradeoffPoint> point;
  std::string error;
};

// One grid_search per alpha, everything else fixed. Sorted by ascending
// alpha the successful points satisfy: gdp_loss non-increasing,
// infected_total non-decreasing.
std::vector<TradeoffResult> tradeoff_sweep(const std::vector<double>& alphas,
                                           const GridSpec& grid, const EpidemicParams& params,
                                           const DriftModel& drift, const CostParams& cost,
                                           const IntegratorConfig& cfg, double horizon,
                                           const SearchOptions& opts = {});

struct FeatureSweepRow {
  double alpha = 0;
  double mu1 = 0;
  double mu2 = 0;
  std::optional<SearchResult> result;
  std::string error;
};

// Optimal policy features (notably tau0 and tau1) across alpha values and
// (mu1, mu2) pairs. t_min_override relaxes the lockdown-duration constraint
// (the grid must then provide tau1 values below the default t_min).
std::vector<FeatureSweepRow> lockdown_feature_sweep(
    const std::vector<double>& alphas, const std::vector<std::pair<double, double>>& mu_pairs,
    const GridSpec& grid, const EpidemicParams& params, const DriftModel& drift,
    const CostParams& cost, const IntegratorConfig& cfg, double horizon,
    std::optional<double> t_min_override = std::nullopt, const SearchOptions& opts = {});

struct R0SensitivityRow {
  double r0 = 0;
  double ke = 0;  // recalibrated for this r0
  std::optional<SearchResult> result;
  std::string error;
};

// Re-runs the search for each natural reproduction number, recalibrating ke
// from the same (delta_gdp, r1_ref, tau1_ref) so the alpha = 1 anchor keeps
// its meaning.
std::vector<R0SensitivityRow> r0_sensitivity(const std::vector<double>& r0_values,
                                             const KeCalibration& calib, const GridSpec& grid,
                                             const EpidemicParams& params,
                                             const DriftModel& drift, const CostParams& cost,
                                             const IntegratorConfig& cfg, double horizon,
                                             const SearchOptions& opts = {});

struct UncertaintyReport {
  std::vector<double> sigma_levels;
  std::vector<double> bias_tau0;  // mean |tau0_hat - tau0*| per level, days
  std::vector<double> bias_r1;    // mean |r1_hat - r1*| per level
  int n_samples = 0;
  std::uint64_t seed = 0;
};

// Robustness of the optimal policy against misestimated r0. For each noise
// level, draws truncated-Gaussian perturbations delta in
// [r_min - r0, r_max - r0] (rejection sampling), optimizes with the
// perturbed r0 (ke recalibrated), and reports mean absolute deviations of
// tau0 and r1 from the unperturbed optimum. Each sample derives its own
// random stream from (seed, level, sample), so results do not depend on
// evaluation order.
UncertaintyReport mc_r0_uncertainty(const std::vector<double>& sigma_levels, int n_samples,
                                    std::uint64_t seed, double r_min, double r_max,
                                    const KeCalibration& calib, const GridSpec& grid,
                                    const EpidemicParams& params, const DriftModel& drift,
                                    const CostParams& cost, const IntegratorConfig& cfg,
                                    double horizon, const SearchOptions& opts = {});

struct AdjustmentRow {
  double r3 = 0;
  double peak_icu = 0;
  int peak_icu_day = 0;
  double infected_total = 0;
  bool icu_feasible = false;  // ICU load within capacity on every daily sample
  double r_eff_end = 0;       // drifted reproduction number at the horizon
};

// Simulates each r3 variant on a fixed policy prefix (tau0, tau1, tau2, r1,
// r2 and horizon from prefix_plan) and summarizes the ICU impact.
std::vector<AdjustmentRow> adjustment_sweep(const PolicyPlan& prefix_plan,
                                            const std::vector<double>& r3_values,
                                            const EpidemicParams& params,
                                            const DriftModel& drift, const CostParams& cost,
                                            const IntegratorConfig& cfg);

}  // namespace epiphase

#endif  // EPIPHASE_OPTIMIZER_HPP_

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

#include "epiphase/optimizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "epiphase/rng.hpp"

namespace epiphase {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void validate_axis(const std::vector<double>& values, const std::string& name, bool integral,
                   double horizon) {
  require(!values.empty(), "grid: " + name + " must be non-empty");
  double prev = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    require(std::isfinite(v) && v >= 0, "grid: " + name + " values must be >= 0");
    require(v > prev, "grid: " + name + " values must be strictly ascending");
    if (integral) {
      require(is_integral_day(v), "grid: " + name + " values must be whole days");
      require(v <= horizon, "grid: " + name + " values must not exceed the horizon");
    }
    prev = v;
  }
}

bool plan_lex_less(const PolicyPlan& a, const PolicyPlan& b) {
  if (a.tau0 != b.tau0) return a.tau0 < b.tau0;
  if (a.tau1 != b.tau1) return a.tau1 < b.tau1;
  if (a.tau2 != b.tau2) return a.tau2 < b.tau2;
  if (a.r1 != b.r1) return a.r1 < b.r1;
  if (a.r2 != b.r2) return a.r2 < b.r2;
  return a.r3 < b.r3;
}

// Strict-weak order on candidates: total cost first, then the plan tuple.
bool candidate_better(double total_a, const PolicyPlan& a, double total_b,
                      const PolicyPlan& b) {
  if (total_a != total_b) return total_a < total_b;
  return plan_lex_less(a, b);
}

// State and ICU bookkeeping at a phase-boundary cut shared by all candidates
// extending that prefix.
struct PrefixInfo {
  SeirState state;
  double peak = 0;        // max ICU load over daily samples up to the cut
  bool violated = false;  // some sample up to the cut exceeded capacity
};

// Integrates one phase from `st`, capturing PrefixInfo at each cut (whole
// days since the segment start, ascending). The sample of day 0 itself must
// already be folded into peak0/violated0 by the caller. Integration stops at
// the first ICU violation; later cuts inherit the violation flag.
std::vector<PrefixInfo> capture_prefix(const SeirState& st, double peak0, bool violated0,
                                       const PhaseCoeffs& pc, const SeirRates& rates,
                                       const IntegratorConfig& cfg,
                                       const std::vector<int>& cuts, double sigma_n,
                                       double capacity) {
  std::vector<PrefixInfo> infos(cuts.size());
  std::size_t ci = 0;
  double peak = peak0;
  bool violated = violated0;
  while (ci < cuts.size() && cuts[ci] == 0) {
    infos[ci++] = {st, peak, violated};
  }
  if (ci == cuts.size()) return infos;
  SeirState last = st;
  if (!violated) {
    integrate_phase_segment(st, pc, rates, cfg, 0, cuts.back(),
                            [&](int day, const SeirState& x) {
                              const double load = sigma_n * x.i;
                              if (load > peak) peak = load;
                              if (load > capacity) violated = true;
                              while (ci < cuts.size() && cuts[ci] == day) {
                                infos[ci++] = {x, peak, violated};
                              }
                              last = x;
                              return !violated;
                            });
  }
  for (; ci < cuts.size(); ++ci) infos[ci] = {last, peak, true};
  return infos;
}

constexpr int kMaxLanes = 32;

struct LaneOutcome {
  bool feasible = false;
  double s_end = 0;
  double peak = 0;
};

// Evaluates up to kMaxLanes adjustment-phase variants that share their start
// state. Fixed-step lanes advance in lockstep with the lane loop innermost;
// every lane runs the same rk4_substep as scalar integration, so outcomes are
// bitwise identical to simulating each candidate on its own. Violated lanes
// are compacted away so surviving lanes stay dense.
void run_phase3_lanes(const SeirState& start, double peak0, const double* beta0,
                      const double* beta1, int n_lanes, const SeirRates& rates,
                      const IntegratorConfig& cfg, int n_days, double sigma_n,
                      double capacity, LaneOutcome* out) {
  if (cfg.method == IntegratorMethod::kAdaptiveRk45) {
    for (int l = 0; l < n_lanes; ++l) {
      double peak = peak0;
      bool violated = false;
      SeirState end = integrate_phase_segment(
          start, PhaseCoeffs{beta0[l], beta1[l]}, rates, cfg, 0, n_days,
          [&](int, const SeirState& x) {
            const double load = sigma_n * x.i;
            if (load > peak) peak = load;
            if (load > capacity) violated = true;
            return !violated;
          });
      out[l] = violated ? LaneOutcome{false, 0.0, peak} : LaneOutcome{true, end.s, peak};
    }
    return;
  }

  std::array<double, kMaxLanes> s, e, i, r, b0, b1, peak;
  std::array<int, kMaxLanes> id;
  for (int l = 0; l < n_lanes; ++l) {
    s[l] = start.s;
    e[l] = start.e;
    i[l] = start.i;
    r[l] = start.r;
    b0[l] = beta0[l];
    b1[l] = beta1[l];
    peak[l] = peak0;
    id[l] = l;
  }

  int active = n_lanes;
  const double h = 1.0 / cfg.substeps_per_day;
  for (int day = 0; day < n_days && active > 0; ++day) {
    const double day_theta = static_cast<double>(day);
    for (int k = 0; k < cfg.substeps_per_day; ++k) {
      const double theta = day_theta + k * h;
      int bad = 0;
      for (int l = 0; l < active; ++l) {
        const PhaseCoeffs pc{b0[l], b1[l]};
        rk4_substep(s[l], e[l], i[l], r[l], theta, h, pc, rates);
        bad += !clamp_compartment(s[l]);
        bad += !clamp_compartment(e[l]);
        bad += !clamp_compartment(i[l]);
        bad += !clamp_compartment(r[l]);
      }
      if (bad) {
        throw NumericError("integration failed during candidate evaluation "
                           "(compartment undershoot)");
      }
    }
    for (int l = 0; l < active; ++l) {
      if (!std::isfinite(s[l] + e[l] + i[l] + r[l])) {
        throw NumericError("integration diverged during candidate evaluation");
      }
    }
    for (int l = 0; l < active;) {
      const double load = sigma_n * i[l];
      if (load > peak[l]) peak[l] = load;
      if (load > capacity) {
        out[id[l]] = {false, 0.0, peak[l]};
        --active;
        s[l] = s[active];
        e[l] = e[active];
        i[l] = i[active];
        r[l] = r[active];
        b0[l] = b0[active];
        b1[l] = b1[active];
        peak[l] = peak[active];
        id[l] = id[active];
      } else {
        ++l;
      }
    }
  }
  for (int l = 0; l < active; ++l) out[id[l]] = {true, s[l], peak[l]};
}

struct TaskAccum {
  std::uint64_t evaluated = 0;
  std::uint64_t feasible = 0;
  bool found = false;
  double best_total = std::numeric_limits<double>::infinity();
  PolicyPlan best_plan;
  bool diag_any = false;
  double diag_overshoot = std::numeric_limits<double>::infinity();
  PolicyPlan diag_plan;
};

void diag_update(TaskAccum& acc, double overshoot, const PolicyPlan& plan) {
  if (!acc.diag_any || overshoot < acc.diag_overshoot ||
      (overshoot == acc.diag_overshoot && plan_lex_less(plan, acc.diag_plan))) {
    acc.diag_any = true;
    acc.diag_overshoot = overshoot;
    acc.diag_plan = plan;
  }
}

void best_update(TaskAccum& acc, double total, const PolicyPlan& plan) {
  if (!acc.found || candidate_better(total, plan, acc.best_total, acc.best_plan)) {
    acc.found = true;
    acc.best_total = total;
    acc.best_plan = plan;
  }
}

// Everything a search needs, shared read-only across tasks.
struct SearchContext {
  const GridSpec& grid;
  const EpidemicParams& params;
  const DriftModel& drift;
  const CostParams& cost;
  const IntegratorConfig& cfg;
  int horizon;
  SeirRates rates;
  double sigma_n;
  double s0;  // susceptible fraction at t = 0
  std::vector<int> tau0s, tau1s, tau2s;
  std::vector<std::vector<int>> r2_allowed;  // per r1 index
  std::vector<PrefixInfo> prefix0;           // per tau0 index
};

PolicyPlan make_plan(const SearchContext& ctx, int tau0, int tau1, int tau2, double r1,
                     double r2, double r3) {
  PolicyPlan plan;
  plan.tau0 = static_cast<double>(tau0);
  plan.tau1 = static_cast<double>(tau1);
  plan.tau2 = static_cast<double>(tau2);
  plan.r1 = r1;
  plan.r2 = r2;
  plan.r3 = r3;
  plan.horizon = static_cast<double>(ctx.horizon);
  return plan;
}

// Evaluates the (tau0, r1) subtree: one phase-1 integration shared by all
// tau1 cuts, one phase-2 integration per (tau1, r2), and a batched phase-3
// pass per (tau1, r2, tau2) covering every r3 at once.
TaskAccum run_task(const SearchContext& ctx, int t0i, int r1i) {
  TaskAccum acc;
  const int tau0 = ctx.tau0s[t0i];
  const double r1v = ctx.grid.r1[r1i];
  const auto& r2idx = ctx.r2_allowed[r1i];
  if (r2idx.empty()) return acc;

  std::vector<int> tau1_cuts;
  for (int tau1 : ctx.tau1s) {
    if (tau1 >= ctx.cost.t_min && tau0 + tau1 <= ctx.horizon) tau1_cuts.push_back(tau1);
  }
  if (tau1_cuts.empty()) return acc;

  const auto& r3s = ctx.grid.r3;
  const double capacity = ctx.cost.icu_capacity;

  // Number of admissible tau2 values for a given tau1 (tau2s ascending).
  auto tau2_count = [&](int tau1) {
    const int budget = ctx.horizon - tau0 - tau1;
    const auto it = std::upper_bound(ctx.tau2s.begin(), ctx.tau2s.end(), budget);
    return static_cast<std::size_t>(it - ctx.tau2s.begin());
  };

  const PrefixInfo& p0 = ctx.prefix0[t0i];
  if (p0.violated) {
    for (int tau1 : tau1_cuts) {
      const std::size_t n2 = tau2_count(tau1);
      if (n2 == 0) continue;
      acc.evaluated += static_cast<std::uint64_t>(r2idx.size()) * n2 * r3s.size();
      diag_update(acc, p0.peak - capacity,
                  make_plan(ctx, tau0, tau1, ctx.tau2s[0], r1v, ctx.grid.r2[r2idx[0]], r3s[0]));
    }
    return acc;
  }

  const PhaseCoeffs pc1 = make_phase_coeffs(r1v, ctx.drift.a1, ctx.params);
  const auto info1 = capture_prefix(p0.state, p0.peak, false, pc1, ctx.rates, ctx.cfg,
                                    tau1_cuts, ctx.sigma_n, capacity);

  std::array<double, kMaxLanes> lane_b0, lane_b1;
  std::array<LaneOutcome, kMaxLanes> lanes;

  for (std::size_t k = 0; k < tau1_cuts.size(); ++k) {
    const int tau1 = tau1_cuts[k];
    const std::size_t n2 = tau2_count(tau1);
    if (n2 == 0) continue;
    const PrefixInfo& p1 = info1[k];
    if (p1.violated) {
      acc.evaluated += static_cast<std::uint64_t>(r2idx.size()) * n2 * r3s.size();
      diag_update(acc, p1.peak - capacity,
                  make_plan(ctx, tau0, tau1, ctx.tau2s[0], r1v, ctx.grid.r2[r2idx[0]], r3s[0]));
      continue;
    }
    const std::vector<int> tau2_cuts(ctx.tau2s.begin(), ctx.tau2s.begin() + n2);

    for (int r2j : r2idx) {
      const double r2v = ctx.grid.r2[r2j];
      const PhaseCoeffs pc2 = make_phase_coeffs(r2v, ctx.drift.a2, ctx.params);
      const auto info2 = capture_prefix(p1.state, p1.peak, false, pc2, ctx.rates, ctx.cfg,
                                        tau2_cuts, ctx.sigma_n, capacity);

      for (std::size_t m = 0; m < tau2_cuts.size(); ++m) {
        const int tau2 = tau2_cuts[m];
        const PrefixInfo& p2 = info2[m];
        if (p2.violated) {
          acc.evaluated += r3s.size();
          diag_update(acc, p2.peak - capacity,
                      make_plan(ctx, tau0, tau1, tau2, r1v, r2v, r3s[0]));
          continue;
        }
        const int n3_days = ctx.horizon - tau0 - tau1 - tau2;

        for (std::size_t base = 0; base < r3s.size(); base += kMaxLanes) {
          const int n_lanes =
              static_cast<int>(std::min<std::size_t>(kMaxLanes, r3s.size() - base));
          for (int l = 0; l < n_lanes; ++l) {
            const PhaseCoeffs pc3 =
                make_phase_coeffs(r3s[base + l], ctx.drift.a3, ctx.params);
            lane_b0[l] = pc3.beta0;
            lane_b1[l] = pc3.beta1;
          }
          run_phase3_lanes(p2.state, p2.peak, lane_b0.data(), lane_b1.data(), n_lanes,
                           ctx.rates, ctx.cfg, n3_days, ctx.sigma_n, capacity,
                           lanes.data());
          for (int l = 0; l < n_lanes; ++l) {
            const PolicyPlan plan =
                make_plan(ctx, tau0, tau1, tau2, r1v, r2v, r3s[base + l]);
            ++acc.evaluated;
            if (lanes[l].feasible) {
              ++acc.feasible;
              const double econ = economic_cost(plan, ctx.params, ctx.cost);
              const double health = ctx.cost.kh * (ctx.s0 - lanes[l].s_end);
              const double total =
                  ctx.cost.alpha * econ + (1.0 - ctx.cost.alpha) * health;
              best_update(acc, total, plan);
            } else {
              diag_update(acc, lanes[l].peak - capacity, plan);
            }
          }
        }
      }
    }
  }
  return acc;
}

}  // namespace

std::uint64_t GridSpec::candidate_count() const {
  return static_cast<std::uint64_t>(tau0.size()) * tau1.size() * tau2.size() * r1.size() *
         r2.size() * r3.size();
}

void GridSpec::validate(double horizon) const {
  validate_axis(tau0, "tau0", true, horizon);
  validate_axis(tau1, "tau1", true, horizon);
  validate_axis(tau2, "tau2", true, horizon);
  validate_axis(r1, "r1", false, horizon);
  validate_axis(r2, "r2", false, horizon);
  validate_axis(r3, "r3", false, horizon);
}

SearchResult grid_search(const GridSpec& grid, const EpidemicParams& params,
                         const DriftModel& drift, const CostParams& cost,
                         const IntegratorConfig& cfg, double horizon,
                         const SearchOptions& opts) {
  params.validate();
  cost.validate();
  cfg.validate();
  require(std::isfinite(horizon) && horizon > 0 && is_integral_day(horizon),
          "grid_search: horizon must be a positive whole number of days");
  drift.validate(horizon);
  grid.validate(horizon);

  SearchContext ctx{grid,
                    params,
                    drift,
                    cost,
                    cfg,
                    static_cast<int>(horizon),
                    SeirRates{params.gamma, params.delta},
                    cost.sigma_icu * params.population,
                    1.0 - params.exposed0,
                    {},
                    {},
                    {},
                    {},
                    {}};
  for (double v : grid.tau0) ctx.tau0s.push_back(static_cast<int>(v));
  for (double v : grid.tau1) ctx.tau1s.push_back(static_cast<int>(v));
  for (double v : grid.tau2) ctx.tau2s.push_back(static_cast<int>(v));

  ctx.r2_allowed.resize(grid.r1.size());
  for (std::size_t i = 0; i < grid.r1.size(); ++i) {
    for (std::size_t j = 0; j < grid.r2.size(); ++j) {
      if (r_gap_satisfied(grid.r1[i], grid.r2[j], cost.r_gap)) {
        ctx.r2_allowed[i].push_back(static_cast<int>(j));
      }
    }
  }

  const SeirState init{ctx.s0, params.exposed0, 0.0, 0.0};
  const double load0 = ctx.sigma_n * init.i;
  const PhaseCoeffs pc0 = phase_coeffs(0, PolicyPlan{}, drift, params);
  ctx.prefix0 = capture_prefix(init, load0, load0 > cost.icu_capacity, pc0, ctx.rates, cfg,
                               ctx.tau0s, ctx.sigma_n, cost.icu_capacity);

  const std::size_t n_tasks = ctx.tau0s.size() * grid.r1.size();
  std::vector<TaskAccum> slots(n_tasks);
  auto task_of = [&](std::size_t t) {
    return std::pair<int, int>{static_cast<int>(t / grid.r1.size()),
                               static_cast<int>(t % grid.r1.size())};
  };

  int n_threads = opts.threads == 0
                      ? static_cast<int>(std::thread::hardware_concurrency())
                      : opts.threads;
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_tasks)));

  if (n_threads == 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) {
      const auto [t0i, r1i] = task_of(t);
      slots[t] = run_task(ctx, t0i, r1i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n_tasks);
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1)) {
          const auto [t0i, r1i] = task_of(t);
          try {
            slots[t] = run_task(ctx, t0i, r1i);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  TaskAccum merged;
  for (const TaskAccum& acc : slots) {
    merged.evaluated += acc.evaluated;
    merged.feasible += acc.feasible;
    if (acc.found) best_update(merged, acc.best_total, acc.best_plan);
    if (acc.diag_any) diag_update(merged, acc.diag_overshoot, acc.diag_plan);
  }

  if (!merged.found) {
    if (merged.evaluated == 0) {
      throw InfeasibleGridError(
          "infeasible grid: no candidate satisfies the static constraints "
          "(t_min, r_gap, horizon)",
          PolicyPlan{}, std::numeric_limits<double>::infinity());
    }
    throw InfeasibleGridError(
        "infeasible grid: every candidate violates the ICU constraint; least "
        "overshoot " + std::to_string(merged.diag_overshoot) + " persons",
        merged.diag_plan, merged.diag_overshoot);
  }

  SearchResult result;
  result.best_plan = merged.best_plan;
  result.best_eval = evaluate(merged.best_plan, params, drift, cost, cfg);
  result.n_evaluated = merged.evaluated;
  result.n_feasible = merged.feasible;
  result.n_pruned = grid.candidate_count() - merged.evaluated;
  return result;
}

std::vector<TradeoffResult> tradeoff_sweep(const std::vector<double>& alphas,
                                           const GridSpec& grid, const EpidemicParams& params,
                                           const DriftModel& drift, const CostParams& cost,
                                           const IntegratorConfig& cfg, double horizon,
                                           const SearchOptions& opts) {
  require(!alphas.empty(), "tradeoff_sweep: alphas must be non-empty");
  for (double a : alphas) {
    require(std::isfinite(a) && a >= 0 && a <= 1, "tradeoff_sweep: alpha must lie in [0, 1]");
  }
  std::vector<TradeoffResult> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    TradeoffResult row;
    row.alpha = alpha;
    CostParams c = cost;
    c.alpha = alpha;
    try {
      const SearchResult res = grid_search(grid, params, drift, c, cfg, horizon, opts);
      row.point = TradeoffPoint{alpha, res.best_eval.economic_cost,
                                res.best_eval.infected_total, res.best_plan};
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<FeatureSweepRow> lockdown_feature_sweep(
    const std::vector<double>& alphas, const std::vector<std::pair<double, double>>& mu_pairs,
    const GridSpec& grid, const EpidemicParams& params, const DriftModel& drift,
    const CostParams& cost, const IntegratorConfig& cfg, double horizon,
    std::optional<double> t_min_override, const SearchOptions& opts) {
  require(!alphas.empty(), "lockdown_feature_sweep: alphas must be non-empty");
  require(!mu_pairs.empty(), "lockdown_feature_sweep: mu_pairs must be non-empty");
  std::vector<FeatureSweepRow> out;
  out.reserve(alphas.size() * mu_pairs.size());
  for (const auto& [mu1, mu2] : mu_pairs) {
    for (double alpha : alphas) {
      FeatureSweepRow row;
      row.alpha = alpha;
      row.mu1 = mu1;
      row.mu2 = mu2;
      CostParams c = cost;
      c.alpha = alpha;
      c.mu1 = mu1;
      c.mu2 = mu2;
      if (t_min_override) c.t_min = *t_min_override;
      try {
        row.result = grid_search(grid, params, drift, c, cfg, horizon, opts);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::vector<R0SensitivityRow> r0_sensitivity(const std::vector<double>& r0_values,
                                             const KeCalibration& calib, const GridSpec& grid,
                                             const EpidemicParams& params,
                                             const DriftModel& drift, const CostParams& cost,
                                             const IntegratorConfig& cfg, double horizon,
                                             const SearchOptions& opts) {
  require(!r0_values.empty(), "r0_sensitivity: r0_values must be non-empty");
  std::vector<R0SensitivityRow> out;
  out.reserve(r0_values.size());
  for (double r0 : r0_values) {
    R0SensitivityRow row;
    row.r0 = r0;
    try {
      require(std::isfinite(r0) && r0 > 0, "r0_sensitivity: r0 must be > 0");
      EpidemicParams p = params;
      p.r0 = r0;
      CostParams c = cost;
      c.ke = calibrate_ke(calib.delta_gdp, p, calib.r1_ref, calib.tau1_ref);
      row.ke = c.ke;
      row.result = grid_search(grid, p, drift, c, cfg, horizon, opts);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

UncertaintyReport mc_r0_uncertainty(const std::vector<double>& sigma_levels, int n_samples,
                                    std::uint64_t seed, double r_min, double r_max,
                                    const KeCalibration& calib, const GridSpec& grid,
                                    const EpidemicParams& params, const DriftModel& drift,
                                    const CostParams& cost, const IntegratorConfig& cfg,
                                    double horizon, const SearchOptions& opts) {
  require(!sigma_levels.empty(), "mc_r0_uncertainty: sigma_levels must be non-empty");
  for (double s : sigma_levels) {
    require(std::isfinite(s) && s >= 0, "mc_r0_uncertainty: sigma must be >= 0");
  }
  require(n_samples >= 1, "mc_r0_uncertainty: n_samples must be >= 1");
  require(r_min < params.r0 && params.r0 < r_max,
          "mc_r0_uncertainty: need r_min < r0 < r_max");

  // The unperturbed baseline recalibrates ke through the same path as the
  // perturbed runs, so a zero perturbation reproduces it exactly.
  auto optimize_at = [&](double r0) {
    EpidemicParams p = params;
    p.r0 = r0;
    CostParams c = cost;
    c.ke = calibrate_ke(calib.delta_gdp, p, calib.r1_ref, calib.tau1_ref);
    return grid_search(grid, p, drift, c, cfg, horizon, opts);
  };

  const SearchResult base = optimize_at(params.r0);
  const double lo = r_min - params.r0;
  const double hi = r_max - params.r0;

  UncertaintyReport report;
  report.sigma_levels = sigma_levels;
  report.n_samples = n_samples;
  report.seed = seed;
  for (std::size_t level = 0; level < sigma_levels.size(); ++level) {
    const double sigma = sigma_levels[level];
    double sum_tau0 = 0;
    double sum_r1 = 0;
    for (int j = 0; j < n_samples; ++j) {
      Rng rng(derive_seed(seed, level, static_cast<std::uint64_t>(j)));
      double delta;
      do {
        delta = sigma * rng.gaussian();
      } while (delta < lo || delta > hi);
      const SearchResult res = optimize_at(params.r0 + delta);
      sum_tau0 += std::abs(res.best_plan.tau0 - base.best_plan.tau0);
      sum_r1 += std::abs(res.best_plan.r1 - base.best_plan.r1);
    }
    report.bias_tau0.push_back(sum_tau0 / n_samples);
    report.bias_r1.push_back(sum_r1 / n_samples);
  }
  return report;
}

std::vector<AdjustmentRow> adjustment_sweep(const PolicyPlan& prefix_plan,
                                            const std::vector<double>& r3_values,
                                            const EpidemicParams& params,
                                            const DriftModel& drift, const CostParams& cost,
                                            const IntegratorConfig& cfg) {
  require(!r3_values.empty(), "adjustment_sweep: r3_values must be non-empty");
  cost.validate();
  std::vector<AdjustmentRow> out;
  out.reserve(r3_values.size());
  for (double r3 : r3_values) {
    PolicyPlan plan = prefix_plan;
    plan.r3 = r3;
    const Trajectory traj = simulate_policy(params, plan, drift, cfg, cost.sigma_icu);
    AdjustmentRow row;
    row.r3 = r3;
    row.peak_icu = 0;
    row.peak_icu_day = 0;
    for (int day = 0; day <= traj.horizon(); ++day) {
      if (traj.icu_load[day] > row.peak_icu) {
        row.peak_icu = traj.icu_load[day];
        row.peak_icu_day = day;
      }
    }
    row.infected_total = params.population * (traj.s.front() - traj.s.back());
    row.icu_feasible = row.peak_icu <= cost.icu_capacity;
    row.r_eff_end = traj.r_eff.back();
    out.push_back(row);
  }
  return out;
}

}  // namespace epiphase

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

#include "epiphase/commands.hpp"

#include <cmath>
#include <functional>
#include <iostream>

#include "json.hpp"

#include "epiphase/csv.hpp"
#include "epiphase/dates.hpp"
#include "epiphase/optimizer.hpp"
#include "epiphase/report.hpp"
#include "epiphase/version.hpp"

namespace epiphase::cli {

namespace {

namespace fs = std::filesystem;

// Shared command shell: resolve the scenario, run the body, then write the
// manifest covering every registered output.
struct CommandContext {
  fs::path dir;
  Scenario scenario;
  std::vector<std::string> outputs;

  void emit_csv(const std::string& name, const CsvWriter& csv) {
    csv.write(dir / name);
    outputs.push_back(name);
  }
  void emit_text(const std::string& name, const std::string& content) {
    write_file_atomic(dir / name, content);
    outputs.push_back(name);
  }
};

int run_command(const GlobalOptions& g, const std::string& name,
                const std::function<void(CommandContext&)>& body) {
  try {
    CommandContext ctx;
    ctx.dir = g.out_dir;
    std::error_code ec;
    fs::create_directories(ctx.dir, ec);
    if (ec) throw IoError("cannot create output directory " + ctx.dir.string());
    ctx.scenario = resolve_scenario(g);

    RunManifest manifest;
    manifest.command = name;
    manifest.version = kVersion;
    manifest.argv = g.argv;
    manifest.scenario_json = serialize_scenario(ctx.scenario);
    manifest.scenario_hash = fnv1a64(manifest.scenario_json);
    manifest.seed = g.seed;
    manifest.started_at = utc_now_iso8601();

    body(ctx);

    manifest.finished_at = utc_now_iso8601();
    manifest.outputs = ctx.outputs;
    write_manifest(manifest, ctx.dir);
    return kOk;
  } catch (const InfeasibleGridError& e) {
    std::cerr << "error (infeasible): " << e.what() << "\n";
    return kInfeasibleExit;
  } catch (const ConfigError& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return kConfigExit;
  } catch (const NumericError& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return kNumericExit;
  } catch (const IoError& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return kIoExit;
  }
}

std::string fmt(double v) { return format_double(v); }

std::vector<std::string> plan_cells(const PolicyPlan& p) {
  return {fmt(p.tau0), fmt(p.tau1), fmt(p.tau2), fmt(p.r1), fmt(p.r2), fmt(p.r3)};
}

void append(std::vector<std::string>& row, std::vector<std::string> tail) {
  for (auto& cell : tail) row.push_back(std::move(cell));
}

CsvWriter trajectory_csv(const Trajectory& traj, const PolicyPlan& plan,
                         const Scenario& s) {
  CsvWriter csv({"day", "s", "e", "i", "r", "n_infected", "r_eff", "icu_load",
                 "attenuation", "phase"});
  for (int day = 0; day <= traj.horizon(); ++day) {
    csv.add_row({std::to_string(day), fmt(traj.s[day]), fmt(traj.e[day]), fmt(traj.i[day]),
                 fmt(traj.r[day]), fmt(traj.population * traj.i[day]), fmt(traj.r_eff[day]),
                 fmt(traj.icu_load[day]), fmt(attenuation_at(day, plan, s.drift)),
                 std::to_string(phase_index(day, plan))});
  }
  return csv;
}

SearchOptions search_options(const GlobalOptions& g) { return SearchOptions{g.threads}; }

}  // namespace

Scenario resolve_scenario(const GlobalOptions& g) {
  Scenario s = resolve_scenario_ref(g.scenario_ref);
  if (g.horizon) s.horizon = *g.horizon;
  if (!g.grid_ref.empty()) {
    if (g.grid_ref == "coarse") {
      s.grid = coarse_grid(s.cost.t_min);
    } else if (g.grid_ref == "full") {
      s.grid = full_grid(s.cost.t_min);
    } else {
      s.grid = load_grid_file(g.grid_ref);
    }
  }
  s.validate();
  return s;
}

PolicyPlan make_plan(const PlanSpec& spec, const Scenario& scenario) {
  if (spec.explicit_plan()) {
    if (!(spec.tau1 && spec.tau2 && spec.r1 && spec.r2 && spec.r3)) {
      throw ConfigError("plan: an explicit plan needs all of tau0, tau1, tau2, r1, r2, r3");
    }
    PolicyPlan plan;
    plan.tau0 = *spec.tau0;
    plan.tau1 = *spec.tau1;
    plan.tau2 = *spec.tau2;
    plan.r1 = *spec.r1;
    plan.r2 = *spec.r2;
    plan.r3 = *spec.r3;
    plan.horizon = scenario.horizon;
    plan.validate();
    return plan;
  }
  return french_policy_plan(scenario.horizon, spec.french_r3,
                            spec.adjustment_start.value_or(-1));
}

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (!(lo > 0 && hi > lo) || points < 2) {
    throw ConfigError("log grid: need 0 < lo < hi and at least 2 points");
  }
  std::vector<double> out;
  out.reserve(points);
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  for (int k = 0; k < points; ++k) {
    out.push_back(std::pow(10.0, llo + (lhi - llo) * k / (points - 1)));
  }
  return out;
}

int cmd_simulate(const GlobalOptions& g, const PlanSpec& spec) {
  return run_command(g, "simulate", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const PolicyPlan plan = make_plan(spec, s);
    const Trajectory traj =
        simulate_policy(s.params, plan, s.drift, s.integrator, s.cost.sigma_icu);
    ctx.emit_csv("trajectory.csv", trajectory_csv(traj, plan, s));
    const Evaluation ev = evaluate(traj, plan, s.params, s.cost);
    std::cout << "simulate: plan (tau0=" << fmt(plan.tau0) << " tau1=" << fmt(plan.tau1)
              << " tau2=" << fmt(plan.tau2) << " r1=" << fmt(plan.r1) << " r2=" << fmt(plan.r2)
              << " r3=" << fmt(plan.r3) << ") horizon=" << fmt(plan.horizon) << "\n"
              << "  infected_total=" << fmt(ev.infected_total)
              << " economic_cost=" << fmt(ev.economic_cost) << " peak_icu=" << fmt(ev.peak_icu)
              << " feasible=" << (ev.feasible ? "yes" : "no") << "\n";
  });
}

int cmd_optimize(const GlobalOptions& g, bool write_trajectory) {
  return run_command(g, "optimize", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const SearchResult res = grid_search(s.grid, s.params, s.drift, s.cost, s.integrator,
                                         s.horizon, search_options(g));
    CsvWriter csv({"tau0", "tau1", "tau2", "r1", "r2", "r3", "total_cost", "economic_cost",
                   "health_cost", "infected_total", "peak_icu", "feasible", "n_evaluated",
                   "n_feasible", "n_pruned"});
    std::vector<std::string> row = plan_cells(res.best_plan);
    append(row, {fmt(res.best_eval.total_cost), fmt(res.best_eval.economic_cost),
                 fmt(res.best_eval.health_cost), fmt(res.best_eval.infected_total),
                 fmt(res.best_eval.peak_icu), res.best_eval.feasible ? "true" : "false",
                 std::to_string(res.n_evaluated), std::to_string(res.n_feasible),
                 std::to_string(res.n_pruned)});
    csv.add_row(row);
    ctx.emit_csv("search.csv", csv);
    if (write_trajectory) {
      const Trajectory traj =
          simulate_policy(s.params, res.best_plan, s.drift, s.integrator, s.cost.sigma_icu);
      ctx.emit_csv("best_trajectory.csv", trajectory_csv(traj, res.best_plan, s));
    }
    std::cout << "optimize: best (tau0=" << fmt(res.best_plan.tau0)
              << " tau1=" << fmt(res.best_plan.tau1) << " tau2=" << fmt(res.best_plan.tau2)
              << " r1=" << fmt(res.best_plan.r1) << " r2=" << fmt(res.best_plan.r2)
              << " r3=" << fmt(res.best_plan.r3) << ")\n"
              << "  gdp_loss=" << fmt(res.best_eval.economic_cost)
              << " infected_total=" << fmt(res.best_eval.infected_total)
              << " evaluated=" << res.n_evaluated << " feasible=" << res.n_feasible
              << " pruned=" << res.n_pruned << "\n";
  });
}

int cmd_tradeoff(const GlobalOptions& g, const std::vector<double>& alphas) {
  if (alphas.empty()) {
    std::cerr << "error (usage): tradeoff: no alpha values given\n";
    return kUsageError;
  }
  bool any_ok = false;
  const int code = run_command(g, "tradeoff", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const auto rows = tradeoff_sweep(alphas, s.grid, s.params, s.drift, s.cost, s.integrator,
                                     s.horizon, search_options(g));
    CsvWriter csv({"alpha", "gdp_loss", "infected_total", "tau0", "tau1", "tau2", "r1", "r2",
                   "r3", "status", "error"});
    for (const auto& r : rows) {
      std::vector<std::string> row{fmt(r.alpha)};
      if (r.point) {
        any_ok = true;
        append(row, {fmt(r.point->gdp_loss), fmt(r.point->infected_total)});
        append(row, plan_cells(r.point->plan));
        append(row, {"ok", ""});
      } else {
        append(row, {"", "", "", "", "", "", "", "", "failed", r.error});
      }
      csv.add_row(row);
    }
    ctx.emit_csv("tradeoff.csv", csv);
    std::cout << "tradeoff: " << rows.size() << " points written\n";
  });
  if (code != kOk) return code;
  if (!any_ok) {
    std::cerr << "error (infeasible): tradeoff: every sweep point failed\n";
    return kInfeasibleExit;
  }
  return kOk;
}

int cmd_sweep(const GlobalOptions& g, const std::vector<double>& alphas,
              const std::vector<std::pair<double, double>>& mu_pairs,
              std::optional<double> t_min_override) {
  if (alphas.empty() || mu_pairs.empty()) {
    std::cerr << "error (usage): sweep: need alpha values and mu pairs\n";
    return kUsageError;
  }
  bool any_ok = false;
  const int code = run_command(g, "sweep", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const auto rows =
        lockdown_feature_sweep(alphas, mu_pairs, s.grid, s.params, s.drift, s.cost,
                               s.integrator, s.horizon, t_min_override, search_options(g));
    CsvWriter csv({"alpha", "mu1", "mu2", "tau0", "tau1", "tau2", "r1", "r2", "r3", "gdp_loss",
                   "infected_total", "status", "error"});
    for (const auto& r : rows) {
      std::vector<std::string> row{fmt(r.alpha), fmt(r.mu1), fmt(r.mu2)};
      if (r.result) {
        any_ok = true;
        append(row, plan_cells(r.result->best_plan));
        append(row, {fmt(r.result->best_eval.economic_cost),
                     fmt(r.result->best_eval.infected_total), "ok", ""});
      } else {
        append(row, {"", "", "", "", "", "", "", "", "failed", r.error});
      }
      csv.add_row(row);
    }
    ctx.emit_csv("sweep.csv", csv);
    std::cout << "sweep: " << rows.size() << " rows written\n";
  });
  if (code != kOk) return code;
  if (!any_ok) {
    std::cerr << "error (infeasible): sweep: every point failed\n";
    return kInfeasibleExit;
  }
  return kOk;
}

int cmd_sensitivity(const GlobalOptions& g, const std::vector<double>& r0_values) {
  if (r0_values.empty()) {
    std::cerr << "error (usage): sensitivity: no r0 values given\n";
    return kUsageError;
  }
  bool any_ok = false;
  const int code = run_command(g, "sensitivity", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const auto rows = r0_sensitivity(r0_values, s.calibration, s.grid, s.params, s.drift,
                                     s.cost, s.integrator, s.horizon, search_options(g));
    CsvWriter csv({"r0", "ke", "tau0", "tau1", "tau2", "r1", "r2", "r3", "gdp_loss",
                   "infected_total", "total_cost", "status", "error"});
    for (const auto& r : rows) {
      std::vector<std::string> row{fmt(r.r0), fmt(r.ke)};
      if (r.result) {
        any_ok = true;
        append(row, plan_cells(r.result->best_plan));
        append(row, {fmt(r.result->best_eval.economic_cost),
                     fmt(r.result->best_eval.infected_total),
                     fmt(r.result->best_eval.total_cost), "ok", ""});
      } else {
        append(row, {"", "", "", "", "", "", "", "", "", "failed", r.error});
      }
      csv.add_row(row);
    }
    ctx.emit_csv("sensitivity.csv", csv);
    std::cout << "sensitivity: " << rows.size() << " rows written\n";
  });
  if (code != kOk) return code;
  if (!any_ok) {
    std::cerr << "error (infeasible): sensitivity: every point failed\n";
    return kInfeasibleExit;
  }
  return kOk;
}

int cmd_uncertainty(const GlobalOptions& g, const std::vector<double>& sigma_levels,
                    int n_samples, double r_min, double r_max) {
  return run_command(g, "uncertainty", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const std::uint64_t seed = g.seed.value_or(1);
    const UncertaintyReport report =
        mc_r0_uncertainty(sigma_levels, n_samples, seed, r_min, r_max, s.calibration, s.grid,
                          s.params, s.drift, s.cost, s.integrator, s.horizon,
                          search_options(g));
    CsvWriter csv({"sigma", "bias_tau0", "bias_r1", "n_samples", "seed"});
    for (std::size_t k = 0; k < report.sigma_levels.size(); ++k) {
      csv.add_row({fmt(report.sigma_levels[k]), fmt(report.bias_tau0[k]),
                   fmt(report.bias_r1[k]), std::to_string(report.n_samples),
                   std::to_string(report.seed)});
    }
    ctx.emit_csv("uncertainty.csv", csv);
    std::cout << "uncertainty: " << report.sigma_levels.size() << " noise levels, "
              << n_samples << " samples each\n";
  });
}

int cmd_adjust(const GlobalOptions& g, const std::vector<double>& r3_values,
               const PlanSpec& prefix) {
  if (r3_values.empty()) {
    std::cerr << "error (usage): adjust: no r3 values given\n";
    return kUsageError;
  }
  return run_command(g, "adjust", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    PlanSpec spec = prefix;
    if (!spec.explicit_plan() && !spec.adjustment_start) {
      // France's adjustment phase began at the end of September (day 210).
      spec.adjustment_start = std::min(210.0, s.horizon);
    }
    const PolicyPlan plan = make_plan(spec, s);
    const auto rows =
        adjustment_sweep(plan, r3_values, s.params, s.drift, s.cost, s.integrator);
    CsvWriter csv({"r3", "peak_icu", "peak_icu_day", "infected_total", "icu_feasible",
                   "r_eff_end"});
    for (const auto& r : rows) {
      csv.add_row({fmt(r.r3), fmt(r.peak_icu), std::to_string(r.peak_icu_day),
                   fmt(r.infected_total), r.icu_feasible ? "true" : "false",
                   fmt(r.r_eff_end)});
    }
    ctx.emit_csv("adjust.csv", csv);
    std::cout << "adjust: " << rows.size() << " r3 variants on prefix (tau0="
              << fmt(plan.tau0) << " tau1=" << fmt(plan.tau1) << " tau2=" << fmt(plan.tau2)
              << " r1=" << fmt(plan.r1) << " r2=" << fmt(plan.r2) << ")\n";
  });
}

int cmd_validate(const GlobalOptions& g, const std::string& reported_path, const PlanSpec& spec,
                 const std::optional<std::pair<std::string, std::string>>& window) {
  return run_command(g, "validate", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const ReportedSeries reported = load_reported_csv(reported_path);
    const PolicyPlan plan = make_plan(spec, s);
    const Trajectory traj =
        simulate_policy(s.params, plan, s.drift, s.integrator, s.cost.sigma_icu);
    std::optional<std::pair<long, long>> civil_window;
    if (window) {
      civil_window = {parse_iso_date(window->first), parse_iso_date(window->second)};
    }
    const auto [rows, summary] =
        validate_against_reported(traj, reported, parse_iso_date(s.origin_date), civil_window);

    CsvWriter csv({"date", "day", "model_active", "reported", "residual", "rel_residual"});
    for (const auto& r : rows) {
      csv.add_row({format_iso_date(r.date), std::to_string(r.day), fmt(r.model),
                   fmt(r.reported), fmt(r.residual), fmt(r.rel_residual)});
    }
    ctx.emit_csv("validate.csv", csv);

    nlohmann::ordered_json sj;
    sj["window_start"] = format_iso_date(summary.window_start);
    sj["window_end"] = format_iso_date(summary.window_end);
    sj["n_days"] = summary.n_days;
    sj["max_abs_residual"] = summary.max_abs;
    sj["mean_abs_residual"] = summary.mean_abs;
    sj["max_rel_residual"] = summary.max_rel;
    sj["mean_rel_residual"] = summary.mean_rel;
    ctx.emit_text("validate_summary.json", sj.dump(2) + "\n");

    std::cout << "validate: " << rows.size() << " aligned days; window ["
              << format_iso_date(summary.window_start) << ", "
              << format_iso_date(summary.window_end) << "]: mean |resid| = "
              << fmt(summary.mean_abs) << ", mean rel = " << fmt(summary.mean_rel) << "\n";
  });
}

int cmd_calibrate(const GlobalOptions& g, double delta_gdp, double r1_ref, double tau1_ref) {
  return run_command(g, "calibrate", [&](CommandContext& ctx) {
    const Scenario& s = ctx.scenario;
    const double ke = calibrate_ke(delta_gdp, s.params, r1_ref, tau1_ref);
    nlohmann::ordered_json doc;
    doc["delta_gdp"] = delta_gdp;
    doc["r1_ref"] = r1_ref;
    doc["tau1_ref"] = tau1_ref;
    doc["r0"] = s.params.r0;
    doc["delta"] = s.params.delta;
    doc["ke"] = ke;
    ctx.emit_text("calibrate.json", doc.dump(2) + "\n");
    std::cout << "calibrate: ke = " << fmt(ke) << "\n";
  });
}

}  // namespace epiphase::cli

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

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "epiphase/commands.hpp"
#include "epiphase/errors.hpp"
#include "epiphase/version.hpp"

namespace {

using epiphase::cli::GlobalOptions;
using epiphase::cli::PlanSpec;

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) {
      try {
        values.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw epiphase::ConfigError(what + ": cannot parse number '" + tok + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.empty()) throw epiphase::ConfigError(what + ": empty list");
  return values;
}

// "1,1;1.41,1.3" -> {(1,1), (1.41,1.3)}
std::vector<std::pair<double, double>> parse_mu_pairs(const std::string& text) {
  std::vector<std::pair<double, double>> pairs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = text.find(';', pos);
    const std::string tok =
        text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    if (!tok.empty()) {
      const auto values = parse_list(tok, "mu pair");
      if (values.size() != 2) {
        throw epiphase::ConfigError("mu pair '" + tok + "' must have exactly two values");
      }
      pairs.emplace_back(values[0], values[1]);
    }
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (pairs.empty()) throw epiphase::ConfigError("mu pairs: empty list");
  return pairs;
}

void add_plan_options(CLI::App* cmd, PlanSpec& spec) {
  auto opt = [&](const char* name, std::optional<double>& slot, const char* desc) {
    cmd->add_option_function<double>(
           name, [&slot](double v) { slot = v; }, desc)
        ->expected(1);
  };
  opt("--tau0", spec.tau0, "Explicit plan: free-phase duration (days)");
  opt("--tau1", spec.tau1, "Explicit plan: lockdown duration (days)");
  opt("--tau2", spec.tau2, "Explicit plan: post-lockdown duration (days)");
  opt("--r1", spec.r1, "Explicit plan: lockdown target reproduction number");
  opt("--r2", spec.r2, "Explicit plan: post-lockdown target reproduction number");
  opt("--r3", spec.r3, "Explicit plan: adjustment-phase target reproduction number");
  cmd->add_option("--french-r3", spec.french_r3,
                  "Adjustment-phase target for the French reference plan");
  cmd->add_option_function<double>(
         "--adjust-start", [&spec](double v) { spec.adjustment_start = v; },
         "Day the adjustment phase begins (French plan; default: horizon)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epiphase: four-phase epidemic management policies over a SEIR model "
               "with behavioral drift - simulation, cost evaluation, exhaustive "
               "policy search, and trade-off/sensitivity experiments"};
  app.set_version_flag("--version", epiphase::kVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--scenario", g.scenario_ref,
                 "Scenario: preset name (france, france-tradeoff) or config file")
      ->envname("EPIPHASE_SCENARIO");
  app.add_option("--out", g.out_dir, "Output directory")->envname("EPIPHASE_OUT");
  app.add_option_function<std::uint64_t>(
         "--seed", [&g](std::uint64_t v) { g.seed = v; },
         "Master seed for randomized commands")
      ->envname("EPIPHASE_SEED");
  app.add_option("--grid", g.grid_ref, "Grid override: coarse, full, or a grid file")
      ->envname("EPIPHASE_GRID");
  app.add_option_function<double>(
         "--horizon", [&g](double v) { g.horizon = v; }, "Horizon override (days)")
      ->envname("EPIPHASE_HORIZON");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")
      ->envname("EPIPHASE_THREADS");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Integrate one policy and write the trajectory");
  PlanSpec sim_plan;
  add_plan_options(simulate, sim_plan);

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Exhaustive search for the optimal policy");
  bool opt_traj = false;
  optimize->add_flag("--trajectory", opt_traj, "Also write the optimal policy's trajectory");

  // tradeoff
  auto* tradeoff = app.add_subcommand("tradeoff", "Optimal GDP-loss/infections curve over alpha");
  std::string to_alphas;
  double to_lo = 1e-7, to_hi = 1e-4;
  int to_points = 13;
  tradeoff->add_option("--alphas", to_alphas, "Explicit comma-separated alpha list");
  tradeoff->add_option("--alpha-min", to_lo, "Log-grid lower endpoint");
  tradeoff->add_option("--alpha-max", to_hi, "Log-grid upper endpoint");
  tradeoff->add_option("--points", to_points, "Log-grid size");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Optimal tau0/tau1 across alpha and (mu1, mu2)");
  std::string sw_alphas, sw_mus = "1,1;1.41,1.3";
  double sw_lo = 1e-6, sw_hi = 1e-4;
  int sw_points = 20;
  std::optional<double> sw_tmin;
  sweep->add_option("--alphas", sw_alphas, "Explicit comma-separated alpha list");
  sweep->add_option("--alpha-min", sw_lo, "Log-grid lower endpoint");
  sweep->add_option("--alpha-max", sw_hi, "Log-grid upper endpoint");
  sweep->add_option("--points", sw_points, "Log-grid size");
  sweep->add_option("--mu-pairs", sw_mus, "Semicolon-separated mu1,mu2 pairs");
  sweep->add_option_function<double>(
      "--tmin-override", [&sw_tmin](double v) { sw_tmin = v; },
      "Override the minimum lockdown duration (e.g. 1 to relax it)");

  // sensitivity
  auto* sensitivity = app.add_subcommand("sensitivity", "Optimal policy across r0 values");
  std::string se_r0s = "2,2.5,3,3.5";
  sensitivity->add_option("--r0-values", se_r0s, "Comma-separated r0 list");

  // uncertainty
  auto* uncertainty =
      app.add_subcommand("uncertainty", "Monte-Carlo bias of the optimum under noisy r0");
  std::string un_sigmas = "0,0.1,0.2,0.3,0.5";
  int un_samples = 100;
  double un_rmin = 1.0, un_rmax = 4.0;
  uncertainty->add_option("--sigmas", un_sigmas, "Comma-separated noise std-devs");
  uncertainty->add_option("--samples", un_samples, "Samples per noise level");
  uncertainty->add_option("--r-min", un_rmin, "Lower bound of physical r0 range");
  uncertainty->add_option("--r-max", un_rmax, "Upper bound of physical r0 range");

  // adjust
  auto* adjust =
      app.add_subcommand("adjust", "Adjustment-phase severity sweep on a fixed policy prefix");
  std::string ad_r3s = "0.4,0.6,0.8,0.9,1,1.1,1.2,1.5,3.5";
  PlanSpec ad_plan;
  adjust->add_option("--r3-values", ad_r3s, "Comma-separated adjustment targets");
  add_plan_options(adjust, ad_plan);

  // validate
  auto* validate = app.add_subcommand("validate", "Compare a policy against reported case data");
  std::string va_reported;
  std::string va_wstart, va_wend;
  PlanSpec va_plan;
  validate->add_option("--reported", va_reported, "Reported-data CSV (date,active_cases)")
      ->required();
  validate->add_option("--window-start", va_wstart, "Summary window start (ISO date)");
  validate->add_option("--window-end", va_wend, "Summary window end (ISO date)");
  add_plan_options(validate, va_plan);

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Compute the economic conversion factor ke");
  double ca_gdp = 120e9, ca_r1 = 0.6, ca_tau1 = 55;
  calibrate->add_option("--delta-gdp", ca_gdp, "Estimated GDP loss over the reference lockdown");
  calibrate->add_option("--r1-ref", ca_r1, "Reference lockdown reproduction number");
  calibrate->add_option("--tau1-ref", ca_tau1, "Reference lockdown duration (days)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : epiphase::cli::kUsageError;
  }

  g.argv.assign(argv, argv + argc);

  try {
    if (*simulate) return epiphase::cli::cmd_simulate(g, sim_plan);
    if (*optimize) return epiphase::cli::cmd_optimize(g, opt_traj);
    if (*tradeoff) {
      const auto alphas = to_alphas.empty() ? epiphase::cli::log_spaced(to_lo, to_hi, to_points)
                                            : parse_list(to_alphas, "alphas");
      return epiphase::cli::cmd_tradeoff(g, alphas);
    }
    if (*sweep) {
      const auto alphas = sw_alphas.empty() ? epiphase::cli::log_spaced(sw_lo, sw_hi, sw_points)
                                            : parse_list(sw_alphas, "alphas");
      return epiphase::cli::cmd_sweep(g, alphas, parse_mu_pairs(sw_mus), sw_tmin);
    }
    if (*sensitivity) {
      return epiphase::cli::cmd_sensitivity(g, parse_list(se_r0s, "r0-values"));
    }
    if (*uncertainty) {
      return epiphase::cli::cmd_uncertainty(g, parse_list(un_sigmas, "sigmas"), un_samples,
                                            un_rmin, un_rmax);
    }
    if (*adjust) {
      return epiphase::cli::cmd_adjust(g, parse_list(ad_r3s, "r3-values"), ad_plan);
    }
    if (*validate) {
      std::optional<std::pair<std::string, std::string>> window;
      if (!va_wstart.empty() || !va_wend.empty()) {
        if (va_wstart.empty() || va_wend.empty()) {
          std::cerr << "error (usage): validate: give both --window-start and --window-end\n";
          return epiphase::cli::kUsageError;
        }
        window = {va_wstart, va_wend};
      }
      return epiphase::cli::cmd_validate(g, va_reported, va_plan, window);
    }
    if (*calibrate) return epiphase::cli::cmd_calibrate(g, ca_gdp, ca_r1, ca_tau1);
  } catch (const epiphase::ConfigError& e) {
    std::cerr << "error (config): " << e.what() << "\n";
    return epiphase::cli::kConfigExit;
  }
  return epiphase::cli::kUsageError;
}

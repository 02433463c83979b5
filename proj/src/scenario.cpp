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

#include "epiphase/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "epiphase/dates.hpp"

namespace epiphase {

namespace {

using json = nlohmann::ordered_json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  require(obj.is_object(), "scenario: " + where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    require(known, "scenario: unknown key '" + key + "' in " + where);
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  require(v.is_number(), "scenario: " + where + "." + key + " must be a number");
  return v.get<double>();
}

void maybe_number(const json& obj, const std::string& key, const std::string& where,
                  double& out) {
  if (obj.contains(key)) out = get_number(obj, key, where);
}

}  // namespace

std::vector<double> grid_range(double min, double max, double step) {
  require(std::isfinite(min) && std::isfinite(max) && std::isfinite(step) && step > 0,
          "grid range: need finite min/max and step > 0");
  require(max >= min, "grid range: max must be >= min");
  std::vector<double> values;
  const int n = static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
  values.reserve(n);
  for (int k = 0; k < n; ++k) {
    // Snap to 1e-6 so 0.4 + 3*0.1 prints as 0.7, not 0.7000000000000001.
    values.push_back(std::round((min + k * step) * 1e6) / 1e6);
  }
  return values;
}

GridSpec coarse_grid(double t_min) {
  GridSpec g;
  g.tau0 = grid_range(1, 30, 1);
  g.tau1 = grid_range(t_min, 90, 2);
  g.tau2 = grid_range(5, 120, 5);
  g.r1 = grid_range(0.4, 1.5, 0.1);
  g.r2 = g.r1;
  g.r3 = g.r1;
  return g;
}

GridSpec full_grid(double t_min) {
  GridSpec g;
  g.tau0 = grid_range(1, 30, 1);
  g.tau1 = grid_range(t_min, 90, 1);
  g.tau2 = grid_range(1, 120, 1);
  g.r1 = grid_range(0.4, 1.5, 0.1);
  g.r2 = g.r1;
  g.r3 = g.r1;
  return g;
}

Scenario france_preset() {
  Scenario s;
  s.label = "france";
  s.horizon = 300;
  s.origin_date = "2020-03-01";
  s.params.r0 = 3.5;
  s.params.delta = 0.1857;
  s.params.gamma = 0.16;
  s.params.population = 66e6;
  s.params.exposed0 = 1.33e5 / 66e6;
  s.drift = {0.001, 0.002, 0.002};
  s.calibration = {120e9, 0.6, 55.0};
  s.cost.alpha = 1e-4;
  s.cost.kh = s.params.population;
  s.cost.mu1 = 1.41;
  s.cost.mu2 = 1.3;
  s.cost.sigma_icu = 0.015;
  s.cost.icu_capacity = 15e3;
  s.cost.t_min = 30;
  s.cost.r_gap = 0.2;
  s.cost.ke = calibrate_ke(s.calibration.delta_gdp, s.params, s.calibration.r1_ref,
                           s.calibration.tau1_ref);
  s.grid = coarse_grid(s.cost.t_min);
  s.integrator = IntegratorConfig{};
  return s;
}

Scenario preset(std::string_view name) {
  if (name == "france") return france_preset();
  if (name == "france-tradeoff") {
    Scenario s = france_preset();
    s.label = "france-tradeoff";
    s.horizon = 210;
    return s;
  }
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (available: france, france-tradeoff)");
}

PolicyPlan french_policy_plan(double horizon, double r3, double adjustment_start) {
  PolicyPlan plan;
  plan.tau0 = 17;
  plan.tau1 = 55;
  const double adjust = adjustment_start < 0 ? horizon : adjustment_start;
  require(adjust >= plan.tau0 + plan.tau1 && adjust <= horizon,
          "french_policy_plan: adjustment_start must lie in [72, horizon]");
  plan.tau2 = adjust - (plan.tau0 + plan.tau1);
  plan.r1 = 0.6;
  plan.r2 = 0.9;
  plan.r3 = r3;
  plan.horizon = horizon;
  plan.validate();
  return plan;
}

void Scenario::validate() const {
  require(!label.empty(), "scenario: label must be non-empty");
  require(std::isfinite(horizon) && horizon > 0 && is_integral_day(horizon),
          "scenario: horizon must be a positive whole number of days");
  parse_iso_date(origin_date);
  params.validate();
  drift.validate(horizon);
  cost.validate();
  integrator.validate();
  grid.validate(horizon);
}

namespace {

std::vector<double> parse_axis(const json& v, const std::string& name) {
  if (v.is_array()) {
    std::vector<double> values;
    for (const auto& x : v) {
      require(x.is_number(), "scenario: grid." + name + " entries must be numbers");
      values.push_back(x.get<double>());
    }
    return values;
  }
  if (v.is_object()) {
    check_keys(v, {"min", "max", "step"}, "grid." + name);
    return grid_range(get_number(v, "min", "grid." + name), get_number(v, "max", "grid." + name),
                      get_number(v, "step", "grid." + name));
  }
  throw ConfigError("scenario: grid." + name + " must be an array or a {min,max,step} object");
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: JSON parse error: ") + e.what());
  }
  require(doc.is_object(), "scenario: document root must be an object");
  check_keys(doc,
             {"schema_version", "label", "horizon", "origin_date", "epidemic", "drift", "cost",
              "ke_calibration", "grid", "integrator"},
             "root");

  Scenario s = france_preset();

  if (doc.contains("schema_version")) {
    require(doc["schema_version"].is_number_integer() && doc["schema_version"].get<int>() == 1,
            "scenario: unsupported schema_version (expected 1)");
  }
  if (doc.contains("label")) {
    require(doc["label"].is_string(), "scenario: label must be a string");
    s.label = doc["label"].get<std::string>();
  }
  maybe_number(doc, "horizon", "root", s.horizon);
  if (doc.contains("origin_date")) {
    require(doc["origin_date"].is_string(), "scenario: origin_date must be a string");
    s.origin_date = doc["origin_date"].get<std::string>();
  }

  bool population_given = false;
  if (doc.contains("epidemic")) {
    const json& ep = doc["epidemic"];
    check_keys(ep, {"r0", "delta", "gamma", "population", "exposed0", "exposed0_count"},
               "epidemic");
    maybe_number(ep, "r0", "epidemic", s.params.r0);
    maybe_number(ep, "delta", "epidemic", s.params.delta);
    maybe_number(ep, "gamma", "epidemic", s.params.gamma);
    if (ep.contains("population")) {
      s.params.population = get_number(ep, "population", "epidemic");
      population_given = true;
    }
    require(!(ep.contains("exposed0") && ep.contains("exposed0_count")),
            "scenario: give either epidemic.exposed0 or epidemic.exposed0_count, not both");
    maybe_number(ep, "exposed0", "epidemic", s.params.exposed0);
    if (ep.contains("exposed0_count")) {
      s.params.exposed0 = get_number(ep, "exposed0_count", "epidemic") / s.params.population;
    }
  }

  if (doc.contains("drift")) {
    const json& dr = doc["drift"];
    check_keys(dr, {"a1", "a2", "a3"}, "drift");
    maybe_number(dr, "a1", "drift", s.drift.a1);
    maybe_number(dr, "a2", "drift", s.drift.a2);
    maybe_number(dr, "a3", "drift", s.drift.a3);
  }

  bool kh_given = false;
  bool t_min_given = false;
  if (doc.contains("cost")) {
    const json& co = doc["cost"];
    require(!co.contains("ke"),
            "scenario: cost.ke cannot be set directly; it is derived from ke_calibration");
    check_keys(co, {"alpha", "kh", "mu1", "mu2", "sigma_icu", "icu_capacity", "t_min", "r_gap"},
               "cost");
    maybe_number(co, "alpha", "cost", s.cost.alpha);
    if (co.contains("kh")) {
      s.cost.kh = get_number(co, "kh", "cost");
      kh_given = true;
    }
    maybe_number(co, "mu1", "cost", s.cost.mu1);
    maybe_number(co, "mu2", "cost", s.cost.mu2);
    maybe_number(co, "sigma_icu", "cost", s.cost.sigma_icu);
    maybe_number(co, "icu_capacity", "cost", s.cost.icu_capacity);
    if (co.contains("t_min")) {
      s.cost.t_min = get_number(co, "t_min", "cost");
      t_min_given = true;
    }
    maybe_number(co, "r_gap", "cost", s.cost.r_gap);
  }
  // The health conversion factor tracks the population unless pinned.
  if (population_given && !kh_given) s.cost.kh = s.params.population;

  if (doc.contains("ke_calibration")) {
    const json& ca = doc["ke_calibration"];
    check_keys(ca, {"delta_gdp", "r1_ref", "tau1_ref"}, "ke_calibration");
    maybe_number(ca, "delta_gdp", "ke_calibration", s.calibration.delta_gdp);
    maybe_number(ca, "r1_ref", "ke_calibration", s.calibration.r1_ref);
    maybe_number(ca, "tau1_ref", "ke_calibration", s.calibration.tau1_ref);
  }
  s.cost.ke = calibrate_ke(s.calibration.delta_gdp, s.params, s.calibration.r1_ref,
                           s.calibration.tau1_ref);

  if (doc.contains("grid")) {
    const json& gr = doc["grid"];
    if (gr.is_string()) {
      const std::string name = gr.get<std::string>();
      if (name == "coarse") {
        s.grid = coarse_grid(s.cost.t_min);
      } else if (name == "full") {
        s.grid = full_grid(s.cost.t_min);
      } else {
        throw ConfigError("scenario: grid preset must be 'coarse' or 'full', got '" + name +
                          "'");
      }
    } else {
      require(gr.is_object(), "scenario: grid must be an object or a preset name");
      check_keys(gr, {"tau0", "tau1", "tau2", "r1", "r2", "r3"}, "grid");
      s.grid = coarse_grid(s.cost.t_min);
      if (gr.contains("tau0")) s.grid.tau0 = parse_axis(gr["tau0"], "tau0");
      if (gr.contains("tau1")) s.grid.tau1 = parse_axis(gr["tau1"], "tau1");
      if (gr.contains("tau2")) s.grid.tau2 = parse_axis(gr["tau2"], "tau2");
      if (gr.contains("r1")) s.grid.r1 = parse_axis(gr["r1"], "r1");
      if (gr.contains("r2")) s.grid.r2 = parse_axis(gr["r2"], "r2");
      if (gr.contains("r3")) s.grid.r3 = parse_axis(gr["r3"], "r3");
    }
  } else if (t_min_given) {
    s.grid = coarse_grid(s.cost.t_min);
  }

  if (doc.contains("integrator")) {
    const json& in = doc["integrator"];
    check_keys(in, {"method", "substeps_per_day", "abs_tol", "rel_tol"}, "integrator");
    if (in.contains("method")) {
      require(in["method"].is_string(), "scenario: integrator.method must be a string");
      const std::string m = in["method"].get<std::string>();
      if (m == "rk4") {
        s.integrator.method = IntegratorMethod::kFixedRk4;
      } else if (m == "rk45") {
        s.integrator.method = IntegratorMethod::kAdaptiveRk45;
      } else {
        throw ConfigError("scenario: integrator.method must be 'rk4' or 'rk45', got '" + m +
                          "'");
      }
    }
    if (in.contains("substeps_per_day")) {
      const double v = get_number(in, "substeps_per_day", "integrator");
      require(is_integral_day(v) && v >= 1, "scenario: substeps_per_day must be an integer >= 1");
      s.integrator.substeps_per_day = static_cast<int>(v);
    }
    maybe_number(in, "abs_tol", "integrator", s.integrator.abs_tol);
    maybe_number(in, "rel_tol", "integrator", s.integrator.rel_tol);
  }

  s.validate();
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_scenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Scenario resolve_scenario_ref(const std::string& ref) {
  if (ref == "france" || ref == "france-tradeoff") return preset(ref);
  return load_scenario_file(ref);
}

GridSpec load_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open grid file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": JSON parse error: " + e.what());
  }
  require(doc.is_object(), path.string() + ": grid document root must be an object");
  check_keys(doc, {"tau0", "tau1", "tau2", "r1", "r2", "r3"}, "grid");
  GridSpec g;
  for (const char* axis : {"tau0", "tau1", "tau2", "r1", "r2", "r3"}) {
    require(doc.contains(axis),
            path.string() + ": grid document must define axis '" + axis + "'");
  }
  g.tau0 = parse_axis(doc["tau0"], "tau0");
  g.tau1 = parse_axis(doc["tau1"], "tau1");
  g.tau2 = parse_axis(doc["tau2"], "tau2");
  g.r1 = parse_axis(doc["r1"], "r1");
  g.r2 = parse_axis(doc["r2"], "r2");
  g.r3 = parse_axis(doc["r3"], "r3");
  return g;
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["schema_version"] = 1;
  doc["label"] = s.label;
  doc["horizon"] = s.horizon;
  doc["origin_date"] = s.origin_date;
  doc["epidemic"] = {{"r0", s.params.r0},
                     {"delta", s.params.delta},
                     {"gamma", s.params.gamma},
                     {"population", s.params.population},
                     {"exposed0", s.params.exposed0}};
  doc["drift"] = {{"a1", s.drift.a1}, {"a2", s.drift.a2}, {"a3", s.drift.a3}};
  doc["cost"] = {{"alpha", s.cost.alpha},
                 {"kh", s.cost.kh},
                 {"mu1", s.cost.mu1},
                 {"mu2", s.cost.mu2},
                 {"sigma_icu", s.cost.sigma_icu},
                 {"icu_capacity", s.cost.icu_capacity},
                 {"t_min", s.cost.t_min},
                 {"r_gap", s.cost.r_gap}};
  doc["ke_calibration"] = {{"delta_gdp", s.calibration.delta_gdp},
                           {"r1_ref", s.calibration.r1_ref},
                           {"tau1_ref", s.calibration.tau1_ref}};
  doc["grid"] = {{"tau0", s.grid.tau0}, {"tau1", s.grid.tau1}, {"tau2", s.grid.tau2},
                 {"r1", s.grid.r1},     {"r2", s.grid.r2},     {"r3", s.grid.r3}};
  doc["integrator"] = json::object();
  doc["integrator"]["method"] =
      s.integrator.method == IntegratorMethod::kFixedRk4 ? "rk4" : "rk45";
  doc["integrator"]["substeps_per_day"] = s.integrator.substeps_per_day;
  doc["integrator"]["abs_tol"] = s.integrator.abs_tol;
  doc["integrator"]["rel_tol"] = s.integrator.rel_tol;
  return doc.dump(2) + "\n";
}

}  // namespace epiphase

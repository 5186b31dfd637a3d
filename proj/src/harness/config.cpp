// Copyright 2026 The rotcap Authors.
//
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

#include "rotcap/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "rotcap/error.hpp"

namespace rotcap::harness {

namespace {

std::string where(const std::string& key, const TomlValue& v) {
  return v.line > 0 ? key + " (line " + std::to_string(v.line) + ")" : key;
}

[[noreturn]] void type_error(const std::string& key, const TomlValue& v, const char* want) {
  throw ConfigError(where(key, v), std::string("expected ") + want + ", got " + v.describe());
}

double as_double(const std::string& key, const TomlValue& v) {
  if (!v.is_number()) type_error(key, v, "a number");
  return v.as_number();
}

std::int64_t as_int(const std::string& key, const TomlValue& v) {
  if (v.kind != TomlValue::Kind::Integer) type_error(key, v, "an integer");
  return v.integer;
}

bool as_bool(const std::string& key, const TomlValue& v) {
  if (v.kind != TomlValue::Kind::Bool) type_error(key, v, "a boolean");
  return v.boolean;
}

std::string as_string(const std::string& key, const TomlValue& v) {
  if (v.kind != TomlValue::Kind::String) type_error(key, v, "a string");
  return v.text;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

LimitAxis parse_axis(const std::string& s) {
  const std::string u = upper(s);
  if (u == "AUTO") return LimitAxis::Auto;
  if (u == "CONSTANT") return LimitAxis::Constant;
  if (u == "VARIABLE") return LimitAxis::Variable;
  throw ConfigError("", "unknown limit axis '" + s + "'");
}

using Setter = std::function<void(Config&, const std::string&, const TomlValue&)>;

template <class F>
Setter wrap(F f) {
  return [f](Config& c, const std::string& key, const TomlValue& v) {
    try {
      f(c, key, v);
    } catch (const ConfigError& e) {
      if (!e.key().empty()) throw;
      throw ConfigError(where(key, v), e.what());
    }
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"seed", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         const auto s = as_int(k, v);
         if (s < 0) throw ConfigError(where(k, v), "must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       })},
      {"grid.nx", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.grid.nx = static_cast<int>(as_int(k, v)); })},
      {"grid.ny", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.grid.ny = static_cast<int>(as_int(k, v)); })},
      {"grid.nz", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.grid.nz = static_cast<int>(as_int(k, v)); })},
      {"grid.dealias", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.grid.dealias = as_double(k, v); })},
      {"physics.epsilon", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.physics.epsilon.clear();
         if (v.kind == TomlValue::Kind::Array) {
           for (const auto& item : v.items) c.physics.epsilon.push_back(as_double(k, item));
         } else {
           c.physics.epsilon.push_back(as_double(k, v));
         }
       })},
      {"physics.nu", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.physics.nu = as_double(k, v); })},
      {"physics.gamma", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.physics.gamma = as_double(k, v); })},
      {"physics.rotation", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.physics.rotation = nsk::RotationProfile::parse_kind(upper(as_string(k, v)));
       })},
      {"physics.rho_min", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.physics.rho_min = as_double(k, v); })},
      {"scheme.integrator", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.scheme.integrator = nsk::parse_scheme(upper(as_string(k, v)));
       })},
      {"scheme.dt", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         if (v.kind == TomlValue::Kind::String && v.text == "auto") {
           c.scheme.dt.reset();
         } else {
           c.scheme.dt = as_double(k, v);
         }
       })},
      {"scheme.cfl", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.scheme.cfl = as_double(k, v); })},
      {"scheme.t_final", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.scheme.t_final = as_double(k, v); })},
      {"initial.modes", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.initial.modes.clear();
         if (v.kind == TomlValue::Kind::Array) {
           for (const auto& item : v.items) c.initial.modes.push_back(as_string(k, item));
         } else {
           c.initial.modes.push_back(as_string(k, v));
         }
         for (const auto& m : c.initial.modes) nsk::parse_mode(m);
       })},
      {"limit.axis", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.limit.axis = parse_axis(as_string(k, v)); })},
      {"limit.dt", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.limit.dt = as_double(k, v); })},
      {"limit.tolerance", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.limit.tolerance = as_double(k, v); })},
      {"limit.max_iterations", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.limit.max_iterations = static_cast<int>(as_int(k, v));
       })},
      {"experiment.filter_M", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.experiment.filter_M = static_cast<int>(as_int(k, v));
       })},
      {"experiment.window", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.experiment.window = as_double(k, v); })},
      {"experiment.output_dir", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.experiment.output_dir = as_string(k, v);
       })},
      {"experiment.sample_every", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.experiment.sample_every = static_cast<int>(as_int(k, v));
       })},
      {"experiment.snapshots", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.experiment.snapshots = as_bool(k, v); })},
      {"thresholds.slope_target", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.thresholds.slope_target = as_double(k, v); })},
      {"thresholds.slope_tolerance", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.thresholds.slope_tolerance = as_double(k, v);
       })},
      {"thresholds.residual_factor", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.thresholds.residual_factor = as_double(k, v);
       })},
      {"thresholds.energy_slack", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.thresholds.energy_slack = as_double(k, v); })},
      {"thresholds.mass_drift", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.thresholds.mass_drift = as_double(k, v); })},
      {"thresholds.coriolis", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.thresholds.coriolis = as_double(k, v); })},
      {"thresholds.bd_kappa", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.thresholds.bd_kappa = as_double(k, v); })},
      {"analysis.n", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.analysis.n = static_cast<int>(as_int(k, v)); })},
      {"analysis.m_min", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.analysis.m_min = static_cast<int>(as_int(k, v)); })},
      {"analysis.m_max", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.analysis.m_max = static_cast<int>(as_int(k, v)); })},
      {"analysis.ensemble", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.analysis.ensemble = static_cast<int>(as_int(k, v));
       })},
      {"analysis.band", wrap([](Config& c, const std::string& k, const TomlValue& v) { c.analysis.band = as_double(k, v); })},
      {"analysis.exponent_tolerance", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.analysis.exponent_tolerance = as_double(k, v);
       })},
      {"analysis.growth_limit", wrap([](Config& c, const std::string& k, const TomlValue& v) {
         c.analysis.growth_limit = as_double(k, v);
       })},
  };
  return table;
}

bool power_of_two(int n) { return n >= 4 && (n & (n - 1)) == 0; }

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

void Config::validate() const {
  require(power_of_two(grid.nx), "grid.nx", "must be a power of two >= 4");
  require(power_of_two(grid.ny), "grid.ny", "must be a power of two >= 4");
  require(power_of_two(grid.nz), "grid.nz", "must be a power of two >= 4");
  require(grid.dealias > 0.0 && grid.dealias <= 1.0, "grid.dealias", "must lie in (0, 1]");
  require(!physics.epsilon.empty(), "physics.epsilon", "needs at least one value");
  for (double e : physics.epsilon) require(e > 0.0 && std::isfinite(e), "physics.epsilon", "values must be positive");
  require(physics.nu >= 0.0 && std::isfinite(physics.nu), "physics.nu", "must be non-negative");
  require(physics.gamma > 1.0 && std::isfinite(physics.gamma), "physics.gamma", "must exceed 1");
  require(physics.rho_min > 0.0 && physics.rho_min < 1.0, "physics.rho_min", "must lie in (0, 1)");
  if (scheme.dt) require(*scheme.dt > 0.0 && std::isfinite(*scheme.dt), "scheme.dt", "must be positive");
  require(scheme.cfl > 0.0 && scheme.cfl <= 1.0, "scheme.cfl", "must lie in (0, 1]");
  require(scheme.t_final > 0.0 && std::isfinite(scheme.t_final), "scheme.t_final", "must be positive");
  require(limit.dt > 0.0 && std::isfinite(limit.dt), "limit.dt", "must be positive");
  require(limit.tolerance > 0.0, "limit.tolerance", "must be positive");
  require(limit.max_iterations > 0, "limit.max_iterations", "must be positive");
  require(experiment.filter_M >= 0, "experiment.filter_M", "must be non-negative");
  require(experiment.window >= 0.0, "experiment.window", "must be non-negative");
  require(!experiment.output_dir.empty(), "experiment.output_dir", "must not be empty");
  require(experiment.sample_every > 0, "experiment.sample_every", "must be positive");
  require(thresholds.slope_tolerance > 0.0, "thresholds.slope_tolerance", "must be positive");
  require(thresholds.residual_factor >= 1.0, "thresholds.residual_factor", "must be at least 1");
  require(thresholds.energy_slack > 0.0, "thresholds.energy_slack", "must be positive");
  require(thresholds.bd_kappa > 0.0, "thresholds.bd_kappa", "must be positive");
  require(power_of_two(analysis.n), "analysis.n", "must be a power of two >= 4");
  require(analysis.m_min >= 0 && analysis.m_max > analysis.m_min, "analysis.m_max", "must exceed analysis.m_min");
  require(analysis.ensemble > 0, "analysis.ensemble", "must be positive");
  require(analysis.band > 1.0, "analysis.band", "must exceed 1");
  require(analysis.growth_limit >= 1.0, "analysis.growth_limit", "must be at least 1");
}

void Config::validate_sweep() const {
  validate();
  require(physics.epsilon.size() >= 3, "physics.epsilon", "a sweep needs at least three values");
  for (std::size_t i = 1; i < physics.epsilon.size(); ++i) {
    require(physics.epsilon[i] < physics.epsilon[i - 1], "physics.epsilon", "sweep values must be strictly decreasing");
  }
}

std::vector<nsk::ModeSpec> Config::mode_specs() const {
  std::vector<nsk::ModeSpec> out;
  for (const auto& m : initial.modes) out.push_back(nsk::parse_mode(m));
  return out;
}

nlohmann::json Config::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["grid"] = {{"nx", grid.nx}, {"ny", grid.ny}, {"nz", grid.nz}, {"dealias", grid.dealias}};
  j["physics"] = {{"epsilon", physics.epsilon},
                  {"nu", physics.nu},
                  {"gamma", physics.gamma},
                  {"rotation", nsk::to_string(physics.rotation)},
                  {"rho_min", physics.rho_min}};
  j["scheme"] = {{"integrator", nsk::to_string(scheme.integrator)},
                 {"dt", scheme.dt ? nlohmann::json(*scheme.dt) : nlohmann::json("auto")},
                 {"cfl", scheme.cfl},
                 {"t_final", scheme.t_final}};
  j["initial"] = {{"modes", initial.modes}};
  j["limit"] = {{"axis", to_string(limit.axis)},
                {"dt", limit.dt},
                {"tolerance", limit.tolerance},
                {"max_iterations", limit.max_iterations}};
  j["experiment"] = {{"filter_M", experiment.filter_M},
                     {"window", experiment.window},
                     {"output_dir", experiment.output_dir},
                     {"sample_every", experiment.sample_every},
                     {"snapshots", experiment.snapshots}};
  j["thresholds"] = {{"slope_target", thresholds.slope_target},
                     {"slope_tolerance", thresholds.slope_tolerance},
                     {"residual_factor", thresholds.residual_factor},
                     {"energy_slack", thresholds.energy_slack},
                     {"mass_drift", thresholds.mass_drift},
                     {"coriolis", thresholds.coriolis},
                     {"bd_kappa", thresholds.bd_kappa}};
  j["analysis"] = {{"n", analysis.n},
                   {"m_min", analysis.m_min},
                   {"m_max", analysis.m_max},
                   {"ensemble", analysis.ensemble},
                   {"band", analysis.band},
                   {"exponent_tolerance", analysis.exponent_tolerance},
                   {"growth_limit", analysis.growth_limit}};
  return j;
}

Config config_from_toml(const TomlDocument& doc) {
  Config c;
  const auto& table = setters();
  for (const auto& [key, value] : doc) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(where(key, value), "unknown key");
    it->second(c, key, value);
  }
  return c;
}

Config load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  TomlDocument doc = load_toml(path);
  apply_overrides(doc, overrides);
  Config c = config_from_toml(doc);
  c.validate();
  return c;
}

const char* to_string(LimitAxis axis) {
  switch (axis) {
    case LimitAxis::Auto: return "AUTO";
    case LimitAxis::Constant: return "CONSTANT";
    case LimitAxis::Variable: return "VARIABLE";
  }
  return "AUTO";
}

}  // namespace rotcap::harness

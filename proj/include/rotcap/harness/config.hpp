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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotcap/harness/toml.hpp"
#include "rotcap/nsk/nsk.hpp"

namespace rotcap::harness {

struct GridConfig {
  int nx = 64;
  int ny = 64;
  int nz = 16;
  double dealias = 2.0 / 3.0;
};

struct PhysicsConfig {
  /// One entry for single runs; strictly decreasing for sweeps.
  std::vector<double> epsilon{0.2, 0.1, 0.05};
  double nu = 0.1;
  double gamma = 2.0;
  nsk::RotationKind rotation = nsk::RotationKind::SmoothNondeg;
  double rho_min = 0.1;
};

struct SchemeConfig {
  nsk::Scheme integrator = nsk::Scheme::Imex;
  /// Fixed step; when absent dt = cfl · max_stable_dt of the initial state.
  std::optional<double> dt = 2.5e-3;
  double cfl = 0.5;
  double t_final = 1.0;
};

struct InitialConfig {
  std::vector<std::string> modes;
};

enum class LimitAxis { Auto, Constant, Variable };

struct LimitConfig {
  LimitAxis axis = LimitAxis::Auto;
  double dt = 1e-2;
  double tolerance = 1e-10;
  int max_iterations = 500;
};

struct ExperimentConfig {
  int filter_M = 3;
  double window = 0.5;
  std::string output_dir = "out";
  /// NSK steps between kernel-residual and trajectory samples.
  int sample_every = 4;
  bool snapshots = true;
};

struct Thresholds {
  double slope_target = 1.0;
  double slope_tolerance = 0.2;
  double residual_factor = 1.5;
  double energy_slack = 1e-3;
  double mass_drift = 1e-10;
  double coriolis = 1e-12;
  double bd_kappa = 2.0;
};

struct AnalysisConfig {
  /// Points of the 1D analysis grid.
  int n = 4096;
  int m_min = 2;
  int m_max = 8;
  int ensemble = 32;
  double band = 20.0;
  double exponent_tolerance = 0.15;
  double growth_limit = 2.0;
};

struct Config {
  std::uint64_t seed = 20260101;
  GridConfig grid;
  PhysicsConfig physics;
  SchemeConfig scheme;
  InitialConfig initial;
  LimitConfig limit;
  ExperimentConfig experiment;
  Thresholds thresholds;
  AnalysisConfig analysis;

  /// Throws ConfigError naming the key on out-of-range values.
  void validate() const;
  /// Additionally requires at least three ε values, strictly decreasing.
  void validate_sweep() const;
  /// Full echo of every key, for manifests.
  nlohmann::json to_json() const;
  std::vector<nsk::ModeSpec> mode_specs() const;
};

/// Builds a Config from a parsed document. Unknown keys and ill-typed
/// values raise ConfigError naming the key and its line.
Config config_from_toml(const TomlDocument& doc);

/// Reads the file, applies dotted-key overrides and validates.
Config load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

const char* to_string(LimitAxis axis);

}  // namespace rotcap::harness

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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotcap/geo/wave.hpp"
#include "rotcap/harness/config.hpp"
#include "rotcap/io/compare.hpp"
#include "rotcap/io/slope.hpp"
#include "rotcap/nsk/run.hpp"

namespace rotcap::harness {

/// One NSK run of a sweep. Files are relative to the output directory.
struct MemberOutcome {
  double epsilon = 0.0;
  bool completed = false;
  std::string error;
  double dt = 0.0;
  int steps = 0;
  double final_time = 0.0;
  double sup_density_deviation = 0.0;  ///< sup_t ‖ρ−1‖_{L²}
  /// Same over t > 0; the sup above is attained at t = 0 for common data.
  double sup_density_deviation_evolved = 0.0;
  double sup_density_linf = 0.0;       ///< sup over samples of ‖ρ−1‖_{L∞}
  geo::KernelResidual final_kernel;    ///< at the last accepted state
  nsk::LedgerReport ledger;
  double max_mass_drift = 0.0;
  double max_coriolis = 0.0;
  bool mass_pass = false;
  bool coriolis_pass = false;
  /// x³ means of r = (ρ−1)/ε at the sample times.
  std::vector<io::FieldSample> samples;
  std::optional<io::FilteredComparison> comparison;
  std::vector<std::string> files;
  /// Wall time; kept out of to_json so summaries stay reproducible.
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

struct LimitOutcome {
  LimitAxis axis = LimitAxis::Variable;
  bool completed = false;
  std::string error;
  double dt = 0.0;
  int steps = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  int max_iterations = 0;
  std::vector<io::FieldSample> samples;
  std::vector<std::string> files;

  nlohmann::json to_json() const;
};

struct SweepReport {
  std::vector<MemberOutcome> members;  ///< in config order (decreasing ε)
  LimitOutcome limit;
  std::optional<io::SlopeFit> slope;
  /// Fit of the t > 0 sup; reported only.
  std::optional<io::SlopeFit> slope_evolved;
  bool slope_pass = false;
  /// Final geostrophic residuals in member order.
  std::vector<double> residuals;
  bool residual_pass = false;
  /// Time-averaged filtered discrepancies in member order.
  std::vector<double> filtered;
  bool filtered_monotone = false;
  bool filtered_pass = false;
  bool ledger_pass = false;
  bool complete = false;
  bool pass = false;
  int workers = 1;
  std::string outputs_digest;
  std::filesystem::path manifest_path;

  nlohmann::json summary() const;
};

/// ROTCAP_WORKERS when set to a positive integer, else the hardware
/// concurrency (at least 1).
int resolve_workers();

/// Runs one ε of the config into dir/relative. Never throws for run
/// failures (vacuum, CFL, solver); they are recorded in the outcome.
MemberOutcome run_member(const Config& config, double epsilon, const std::filesystem::path& dir,
                         const std::string& relative);

/// Reconstructs the limit datum from the configured initial modes and
/// integrates the limit equation to t_final.
LimitOutcome run_limit(const Config& config, const std::filesystem::path& dir, const std::string& relative);

/// The axis actually used: AUTO follows the rotation profile.
LimitAxis resolve_axis(const Config& config);

/// Runs every ε member on a worker pool, the limit solver once, the
/// filtered comparisons and the trend checks, then writes summary.json and
/// manifest.json into the output directory. workers ≤ 0 means
/// resolve_workers().
SweepReport run_sweep(const Config& config, int workers = 0);

}  // namespace rotcap::harness


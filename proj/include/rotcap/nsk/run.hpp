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

#include <functional>
#include <optional>
#include <vector>

#include "rotcap/nsk/nsk.hpp"

namespace rotcap::nsk {

/// Diagnostics of one recorded time level.
struct StepRecord {
  double t = 0.0;
  EnergyParts energy;
  double bd = 0.0;
  /// ∫ρ|Du|² and ε⁻²∫(|∇²ρ|² + Π′|∇√ρ|²) at this level.
  double viscous_rate = 0.0;
  double bd_rate = 0.0;
  double mass = 0.0;
  double coriolis_relative = 0.0;
  double parity = 0.0;
  double rho_min = 0.0;
  /// ‖ρ − 1‖_{L²}.
  double density_deviation = 0.0;
};

StepRecord record(const NskState& state, const Model& model);

struct RunOptions {
  /// Called after every step with the accepted state and its record.
  std::function<void(const NskState&, const StepRecord&)> observer;
};

struct RunResult {
  NskState final_state;
  std::vector<StepRecord> records;
  int steps = 0;
  double dt = 0.0;
  double max_mass_drift = 0.0;
  double max_coriolis_relative = 0.0;
  double max_parity = 0.0;
  double sup_density_deviation = 0.0;
};

/// Integrates to t_final with the largest dt ≤ params.dt that divides it
/// evenly, recording every level.
RunResult simulate(const NskState& initial, const Model& model, const RunOptions& options = {});

struct LedgerReport {
  bool energy_pass = false;
  bool bd_pass = false;
  double tol_energy = 1e-3;
  /// max_t (E(t) + ν∫₀ᵗ∫ρ|Du|² − E(0)) / E(0), signed.
  double max_energy_residual = 0.0;
  double min_energy_residual = 0.0;
  /// C = κ(E₀ + F₀) and the largest observed left side of the BD bound over C(1+T).
  double bd_constant = 0.0;
  double bd_max_ratio = 0.0;
  std::optional<double> first_energy_violation;
  std::optional<double> first_bd_violation;
};

/// Discrete energy and BD-entropy inequalities along a recorded trajectory.
/// Time integrals use the trapezoidal rule. Never throws.
LedgerReport energy_ledger(const std::vector<StepRecord>& records, double nu, double tol_energy = 1e-3,
                           double kappa = 2.0);

}  // namespace rotcap::nsk

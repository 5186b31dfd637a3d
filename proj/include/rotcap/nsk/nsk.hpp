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

#include <string>
#include <vector>

#include "rotcap/nsk/pressure.hpp"
#include "rotcap/nsk/rotation.hpp"
#include "rotcap/spectral/field.hpp"

namespace rotcap::nsk {

/// (ρ, m = ρu) at time t on a 3D grid.
struct NskState {
  SpectralField rho;
  VecField m;
  double t = 0.0;

  const GridPtr& grid() const { return rho.grid(); }
  /// u = m/ρ at the nodes, dealiased.
  VecField velocity() const;
  /// r = (ρ − 1)/ε.
  SpectralField r(double epsilon) const;
  /// a = (1/ρ − 1)/ε.
  SpectralField a(double epsilon) const;
  double mass() const;

  static NskState rest(const GridPtr& grid);
};

enum class Scheme { Imex, ExplicitRk4 };

Scheme parse_scheme(const std::string& name);
const char* to_string(Scheme s);

struct SimParams {
  double epsilon = 0.1;
  double nu = 0.1;
  double dt = 1e-3;
  double t_final = 1.0;
  Scheme scheme = Scheme::Imex;
  double rho_min = 0.1;
  bool dealias = true;

  /// Throws PreconditionError on out-of-range values.
  void validate() const;
};

/// Everything a step needs besides the state.
struct Model {
  SimParams params;
  RotationProfile rotation;
  PressureLaw pressure;
};

struct Tendency {
  SpectralField drho;
  VecField dm;
};

/// Time derivatives of the rescaled system with Du = ½(∇u + ᵗ∇u):
/// dρ/dt = −div m,
/// dm/dt = −div(m⊗u) − ε⁻²∇Π(ρ) + ν div(ρDu) + ε⁻²ρ∇Δρ − ε⁻¹c e³×m.
/// Throws VacuumError if ρ < ρ_min at a node.
Tendency rhs(const NskState& state, const Model& model);

/// The stiff linear part used by the IMEX scheme (see the source for the
/// per-mode symbol).
Tendency linear_part(const NskState& state, const Model& model);

/// Largest stable dt for the configured scheme at this state, with the
/// binding rule's name.
struct StableStep {
  double dt = 0.0;
  std::string rule;
};
StableStep max_stable_dt(const NskState& state, const Model& model);

/// Advances by model.params.dt (IMEX ARS(2,2,2) or classical RK4), then
/// projects onto the x³ parity class. Throws CflError when dt exceeds
/// max_stable_dt and VacuumError when the new density leaves [ρ_min, ∞).
NskState step(const NskState& state, const Model& model);

/// Energy addends integrated over the cell.
struct EnergyParts {
  double internal = 0.0;   ///< ε⁻²∫h(ρ)
  double cold = 0.0;       ///< ε⁻²∫h_c(ρ)
  double kinetic = 0.0;    ///< ½∫ρ|u|²
  double capillary = 0.0;  ///< ½ε⁻²∫|∇ρ|²
  double total = 0.0;
};

EnergyParts classical_energy(const NskState& state, double epsilon, const PressureLaw& pressure);

/// F = 2ν²∫|∇√ρ|² and the equivalent (ν²/2)∫ρ|∇log ρ|².
struct BdEntropy {
  double sqrt_form = 0.0;
  double log_form = 0.0;
};
BdEntropy bd_entropy(const NskState& state, double nu, double rho_min = 0.0);

/// ∫ρ|Du|².
double viscous_dissipation(const NskState& state);
/// ε⁻²∫(|∇²ρ|² + Π′(ρ)|∇√ρ|²).
double bd_dissipation(const NskState& state, double epsilon, const PressureLaw& pressure);

/// Work of the Coriolis force on the node velocity, with the scale
/// ε⁻¹∫|c||m||u| it is measured against.
struct CoriolisWork {
  double work = 0.0;
  double scale = 0.0;
};
CoriolisWork coriolis_work(const NskState& state, const Model& model);

/// Largest parity residual over ρ, m¹, m² (even) and m³ (odd).
double parity_residual(const NskState& state);

/// One Fourier mode of an initial field: amp · trig(k₁x¹ + k₂x²) · V(x³),
/// with V = cos(πn₃x³) for r, u¹, u² and sin(πn₃x³) for u³.
struct ModeSpec {
  std::string field;  ///< "r", "u1", "u2" or "u3"
  double amplitude = 0.0;
  bool cosine = true;
  int k1 = 0;
  int k2 = 0;
  int n3 = 0;
};
/// Parses "<field> <amp> <cos|sin> k1 k2 n3".
ModeSpec parse_mode(const std::string& text);

struct InitialFields {
  SpectralField r0;
  VecField u0;
};
InitialFields synthesize(const GridPtr& grid, const std::vector<ModeSpec>& modes);

struct InitialDatum {
  NskState state;
  EnergyParts energy;
  BdEntropy bd;
};
/// ρ₀ = 1 + εr₀, m₀ = ρ₀u₀, parity projected. Throws VacuumError when
/// ρ₀ < ρ_min somewhere.
InitialDatum init_ill_prepared(const SpectralField& r0, const VecField& u0, double epsilon,
                               const PressureLaw& pressure, double nu, double rho_min = 0.1);

}  // namespace rotcap::nsk

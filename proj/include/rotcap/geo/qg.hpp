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

#include "rotcap/spectral/field.hpp"

namespace rotcap::geo {

using spectral::SpectralField;

/// Horizontal limit state; r lives on a 2D grid.
struct QgState {
  SpectralField r;
  double t = 0.0;
};

/// X(r) = (Id−Δ_h)r.
SpectralField stream_function(const SpectralField& r);
/// Δ_h²f.
SpectralField bilaplacian_h(const SpectralField& f);
/// q = (Id−Δ_h+Δ_h²)r.
SpectralField potential_vorticity(const SpectralField& r);

/// ∂_t r of the constant-axis QG equation,
/// −(Id−Δ_h+Δ_h²)⁻¹[∇_h^⊥X·∇_hΔ_h²r + (ν/2)Δ_h²X], Jacobian dealiased.
SpectralField qg_rhs_const(const SpectralField& r, double nu);
/// Same tendency from ∂_t q + J(X, q) + (ν/2)Δ_h²X = 0.
SpectralField qg_rhs_const_q_form(const SpectralField& r, double nu);

/// Decay rate (ν/2)|k|⁴(1+|k|²)/(1+|k|²+|k|⁴) of the linear part.
double qg_decay_rate(double nu, double k_squared);

/// ½Σ_k (1+|k|²)(1+|k|²+|k|⁴)|r̂_k|² over normalized coefficients.
double qg_energy_const(const SpectralField& r);

/// 0.5 min(dx)/max|∇_h^⊥X|; infinite for X ≡ 0.
double qg_max_dt(const SpectralField& r);

/// Integrating-factor RK4 step: the linear decay is exact, the Jacobian is
/// integrated with RK4. Throws CflError above qg_max_dt.
QgState qg_step_const(const QgState& state, double nu, double dt);

}  // namespace rotcap::geo

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

#include "rotcap/geo/qg.hpp"
#include "rotcap/nsk/rotation.hpp"

namespace rotcap::geo {

using nsk::RotationProfile;

/// Symmetric 2×2 tensor field.
struct SymTensor2 {
  SpectralField s11;
  SpectralField s12;
  SpectralField s22;
};

/// ∫ A:B = ∫ A₁₁B₁₁ + 2A₁₂B₁₂ + A₂₂B₂₂.
double frobenius_inner(const SymTensor2& a, const SymTensor2& b);

/// 𝔇_c f = ½(∇_h + ᵗ∇_h)(c⁻¹∇_h^⊥f).
SymTensor2 dc_operator(const SpectralField& f, const RotationProfile& rotation);
/// Formal adjoint of 𝔇_c, T ↦ ∇_h^⊥·(c⁻¹ div_h T).
SpectralField dc_adjoint(const SymTensor2& t, const RotationProfile& rotation);
/// ᵗ𝔇_c𝔇_c f.
SpectralField transpose_dc_dc(const SpectralField& f, const RotationProfile& rotation);

/// M(r) = r − div_h(c⁻²∇_h X(r)).
SpectralField apply_mass_operator(const SpectralField& r, const RotationProfile& rotation);

struct SolverOptions {
  double tolerance = 1e-10;
  int max_iterations = 500;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  ///< final relative residual
};

/// Solves M(r) = rhs. M = K∘X with K = X⁻¹ − div_h(c⁻²∇_h·) symmetric
/// positive definite, so K s = rhs is solved by preconditioned CG and
/// r = X⁻¹s. Throws SolverError at the iteration cap.
SpectralField solve_mass_operator(const SpectralField& rhs, const RotationProfile& rotation,
                                  const SolverOptions& options = {}, SolveStats* stats = nullptr);

/// E_var = ½(‖r‖² + ‖∇_h r‖² + ‖c⁻¹∇_h X(r)‖²).
double qg_energy_var(const SpectralField& r, const RotationProfile& rotation);
/// ‖𝔇_c X(r)‖²_F.
double qg_dissipation_var(const SpectralField& r, const RotationProfile& rotation);

/// Crank–Nicolson step of ∂_t M(r) = −ν ᵗ𝔇_c𝔇_c X(r). In s = X(r) the
/// step solves (K + αB)s' = (K − αB)s with B = ᵗ𝔇_c𝔇_c, α = ν dt/2.
QgState qg_step_var(const QgState& state, const RotationProfile& rotation, double nu, double dt,
                    const SolverOptions& options = {}, SolveStats* stats = nullptr);

}  // namespace rotcap::geo

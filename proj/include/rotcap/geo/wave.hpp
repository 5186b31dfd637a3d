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

#include "rotcap/nsk/rotation.hpp"

namespace rotcap::geo {

using nsk::RotationProfile;
using spectral::GridPtr;
using spectral::SpectralField;
using spectral::VecField;

/// Image of (r, V) under the wave propagator.
struct WaveImage {
  SpectralField scalar;  ///< div V
  VecField vector;       ///< c e³×V + ∇(Id−Δ)r
};

/// (r, V) ↦ (div V, c e³×V + ∇(Id−Δ)r). V has three components on a 3D
/// grid (two on a 2D grid) and shares r's grid.
WaveImage apply_A(const SpectralField& r, const VecField& V, const RotationProfile& rotation);

/// L² residuals of the Taylor–Proudman constraints. All vanish exactly on
/// discrete geostrophic states.
struct KernelResidual {
  double div_h = 0.0;              ///< ‖div_h V^h‖
  double vertical_velocity = 0.0;  ///< ‖V³‖
  double vertical_variance = 0.0;  ///< ‖V − ⟨V⟩‖, ⟨·⟩ the x³ mean
  double geostrophic = 0.0;        ///< ‖c V^h − ∇_h^⊥(Id−Δ_h)r‖
  double axis_alignment = 0.0;     ///< ‖V^h·∇_h c‖
  double max() const;
};

/// r may be 2D or 3D; V may be horizontal (2D, two components) or full.
KernelResidual kernel_residual(const SpectralField& r, const VecField& V, const RotationProfile& rotation);

/// Geostrophic velocity c⁻¹∇_h^⊥(Id−Δ_h)r on r's grid (two components).
VecField geostrophic_velocity(const SpectralField& r, const RotationProfile& rotation);

enum class LimitForm {
  Constant,  ///< (Id−Δ_h+Δ_h²)r̃ = ⟨r₀ − curl_h u₀^h⟩ by Fourier inversion
  Variable,  ///< M(r̃) = ⟨r₀ − curl_h(c⁻¹u₀^h)⟩ by the mass-operator solve
};

/// Initial datum of the limit equation from ill-prepared NSK data. ⟨·⟩ is
/// the vertical mean on 3D input; 2D input is used as is. The Constant form
/// requires c ≡ 1.
SpectralField reconstruct_limit_datum(const SpectralField& r0, const VecField& u0, const RotationProfile& rotation,
                                      LimitForm form);
SpectralField reconstruct_limit_datum(const SpectralField& r0, const VecField& u0, const RotationProfile& rotation);

}  // namespace rotcap::geo

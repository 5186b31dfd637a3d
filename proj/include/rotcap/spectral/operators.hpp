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
#include <functional>
#include <utility>

#include "rotcap/spectral/field.hpp"

namespace rotcap::spectral {

/// Real Fourier symbol m(k1, k2, k3) evaluated at physical wavenumbers.
using Symbol = std::function<double(double, double, double)>;

/// Exact Fourier-multiplier derivative of the given order. The Nyquist mode
/// of every axis is treated as absent, so derivatives compose exactly.
SpectralField diff(const SpectralField& f, Axis axis, int order = 1);

SpectralField apply_multiplier(const SpectralField& f, const Symbol& m);
/// Divides by m; throws SingularMultiplierError if m(k) <= 0 (or is not
/// finite) on any mode of the grid.
SpectralField invert_multiplier(const SpectralField& f, const Symbol& m);

SpectralField laplacian(const SpectralField& f);
/// Horizontal Laplacian Δ_h = ∂₁² + ∂₂².
SpectralField laplacian_h(const SpectralField& f);
/// Full gradient (3 components on a 3D grid, 2 on a 2D grid).
VecField gradient(const SpectralField& f);
VecField gradient_h(const SpectralField& f);
/// ∇_h^⊥ f = (−∂₂f, ∂₁f).
VecField perp_gradient_h(const SpectralField& f);
SpectralField divergence(const VecField& v);
SpectralField divergence_h(const VecField& v);
/// Horizontal curl ∂₁v₂ − ∂₂v₁.
SpectralField curl_h(const VecField& v);
/// ∇_h^⊥ · v = −∂₂v₁ + ∂₁v₂ (equal to curl_h).
SpectralField perp_divergence_h(const VecField& v);

/// Pointwise product on the grid nodes (no truncation).
SpectralField multiply(const SpectralField& a, const SpectralField& b);
/// Pointwise map of the physical values.
SpectralField map(const SpectralField& f, const std::function<double(double)>& fn);
/// Zeroes every mode beyond the retained fraction on any axis.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);
/// Truncated product: both factors and the product are dealiased.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

/// ∫ f dx over the cell (see Grid::volume()).
double integrate(const SpectralField& f);
/// ∫ f g dx.
double inner(const SpectralField& f, const SpectralField& g);
/// (∫ |f|² dx)^{1/2} from the physical samples.
double l2_norm(const SpectralField& f);
/// Same norm from the Fourier coefficients (Parseval).
double spectral_l2_norm(const SpectralField& f);
double l2_norm(const VecField& v);
/// (∫ |f|^p dx)^{1/p}.
double lp_norm(const SpectralField& f, double p);
double max_abs(const SpectralField& f);
double min_value(const SpectralField& f);

/// Vertical average (2D field on the horizontal grid) and the zero-mean rest.
/// Throws DimensionError on fields without a vertical axis.
std::pair<SpectralField, SpectralField> vertical_split(const SpectralField& f);
SpectralField vertical_mean(const SpectralField& f);
/// Broadcasts a horizontal field along x³ onto `grid3d`.
SpectralField extend_vertically(const SpectralField& f2d, const GridPtr& grid3d);

/// ∂₃⁻¹ on fields with zero vertical average (checked to 1e−10 relative).
/// The result has zero vertical average; the vertical Nyquist mode maps to 0.
SpectralField inv_d3(const SpectralField& f);

enum class Parity { Even, Odd };
/// Even or odd part with respect to x³ ↦ −x³.
SpectralField project_parity(const SpectralField& f, Parity parity);
/// ‖f − P f‖ / ‖f‖ (0 for the zero field).
double parity_residual(const SpectralField& f, Parity parity);
/// Density and horizontal momentum even in x³, vertical momentum odd.
void symmetry_project(SpectralField& rho, VecField& m);

/// Random real field whose Fourier support is |k| <= kmax (deterministic in
/// the seed), with unit root-mean-square amplitude.
SpectralField random_band_limited(const GridPtr& grid, double kmax, std::uint64_t seed);

/// Visits every stored coefficient with its physical wavevector.
void for_each_mode(const Grid& grid,
                   const std::function<void(std::size_t, double, double, double)>& fn);

}  // namespace rotcap::spectral

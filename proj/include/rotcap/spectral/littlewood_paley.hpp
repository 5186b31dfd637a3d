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

namespace rotcap::spectral {

/// Radial Littlewood–Paley cut-off. χ(r) = 1 for r ≤ inner, 0 for r ≥ outer,
/// glued by the smooth step built from e^{−shape/t}. φ(ξ) = χ(ξ) − χ(2ξ).
///
/// Blocks: Δ_{−1} = χ(2D) and Δ_j = φ(2^{−j}D) for j ≥ 0, so the sum of all
/// blocks telescopes to the identity and Δ_j keeps |k| = 2^j untouched.
/// S_M = Σ_{k ≤ M−1} Δ_k = χ(2^{1−M}D).
struct LpProfile {
  double inner = 1.1;
  double outer = 1.9;
  double shape = 1.0;

  double chi(double r) const;
  double phi(double r) const { return chi(r) - chi(2.0 * r); }
  /// Symbol of Δ_j at radius r: χ(2r) for j = −1, φ(2^{−j} r) otherwise.
  double block_symbol(int j, double r) const;
  /// Symbol of S_M at radius r: χ(2^{1−M} r).
  double low_pass_symbol(int M, double r) const;
};

/// Δ_j f for j ≥ −1.
SpectralField lp_block(const SpectralField& f, int j, const LpProfile& profile = {});
/// S_M f = Σ_{k ≤ M−1} Δ_k f.
SpectralField low_pass(const SpectralField& f, int M, const LpProfile& profile = {});
/// Largest j such that Δ_{−1} + … + Δ_j is the identity on every grid mode.
int max_block(const Grid& grid, const LpProfile& profile = {});

}  // namespace rotcap::spectral

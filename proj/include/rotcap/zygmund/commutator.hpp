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
#include <optional>
#include <string>
#include <vector>

#include "rotcap/spectral/field.hpp"
#include "rotcap/zygmund/modulus.hpp"

namespace rotcap::zygmund {

using spectral::SpectralField;

/// Radial multiplier profile θ(|ξ|).
using RadialSymbol = std::function<double(double)>;

/// [θ(λ⁻¹D), a] f = θ(λ⁻¹D)(a f) − a θ(λ⁻¹D) f with dealiased products.
SpectralField commutator(const RadialSymbol& theta, const SpectralField& a, const SpectralField& f,
                         double lambda);

/// Regularity class of the multiplying function, which selects the envelope.
enum class CoefficientClass { Lipschitz, Cmu, Zmu };

struct DecayOptions {
  CoefficientClass coefficient = CoefficientClass::Lipschitz;
  /// Required for Cmu and Zmu.
  std::optional<Modulus> modulus;
  /// Source and target Lebesgue indices of ‖[θ,a]f‖_{p₂} / ‖f‖_{p₁}.
  double p1 = 2.0;
  double p2 = 2.0;
  std::vector<double> lambdas;
  int ensemble = 32;
  std::uint64_t seed = 20260101;
  /// Allowed growth of the normalized ratio over its value at the first λ.
  double spread_limit = 2.0;
};

struct DecayRow {
  double lambda = 0.0;
  /// Ensemble sup of ‖[θ,a]f‖_{p₂} / ‖f‖_{p₁}.
  double ratio = 0.0;
  /// Envelope shape times the coefficient norm.
  double envelope = 0.0;
  double normalized = 0.0;
  bool pass = false;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  /// Least-squares slope of log ratio against log λ (absent with fewer than
  /// three λ, a zero ratio or a vanishing coefficient norm).
  std::optional<double> exponent;
  /// Exponent the envelope predicts for pure power laws.
  double envelope_exponent = 0.0;
  /// Largest normalized ratio.
  double constant = 0.0;
  /// max/min of the normalized ratio (two-sided, reported only).
  double spread = 0.0;
  /// max normalized ratio over the first one (the one-sided check).
  double growth = 0.0;
  double coefficient_norm = 0.0;
  bool pass = false;
};

/// Runs the ensemble over the λ ladder and compares against the lemma
/// envelope: λ^{−1+d(1/p₁−1/p₂)}‖∇a‖_∞ (Lipschitz), μ(λ⁻¹)|a|_{C_μ} (Cmu),
/// μ(λ⁻¹)log(1+λ)‖a‖_{Z_μ} (Zmu). One-sided: passes when no normalized ratio
/// exceeds spread_limit times the one at the first λ.
DecayReport verify_commutator_decay(const RadialSymbol& theta, const SpectralField& a,
                                    const DecayOptions& options);

/// Ensemble member i for scale λ: band-limited to |k| ≤ 2λ for p₁ > 1, a
/// localized bump of width 1/λ for p₁ = 1.
SpectralField ensemble_member(const spectral::GridPtr& grid, double lambda, double p1,
                              std::uint64_t seed, int index);

}  // namespace rotcap::zygmund

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
#include <vector>

#include "rotcap/spectral/field.hpp"
#include "rotcap/spectral/littlewood_paley.hpp"
#include "rotcap/zygmund/modulus.hpp"

namespace rotcap::zygmund {

using spectral::SpectralField;

/// Exact translate f(· + y) of the trigonometric interpolant (2D shift;
/// the vertical axis is left alone).
SpectralField translate(const SpectralField& f, double y1, double y2 = 0.0);

/// Offsets |y| = 2^{−m}, m = 0..levels−1. The default ladder stops at four
/// grid cells of the first axis.
int default_levels(const spectral::Grid& grid);

/// sup_{x,y} |a(x+y) − a(x)| / μ(|y|).
double cmu_seminorm(const SpectralField& a, const Modulus& mu, int levels = -1);
/// sup_{x,y} |a(x+y) + a(x−y) − 2a(x)| / μ(|y|).
double zmu_seminorm(const SpectralField& a, const Modulus& mu, int levels = -1);
/// sup_{j ≥ −1} ‖Δ_j a‖_∞ / μ(2^{−j}) over the resolvable blocks.
double besov_mu_norm(const SpectralField& a, const Modulus& mu,
                     const spectral::LpProfile& profile = {});
/// sup_{j ≥ 0} ‖∇S_j a‖_∞ / Γ(2^j).
double bgamma_norm(const SpectralField& a, const std::function<double(double)>& gamma,
                   const spectral::LpProfile& profile = {});

struct RegularityReport {
  double cmu_seminorm = 0.0;
  double zmu_seminorm = 0.0;
  double besov_mu_norm = 0.0;
  double bgamma_norm = 0.0;
  double sup_norm = 0.0;
  int levels = 0;
  int blocks = 0;
  std::size_t samples = 0;
};

RegularityReport regularity_report(const SpectralField& a, const Modulus& mu,
                                   const spectral::LpProfile& profile = {});

struct FirstVariation {
  std::vector<double> offsets;
  /// sup_x |a(x+y) − a(x)| / (μ(|y|) log(1 + 1/|y|)) per offset.
  std::vector<double> ratios;
  double constant = 0.0;
};

FirstVariation first_variation_bound(const SpectralField& a, const Modulus& mu, int levels = -1);

}  // namespace rotcap::zygmund

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

#include "rotcap/spectral/littlewood_paley.hpp"

#include <cmath>

#include "rotcap/error.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::spectral {

namespace {

double glue(double t, double shape) { return t > 0.0 ? std::exp(-shape / t) : 0.0; }

double radius(double k1, double k2, double k3) { return std::sqrt(k1 * k1 + k2 * k2 + k3 * k3); }

}  // namespace

double LpProfile::chi(double r) const {
  if (r <= inner) return 1.0;
  if (r >= outer) return 0.0;
  const double t = (outer - r) / (outer - inner);
  const double a = glue(t, shape);
  return a / (a + glue(1.0 - t, shape));
}

double LpProfile::block_symbol(int j, double r) const {
  if (j < -1) throw PreconditionError("lp_block: j must be >= -1");
  if (j == -1) return chi(2.0 * r);
  return phi(std::ldexp(r, -j));
}

double LpProfile::low_pass_symbol(int M, double r) const {
  if (M < 0) throw PreconditionError("low_pass: M must be >= 0");
  return chi(std::ldexp(r, 1 - M));
}

SpectralField lp_block(const SpectralField& f, int j, const LpProfile& profile) {
  if (j < -1) throw PreconditionError("lp_block: j must be >= -1");
  return apply_multiplier(f, [&](double k1, double k2, double k3) {
    return profile.block_symbol(j, radius(k1, k2, k3));
  });
}

SpectralField low_pass(const SpectralField& f, int M, const LpProfile& profile) {
  if (M < 0) throw PreconditionError("low_pass: M must be >= 0");
  return apply_multiplier(f, [&](double k1, double k2, double k3) {
    return profile.low_pass_symbol(M, radius(k1, k2, k3));
  });
}

int max_block(const Grid& grid, const LpProfile& profile) {
  double kmax = 0.0;
  for (int a = 0; a < 3; ++a) {
    double m = 0.0;
    for (double k : grid.wavenumbers(static_cast<Axis>(a))) m = std::max(m, std::abs(k));
    kmax += m * m;
  }
  kmax = std::sqrt(kmax);
  int j = 0;
  while (std::ldexp(profile.inner, j) < kmax) ++j;
  return j;
}

}  // namespace rotcap::spectral

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

#include "rotcap/zygmund/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "rotcap/error.hpp"
#include "rotcap/kernels.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::zygmund {

using spectral::Axis;
using spectral::cplx;
using spectral::CplxVec;
using spectral::Grid;

namespace {

// Unit directions sampled for |y|: the axis for 1D grids, axes and
// diagonals for 2D grids.
std::vector<std::pair<double, double>> directions(const Grid& g) {
  if (!g.active(Axis::X2)) return {{1.0, 0.0}};
  const double r = std::sqrt(0.5);
  return {{1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}};
}

int resolve_levels(const Grid& g, int levels) { return levels < 0 ? default_levels(g) : levels; }

double sup_of(const SpectralField& f) { return spectral::max_abs(f); }

}  // namespace

SpectralField translate(const SpectralField& f, double y1, double y2) {
  const Grid& g = *f.grid();
  const auto k1 = g.wavenumbers(Axis::X1);
  const auto k2 = g.wavenumbers(Axis::X2);
  // Nyquist modes only keep their cosine part, matching the real interpolant
  // on the grid nodes.
  auto phase = [&g](Axis a, int i, double k, double y) -> cplx {
    if (y == 0.0) return 1.0;
    if (2 * i == g.n(a)) return std::cos(std::abs(k) * y);
    return std::polar(1.0, k * y);
  };
  std::vector<cplx> p1(g.half1()), p2(g.n2());
  for (int i = 0; i < g.half1(); ++i) p1[i] = phase(Axis::X1, i, k1[i], y1);
  for (int i = 0; i < g.n2(); ++i) p2[i] = g.active(Axis::X2) ? phase(Axis::X2, i, k2[i], y2) : cplx(1.0);
  auto s = f.spectral();
  CplxVec out(s.size());
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.half1(); ++i1) {
        const std::size_t idx = g.spectral_index(i1, i2, i3);
        out[idx] = s[idx] * p1[i1] * p2[i2];
      }
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

int default_levels(const Grid& g) {
  // Offsets below four cells resolve the interpolant's smoothing, not a.
  return static_cast<int>(std::floor(std::log2(1.0 / (4.0 * g.spacing(Axis::X1))))) + 1;
}

double cmu_seminorm(const SpectralField& a, const Modulus& mu, int levels) {
  const Grid& g = *a.grid();
  double best = 0.0;
  for (int m = 0; m < resolve_levels(g, levels); ++m) {
    const double y = std::exp2(-m);
    for (auto [d1, d2] : directions(g)) {
      const double v = sup_of(translate(a, y * d1, y * d2) - a);
      best = std::max(best, v / mu(y));
    }
  }
  return best;
}

double zmu_seminorm(const SpectralField& a, const Modulus& mu, int levels) {
  const Grid& g = *a.grid();
  double best = 0.0;
  for (int m = 0; m < resolve_levels(g, levels); ++m) {
    const double y = std::exp2(-m);
    for (auto [d1, d2] : directions(g)) {
      SpectralField second = translate(a, y * d1, y * d2);
      second += translate(a, -y * d1, -y * d2);
      second -= 2.0 * a;
      best = std::max(best, sup_of(second) / mu(y));
    }
  }
  return best;
}

double besov_mu_norm(const SpectralField& a, const Modulus& mu, const spectral::LpProfile& profile) {
  const int J = spectral::max_block(*a.grid(), profile);
  double best = 0.0;
  for (int j = -1; j <= J; ++j) {
    best = std::max(best, sup_of(spectral::lp_block(a, j, profile)) / mu(std::exp2(-j)));
  }
  return best;
}

double bgamma_norm(const SpectralField& a, const std::function<double(double)>& gamma,
                   const spectral::LpProfile& profile) {
  const Grid& g = *a.grid();
  const int J = spectral::max_block(g, profile) + 1;
  double best = 0.0;
  for (int j = 0; j <= J; ++j) {
    const SpectralField low = spectral::low_pass(a, j, profile);
    const auto grad = g.active(Axis::X2) ? spectral::gradient_h(low)
                                         : spectral::VecField(spectral::diff(low, Axis::X1),
                                                              SpectralField(a.grid()));
    auto gx = grad[0].physical();
    auto gy = grad[1].physical();
    double sup = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) sup = std::max(sup, std::hypot(gx[i], gy[i]));
    best = std::max(best, sup / gamma(std::exp2(j)));
  }
  return best;
}

RegularityReport regularity_report(const SpectralField& a, const Modulus& mu,
                                   const spectral::LpProfile& profile) {
  RegularityReport r;
  r.levels = default_levels(*a.grid());
  r.blocks = spectral::max_block(*a.grid(), profile) + 2;
  r.samples = a.grid()->size();
  r.sup_norm = sup_of(a);
  r.cmu_seminorm = cmu_seminorm(a, mu, r.levels);
  r.zmu_seminorm = zmu_seminorm(a, mu, r.levels);
  r.besov_mu_norm = besov_mu_norm(a, mu, profile);
  r.bgamma_norm = bgamma_norm(a, [&mu](double s) { return mu.gamma(s); }, profile);
  return r;
}

FirstVariation first_variation_bound(const SpectralField& a, const Modulus& mu, int levels) {
  const Grid& g = *a.grid();
  FirstVariation out;
  for (int m = 0; m < resolve_levels(g, levels); ++m) {
    const double y = std::exp2(-m);
    double sup = 0.0;
    for (auto [d1, d2] : directions(g)) sup = std::max(sup, sup_of(translate(a, y * d1, y * d2) - a));
    const double ratio = sup / mu.tilde(y);
    out.offsets.push_back(y);
    out.ratios.push_back(ratio);
    out.constant = std::max(out.constant, ratio);
  }
  return out;
}

}  // namespace rotcap::zygmund

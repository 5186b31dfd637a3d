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

#include "rotcap/zygmund/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rotcap/error.hpp"
#include "rotcap/io/slope.hpp"
#include "rotcap/spectral/operators.hpp"
#include "rotcap/zygmund/regularity.hpp"

namespace rotcap::zygmund {

using spectral::Axis;
using spectral::Grid;
using spectral::kPi;

namespace {

SpectralField apply_theta(const RadialSymbol& theta, const SpectralField& f, double lambda) {
  return spectral::apply_multiplier(f, [&](double k1, double k2, double k3) {
    return theta(std::sqrt(k1 * k1 + k2 * k2 + k3 * k3) / lambda);
  });
}

double sup_gradient(const SpectralField& a) {
  const Grid& g = *a.grid();
  if (!g.active(Axis::X2)) return spectral::max_abs(spectral::diff(a, Axis::X1));
  const auto grad = spectral::gradient_h(a);
  auto gx = grad[0].physical();
  auto gy = grad[1].physical();
  double sup = 0.0;
  for (std::size_t i = 0; i < gx.size(); ++i) sup = std::max(sup, std::hypot(gx[i], gy[i]));
  return sup;
}

}  // namespace

SpectralField commutator(const RadialSymbol& theta, const SpectralField& a, const SpectralField& f,
                         double lambda) {
  spectral::require_same_grid(a, f, "commutator");
  if (!(lambda > 0.0)) throw PreconditionError("commutator: lambda must be positive");
  SpectralField out = apply_theta(theta, spectral::dealiased_product(a, f), lambda);
  out -= spectral::dealiased_product(a, apply_theta(theta, f, lambda));
  return out;
}

SpectralField ensemble_member(const spectral::GridPtr& grid, double lambda, double p1,
                              std::uint64_t seed, int index) {
  const std::uint64_t s = seed * 1000003ULL + static_cast<std::uint64_t>(index) * 7919ULL +
                          static_cast<std::uint64_t>(std::llround(lambda * 16));
  if (p1 > 1.0) return spectral::random_band_limited(grid, 2.0 * lambda, s);
  std::mt19937_64 rng(s);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
  const double c1 = unif(rng);
  const double c2 = unif(rng);
  const bool planar = grid->active(Axis::X2);
  // Periodized Gaussian of width 1/λ centred at (c1, c2).
  auto wrap = [](double d) { return std::remainder(d, 2.0 * kPi); };
  return SpectralField::sample(grid, [&](double x1, double x2, double) {
    const double d1 = lambda * wrap(x1 - c1);
    const double d2 = planar ? lambda * wrap(x2 - c2) : 0.0;
    return std::exp(-0.5 * (d1 * d1 + d2 * d2));
  });
}

DecayReport verify_commutator_decay(const RadialSymbol& theta, const SpectralField& a,
                                    const DecayOptions& opt) {
  if (opt.ensemble <= 0) throw PreconditionError("verify_commutator_decay: empty ensemble");
  if (opt.lambdas.empty()) throw PreconditionError("verify_commutator_decay: empty lambda ladder");
  if (opt.coefficient != CoefficientClass::Lipschitz && !opt.modulus) {
    throw PreconditionError("verify_commutator_decay: modulus required for this coefficient class");
  }
  const Grid& g = *a.grid();
  const double d = g.dimension();
  DecayReport rep;
  rep.envelope_exponent = -1.0 + d * (1.0 / opt.p1 - 1.0 / opt.p2);
  switch (opt.coefficient) {
    case CoefficientClass::Lipschitz: rep.coefficient_norm = sup_gradient(a); break;
    case CoefficientClass::Cmu: rep.coefficient_norm = cmu_seminorm(a, *opt.modulus); break;
    case CoefficientClass::Zmu:
      rep.coefficient_norm = spectral::max_abs(a) + zmu_seminorm(a, *opt.modulus);
      break;
  }

  for (double lambda : opt.lambdas) {
    DecayRow row;
    row.lambda = lambda;
    for (int i = 0; i < opt.ensemble; ++i) {
      const SpectralField f = ensemble_member(a.grid(), lambda, opt.p1, opt.seed, i);
      const double denom = spectral::lp_norm(f, opt.p1);
      if (denom == 0.0) continue;
      row.ratio = std::max(row.ratio, spectral::lp_norm(commutator(theta, a, f, lambda), opt.p2) / denom);
    }
    double shape = 0.0;
    switch (opt.coefficient) {
      case CoefficientClass::Lipschitz: shape = std::pow(lambda, rep.envelope_exponent); break;
      case CoefficientClass::Cmu: shape = (*opt.modulus)(1.0 / lambda); break;
      case CoefficientClass::Zmu: shape = (*opt.modulus)(1.0 / lambda) * std::log1p(lambda); break;
    }
    row.envelope = shape * rep.coefficient_norm;
    row.normalized = row.envelope > 0.0 ? row.ratio / row.envelope : 0.0;
    rep.rows.push_back(row);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool all_positive = true;
  for (const auto& r : rep.rows) {
    lo = std::min(lo, r.normalized);
    hi = std::max(hi, r.normalized);
    if (!(r.ratio > 0.0)) all_positive = false;
  }
  rep.constant = hi;
  rep.spread = lo > 0.0 ? hi / lo : (hi == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  const double first = rep.rows.front().normalized;
  rep.growth = first > 0.0 ? hi / first : (hi == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  rep.pass = true;
  for (auto& r : rep.rows) {
    r.pass = r.normalized <= opt.spread_limit * first;
    rep.pass = rep.pass && r.pass;
  }

  if (all_positive && rep.coefficient_norm > 0.0 && rep.rows.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.rows) pts.emplace_back(r.lambda, r.ratio);
    rep.exponent = io::slope_fit(pts).slope;
  }
  return rep;
}

}  // namespace rotcap::zygmund

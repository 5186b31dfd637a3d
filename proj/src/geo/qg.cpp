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

#include "rotcap/geo/qg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rotcap/error.hpp"
#include "rotcap/spectral/detail.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::geo {

using spectral::Axis;
using spectral::Grid;
using spectral::VecField;

namespace {

double k2h(double k1, double k2) { return k1 * k1 + k2 * k2; }

double q_symbol(double k1, double k2, double) {
  const double kk = k2h(k1, k2);
  return 1.0 + kk + kk * kk;
}

void require_horizontal(const SpectralField& r, const char* where) {
  const Grid& g = *r.grid();
  if (g.active(Axis::X3) || !g.active(Axis::X2)) {
    throw DimensionError(std::string(where) + ": limit fields live on a 2D horizontal grid");
  }
}

// −(Id−Δ_h+Δ_h²)⁻¹ P[∇_h^⊥X·∇_h g] with every factor dealiased.
SpectralField jacobian_tendency(const SpectralField& X, const SpectralField& g) {
  const VecField u = spectral::perp_gradient_h(spectral::dealias(X));
  const VecField dg = spectral::gradient_h(spectral::dealias(g));
  SpectralField j = spectral::multiply(u[0], dg[0]) + spectral::multiply(u[1], dg[1]);
  spectral::dealias_in_place(j);
  return -spectral::invert_multiplier(j, q_symbol);
}

SpectralField linear_tendency(const SpectralField& r, double nu) {
  return spectral::apply_multiplier(r, [nu](double k1, double k2, double) { return -qg_decay_rate(nu, k2h(k1, k2)); });
}

}  // namespace

// Symbols use the physical wavenumbers, Nyquist included, so that X, q and
// their inverses compose exactly.
SpectralField stream_function(const SpectralField& r) {
  return spectral::apply_multiplier(r, [](double k1, double k2, double) { return 1.0 + k2h(k1, k2); });
}

SpectralField bilaplacian_h(const SpectralField& f) {
  return spectral::apply_multiplier(f, [](double k1, double k2, double) { return k2h(k1, k2) * k2h(k1, k2); });
}

SpectralField potential_vorticity(const SpectralField& r) {
  return spectral::apply_multiplier(r, q_symbol);
}

double qg_decay_rate(double nu, double kk) { return 0.5 * nu * kk * kk * (1.0 + kk) / (1.0 + kk + kk * kk); }

SpectralField qg_rhs_const(const SpectralField& r, double nu) {
  require_horizontal(r, "qg_rhs_const");
  const SpectralField X = stream_function(r);
  const SpectralField lap2 = bilaplacian_h(r);
  const SpectralField visc = -0.5 * nu * spectral::invert_multiplier(bilaplacian_h(X), q_symbol);
  return jacobian_tendency(X, lap2) + visc;
}

SpectralField qg_rhs_const_q_form(const SpectralField& r, double nu) {
  require_horizontal(r, "qg_rhs_const_q_form");
  return jacobian_tendency(stream_function(r), potential_vorticity(r)) + linear_tendency(r, nu);
}

double qg_energy_const(const SpectralField& r) {
  require_horizontal(r, "qg_energy_const");
  const Grid& g = *r.grid();
  const auto k1 = g.wavenumbers(Axis::X1);
  const auto k2 = g.wavenumbers(Axis::X2);
  const auto c = r.spectral();
  double e = 0.0;
  for (int i2 = 0; i2 < g.n2(); ++i2) {
    for (int i1 = 0; i1 < g.half1(); ++i1) {
      const double kk = k2h(k1[i1], k2[i2]);
      const std::size_t idx = g.spectral_index(i1, i2, 0);
      e += g.hermitian_weight(i1) * (1.0 + kk) * (1.0 + kk + kk * kk) * std::norm(c[idx]);
    }
  }
  return 0.5 * e;
}

double qg_max_dt(const SpectralField& r) {
  require_horizontal(r, "qg_max_dt");
  const VecField u = spectral::perp_gradient_h(stream_function(r));
  auto a = u[0].physical();
  auto b = u[1].physical();
  double umax = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) umax = std::max(umax, std::hypot(a[i], b[i]));
  const Grid& g = *r.grid();
  const double dx = std::min(g.spacing(Axis::X1), g.spacing(Axis::X2));
  return umax > 0.0 ? 0.5 * dx / umax : std::numeric_limits<double>::infinity();
}

QgState qg_step_const(const QgState& s, double nu, double dt) {
  require_horizontal(s.r, "qg_step_const");
  if (!(dt > 0.0)) throw PreconditionError("qg_step_const: dt must be positive");
  if (!(nu >= 0.0)) throw PreconditionError("qg_step_const: nu must be non-negative");
  const double limit = qg_max_dt(s.r);
  if (dt > limit) {
    std::ostringstream os;
    os << "qg_step_const: dt = " << dt << " exceeds the advective limit " << limit;
    throw CflError(os.str(), dt, limit);
  }
  auto N = [](const SpectralField& r) { return jacobian_tendency(stream_function(r), potential_vorticity(r)); };
  auto decay = [nu](double h) {
    return [nu, h](double k1, double k2, double) { return std::exp(-qg_decay_rate(nu, k2h(k1, k2)) * h); };
  };
  const auto E = decay(0.5 * dt);
  const auto E2 = decay(dt);
  const SpectralField& r = s.r;
  const SpectralField a = N(r);
  const SpectralField b = N(spectral::apply_multiplier(r + 0.5 * dt * a, E));
  const SpectralField c = N(spectral::apply_multiplier(r, E) + 0.5 * dt * b);
  const SpectralField d = N(spectral::apply_multiplier(r, E2) + dt * spectral::apply_multiplier(c, E));
  SpectralField next = spectral::apply_multiplier(r + (dt / 6.0) * a, E2);
  next += (dt / 3.0) * spectral::apply_multiplier(b + c, E);
  next += (dt / 6.0) * d;
  return {std::move(next), s.t + dt};
}

}  // namespace rotcap::geo

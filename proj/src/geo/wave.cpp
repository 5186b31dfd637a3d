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

#include "rotcap/geo/wave.hpp"

#include <algorithm>
#include <cmath>

#include "rotcap/error.hpp"
#include "rotcap/geo/qg.hpp"
#include "rotcap/geo/variable.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::geo {

using spectral::Axis;

namespace {

// c on the grid of f (extended along x³ when f is 3D).
SpectralField rotation_on(const SpectralField& f, const RotationProfile& rotation) {
  const GridPtr& g = f.grid();
  if (g->n1() != rotation.c().grid()->n1() || g->n2() != rotation.c().grid()->n2()) {
    throw GridMismatchError("rotation profile and field use different horizontal grids");
  }
  return rotation.extended(g);
}

SpectralField on_grid_of(const SpectralField& f, const SpectralField& like) {
  if (f.grid()->same_shape(*like.grid())) return f;
  if (!f.grid()->active(Axis::X3) && like.grid()->active(Axis::X3)) return spectral::extend_vertically(f, like.grid());
  throw DimensionError("kernel_residual: r has a vertical axis that V lacks");
}

double sq(double x) { return x * x; }

}  // namespace

WaveImage apply_A(const SpectralField& r, const VecField& V, const RotationProfile& rotation) {
  const GridPtr& g = r.grid();
  const std::size_t dims = g->active(Axis::X3) ? 3 : 2;
  if (V.size() != dims) throw DimensionError("apply_A: V must have one component per grid axis");
  for (std::size_t i = 0; i < dims; ++i) spectral::require_same_grid(r, V[i], "apply_A");
  const SpectralField c = rotation_on(r, rotation);
  const VecField gx = spectral::gradient(r - spectral::laplacian(r));
  SpectralField a1 = gx[0] - spectral::multiply(c, V[1]);
  SpectralField a2 = gx[1] + spectral::multiply(c, V[0]);
  WaveImage out;
  out.scalar = spectral::divergence(V);
  out.vector = dims == 3 ? VecField(std::move(a1), std::move(a2), gx[2]) : VecField(std::move(a1), std::move(a2));
  return out;
}

double KernelResidual::max() const {
  return std::max({div_h, vertical_velocity, vertical_variance, geostrophic, axis_alignment});
}

KernelResidual kernel_residual(const SpectralField& r, const VecField& V, const RotationProfile& rotation) {
  KernelResidual k;
  const VecField vh(V[0], V[1]);
  const bool full = V.size() == 3;
  k.div_h = spectral::l2_norm(spectral::divergence_h(vh));
  if (full) {
    k.vertical_velocity = spectral::l2_norm(V[2]);
    if (V.grid()->active(Axis::X3)) {
      double var = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        var += sq(spectral::l2_norm(V[i] - spectral::extend_vertically(spectral::vertical_mean(V[i]), V.grid())));
      }
      k.vertical_variance = std::sqrt(var);
    }
  }
  const SpectralField c = rotation_on(V[0], rotation);
  const VecField pg = spectral::perp_gradient_h(stream_function(r));
  const SpectralField g1 = spectral::multiply(c, V[0]) - on_grid_of(pg[0], V[0]);
  const SpectralField g2 = spectral::multiply(c, V[1]) - on_grid_of(pg[1], V[0]);
  k.geostrophic = std::hypot(spectral::l2_norm(g1), spectral::l2_norm(g2));
  const GridPtr& vg = V.grid();
  const SpectralField dc1 = rotation.grad_c()[0];
  const SpectralField dc2 = rotation.grad_c()[1];
  const SpectralField align = spectral::multiply(V[0], vg->active(Axis::X3) ? spectral::extend_vertically(dc1, vg) : dc1) +
                              spectral::multiply(V[1], vg->active(Axis::X3) ? spectral::extend_vertically(dc2, vg) : dc2);
  k.axis_alignment = spectral::l2_norm(align);
  return k;
}

VecField geostrophic_velocity(const SpectralField& r, const RotationProfile& rotation) {
  const SpectralField cinv = spectral::map(rotation_on(r, rotation), [](double c) { return 1.0 / c; });
  const VecField pg = spectral::perp_gradient_h(stream_function(r));
  return VecField(spectral::multiply(cinv, pg[0]), spectral::multiply(cinv, pg[1]));
}

SpectralField reconstruct_limit_datum(const SpectralField& r0, const VecField& u0, const RotationProfile& rotation,
                                      LimitForm form) {
  if (u0.size() < 2) throw DimensionError("reconstruct_limit_datum: u0 needs horizontal components");
  spectral::require_same_grid(r0, u0[0], "reconstruct_limit_datum");
  VecField uh(u0[0], u0[1]);
  if (form == LimitForm::Variable) {
    const SpectralField cinv = spectral::map(rotation_on(r0, rotation), [](double c) { return 1.0 / c; });
    uh = VecField(spectral::multiply(cinv, uh[0]), spectral::multiply(cinv, uh[1]));
  } else if (!rotation.is_constant()) {
    throw PreconditionError("reconstruct_limit_datum: the constant-axis form needs c = 1");
  }
  SpectralField source = r0 - spectral::curl_h(uh);
  if (source.grid()->active(Axis::X3)) source = spectral::vertical_mean(source);
  if (form == LimitForm::Constant) {
    return spectral::invert_multiplier(source, [](double k1, double k2, double) {
      const double kk = k1 * k1 + k2 * k2;
      return 1.0 + kk + kk * kk;
    });
  }
  return solve_mass_operator(source, rotation);
}

SpectralField reconstruct_limit_datum(const SpectralField& r0, const VecField& u0, const RotationProfile& rotation) {
  return reconstruct_limit_datum(r0, u0, rotation, rotation.is_constant() ? LimitForm::Constant : LimitForm::Variable);
}

}  // namespace rotcap::geo

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

#include "rotcap/geo/variable.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "rotcap/error.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::geo {

using spectral::Axis;
using spectral::GridPtr;
using spectral::VecField;

namespace {

void check_grid(const SpectralField& f, const RotationProfile& rotation, const char* where) {
  const auto& g = *f.grid();
  if (g.active(Axis::X3) || !g.active(Axis::X2)) {
    throw DimensionError(std::string(where) + ": limit fields live on a 2D horizontal grid");
  }
  spectral::require_same_grid(f, rotation.c(), where);
}

SpectralField reciprocal(const SpectralField& c, int power) {
  return spectral::map(c, [power](double v) { return std::pow(v, -power); });
}

SpectralField x_inverse(const SpectralField& s) {
  return spectral::invert_multiplier(s, [](double k1, double k2, double) { return 1.0 + k1 * k1 + k2 * k2; });
}

// K s = X⁻¹s − div_h(c⁻²∇_h s).
SpectralField apply_k(const SpectralField& s, const SpectralField& cinv2) {
  const VecField g = spectral::gradient_h(s);
  const VecField w(spectral::multiply(cinv2, g[0]), spectral::multiply(cinv2, g[1]));
  return x_inverse(s) - spectral::divergence_h(w);
}

using Operator = std::function<SpectralField(const SpectralField&)>;

// Preconditioned CG for a symmetric positive definite operator; the
// preconditioner is the Fourier multiplier 1/symbol.
SpectralField pcg(const Operator& apply, const spectral::Symbol& symbol, const SpectralField& b, SpectralField x,
                  const SolverOptions& opt, SolveStats* stats, const char* what) {
  const double bnorm = spectral::l2_norm(b);
  SolveStats st;
  if (bnorm == 0.0) {
    if (stats) *stats = st;
    return SpectralField(b.grid());
  }
  auto precond = [&](const SpectralField& r) { return spectral::invert_multiplier(r, symbol); };
  SpectralField r = b - apply(x);
  st.residual = spectral::l2_norm(r) / bnorm;
  SpectralField z = precond(r);
  SpectralField p = z;
  double rz = spectral::inner(r, z);
  while (st.residual > opt.tolerance) {
    if (st.iterations >= opt.max_iterations) {
      std::ostringstream os;
      os << what << ": no convergence in " << st.iterations << " iterations (relative residual " << st.residual << ")";
      throw SolverError(os.str(), st.iterations, st.residual);
    }
    const SpectralField ap = apply(p);
    const double alpha = rz / spectral::inner(p, ap);
    x += alpha * p;
    r -= alpha * ap;
    ++st.iterations;
    st.residual = spectral::l2_norm(r) / bnorm;
    z = precond(r);
    const double rz_next = spectral::inner(r, z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  if (stats) *stats = st;
  return x;
}

double mean_of(const SpectralField& f) { return spectral::integrate(f) / f.grid()->volume(); }

// Constant-coefficient symbol of K + αB with c⁻² replaced by its mean.
spectral::Symbol preconditioner(double m2, double alpha) {
  return [m2, alpha](double k1, double k2, double) {
    const double kk = k1 * k1 + k2 * k2;
    return 1.0 / (1.0 + kk) + m2 * kk + 0.5 * alpha * m2 * kk * kk;
  };
}

}  // namespace

double frobenius_inner(const SymTensor2& a, const SymTensor2& b) {
  return spectral::inner(a.s11, b.s11) + 2.0 * spectral::inner(a.s12, b.s12) + spectral::inner(a.s22, b.s22);
}

SymTensor2 dc_operator(const SpectralField& f, const RotationProfile& rotation) {
  check_grid(f, rotation, "dc_operator");
  const SpectralField cinv = reciprocal(rotation.c(), 1);
  const VecField pg = spectral::perp_gradient_h(f);
  const SpectralField w1 = spectral::multiply(cinv, pg[0]);
  const SpectralField w2 = spectral::multiply(cinv, pg[1]);
  return {spectral::diff(w1, Axis::X1),
          0.5 * (spectral::diff(w1, Axis::X2) + spectral::diff(w2, Axis::X1)),
          spectral::diff(w2, Axis::X2)};
}

SpectralField dc_adjoint(const SymTensor2& t, const RotationProfile& rotation) {
  check_grid(t.s11, rotation, "dc_adjoint");
  const SpectralField cinv = reciprocal(rotation.c(), 1);
  const SpectralField d1 = spectral::diff(t.s11, Axis::X1) + spectral::diff(t.s12, Axis::X2);
  const SpectralField d2 = spectral::diff(t.s12, Axis::X1) + spectral::diff(t.s22, Axis::X2);
  return spectral::perp_divergence_h(VecField(spectral::multiply(cinv, d1), spectral::multiply(cinv, d2)));
}

SpectralField transpose_dc_dc(const SpectralField& f, const RotationProfile& rotation) {
  return dc_adjoint(dc_operator(f, rotation), rotation);
}

SpectralField apply_mass_operator(const SpectralField& r, const RotationProfile& rotation) {
  check_grid(r, rotation, "apply_mass_operator");
  const SpectralField X = stream_function(r);
  return x_inverse(X) - spectral::divergence_h([&] {
           const VecField g = spectral::gradient_h(X);
           const SpectralField cinv2 = reciprocal(rotation.c(), 2);
           return VecField(spectral::multiply(cinv2, g[0]), spectral::multiply(cinv2, g[1]));
         }());
}

SpectralField solve_mass_operator(const SpectralField& rhs, const RotationProfile& rotation,
                                  const SolverOptions& options, SolveStats* stats) {
  check_grid(rhs, rotation, "solve_mass_operator");
  const SpectralField cinv2 = reciprocal(rotation.c(), 2);
  const Operator k = [&](const SpectralField& s) { return apply_k(s, cinv2); };
  const SpectralField s =
      pcg(k, preconditioner(mean_of(cinv2), 0.0), rhs, SpectralField(rhs.grid()), options, stats, "solve_mass_operator");
  return x_inverse(s);
}

double qg_energy_var(const SpectralField& r, const RotationProfile& rotation) {
  check_grid(r, rotation, "qg_energy_var");
  const SpectralField cinv = reciprocal(rotation.c(), 1);
  const VecField gr = spectral::gradient_h(r);
  const VecField gx = spectral::gradient_h(stream_function(r));
  const double a = spectral::inner(r, r);
  const double b = spectral::inner(gr[0], gr[0]) + spectral::inner(gr[1], gr[1]);
  const SpectralField w1 = spectral::multiply(cinv, gx[0]);
  const SpectralField w2 = spectral::multiply(cinv, gx[1]);
  const double c = spectral::inner(w1, w1) + spectral::inner(w2, w2);
  return 0.5 * (a + b + c);
}

double qg_dissipation_var(const SpectralField& r, const RotationProfile& rotation) {
  const SymTensor2 d = dc_operator(stream_function(r), rotation);
  return frobenius_inner(d, d);
}

QgState qg_step_var(const QgState& state, const RotationProfile& rotation, double nu, double dt,
                    const SolverOptions& options, SolveStats* stats) {
  check_grid(state.r, rotation, "qg_step_var");
  if (!(dt > 0.0)) throw PreconditionError("qg_step_var: dt must be positive");
  if (!(nu >= 0.0)) throw PreconditionError("qg_step_var: nu must be non-negative");
  if (nu == 0.0) {
    if (stats) *stats = {};
    return {state.r, state.t + dt};
  }
  const double alpha = 0.5 * nu * dt;
  const SpectralField cinv2 = reciprocal(rotation.c(), 2);
  const SpectralField s = stream_function(state.r);
  const SpectralField ks = apply_k(s, cinv2);
  const SpectralField bs = transpose_dc_dc(s, rotation);
  const Operator lhs = [&](const SpectralField& v) { return apply_k(v, cinv2) + alpha * transpose_dc_dc(v, rotation); };
  const SpectralField next =
      pcg(lhs, preconditioner(mean_of(cinv2), alpha), ks - alpha * bs, s, options, stats, "qg_step_var");
  return {x_inverse(next), state.t + dt};
}

}  // namespace rotcap::geo

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

#include "rotcap/nsk/nsk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rotcap/error.hpp"
#include "rotcap/kernels.hpp"
#include "rotcap/spectral/detail.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::nsk {

using spectral::Axis;
using spectral::cplx;
using spectral::CplxVec;
using spectral::Grid;
using spectral::kPi;
using spectral::RealVec;

namespace {

constexpr Axis kAxes[3] = {Axis::X1, Axis::X2, Axis::X3};

void require_3d(const Grid& g, const char* where) {
  if (!g.active(Axis::X3)) throw DimensionError(std::string(where) + ": NSK fields need a 3D grid");
}

SpectralField truncate(SpectralField f, bool on) {
  if (on) spectral::dealias_in_place(f);
  return f;
}

SpectralField from_nodes(const GridPtr& g, RealVec v) { return SpectralField::from_physical(g, std::move(v)); }

void check_vacuum(const SpectralField& rho, double rho_min, double t) {
  const double lo = spectral::min_value(rho);
  if (!(lo >= rho_min)) {
    std::ostringstream os;
    os << "density " << lo << " fell below rho_min = " << rho_min << " at t = " << t;
    throw VacuumError(os.str(), t, lo);
  }
}

// u = m/ρ at the nodes, then truncated.
VecField node_velocity(const NskState& s, bool dealias) {
  const GridPtr& g = s.grid();
  auto rho = s.rho.physical();
  std::array<SpectralField, 3> u;
  for (int i = 0; i < 3; ++i) {
    RealVec out(g->size());
    kernels::divide(s.m[i].physical(), rho, out);
    u[i] = truncate(from_nodes(g, std::move(out)), dealias);
  }
  return VecField(u[0], u[1], u[2]);
}

// Symmetric gradient Du_ij = ½(∂_i u_j + ∂_j u_i) at the nodes, packed as
// 11 22 33 12 13 23.
std::array<RealVec, 6> symmetric_gradient(const VecField& u) {
  const std::size_t n = u.grid()->size();
  std::array<std::array<SpectralField, 3>, 3> du;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) du[i][j] = spectral::diff(u[j], kAxes[i]);
  static constexpr int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  std::array<RealVec, 6> out;
  for (int p = 0; p < 6; ++p) {
    const int i = pairs[p][0];
    const int j = pairs[p][1];
    auto a = du[i][j].physical();
    auto b = du[j][i].physical();
    out[p].resize(n);
    kernels::parallel_for(n, [&](std::size_t x) { out[p][x] = 0.5 * (a[x] + b[x]); });
  }
  return out;
}

// Weight of packed component p in the Frobenius sum (off-diagonals twice).
constexpr double kPackedWeight[6] = {1, 1, 1, 2, 2, 2};
constexpr int kPackedIndex[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};

double cell_integral(const GridPtr& g, std::span<const double> v) {
  return kernels::sum(v) * g->volume() / static_cast<double>(g->size());
}

// Solves (I − aL) X = B mode by mode, with L the linear symbol below.
void implicit_solve(const NskState& b, NskState& x, double a, const Model& model) {
  const Grid& g = *b.grid();
  const double eps = model.params.epsilon;
  const double nu = model.params.nu;
  const double cbar = model.rotation.mean();
  const auto k1 = g.derivative_wavenumbers(Axis::X1);
  const auto k2 = g.derivative_wavenumbers(Axis::X2);
  const auto k3 = g.derivative_wavenumbers(Axis::X3);
  auto bs = b.rho.spectral();
  auto b1 = b.m[0].spectral();
  auto b2 = b.m[1].spectral();
  auto b3 = b.m[2].spectral();
  CplxVec xs(bs.size()), x1(bs.size()), x2(bs.size()), x3(bs.size());
  const double rot = a * cbar / eps;
  spectral::detail::for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int i3) {
    const double k[3] = {k1[i1], k2[i2], k3[i3]};
    const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    const double diag = 1.0 + 0.5 * a * nu * kk;
    const double outer = a * a * (1.0 + kk) / (eps * eps) + 0.5 * a * nu;
    // A = diag·I + outer·kkᵀ + rot·J with J M = e³×M.
    double A[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) A[r][c] = (r == c ? diag : 0.0) + outer * k[r] * k[c];
    A[0][1] -= rot;
    A[1][0] += rot;
    const cplx shift = cplx(0.0, a * (1.0 + kk) / (eps * eps));
    const cplx rhs[3] = {b1[idx] - shift * k[0] * bs[idx], b2[idx] - shift * k[1] * bs[idx],
                         b3[idx] - shift * k[2] * bs[idx]};
    const double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                       A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                       A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    double inv[3][3];
    inv[0][0] = (A[1][1] * A[2][2] - A[1][2] * A[2][1]) / det;
    inv[0][1] = (A[0][2] * A[2][1] - A[0][1] * A[2][2]) / det;
    inv[0][2] = (A[0][1] * A[1][2] - A[0][2] * A[1][1]) / det;
    inv[1][0] = (A[1][2] * A[2][0] - A[1][0] * A[2][2]) / det;
    inv[1][1] = (A[0][0] * A[2][2] - A[0][2] * A[2][0]) / det;
    inv[1][2] = (A[0][2] * A[1][0] - A[0][0] * A[1][2]) / det;
    inv[2][0] = (A[1][0] * A[2][1] - A[1][1] * A[2][0]) / det;
    inv[2][1] = (A[0][1] * A[2][0] - A[0][0] * A[2][1]) / det;
    inv[2][2] = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) / det;
    cplx M[3];
    for (int r = 0; r < 3; ++r) M[r] = inv[r][0] * rhs[0] + inv[r][1] * rhs[1] + inv[r][2] * rhs[2];
    x1[idx] = M[0];
    x2[idx] = M[1];
    x3[idx] = M[2];
    xs[idx] = bs[idx] - cplx(0.0, a) * (k[0] * M[0] + k[1] * M[1] + k[2] * M[2]);
  });
  const GridPtr& gp = b.grid();
  x.rho = SpectralField::from_spectral(gp, std::move(xs));
  x.m = VecField(SpectralField::from_spectral(gp, std::move(x1)), SpectralField::from_spectral(gp, std::move(x2)),
                 SpectralField::from_spectral(gp, std::move(x3)));
}

NskState combine(const NskState& base, std::initializer_list<std::pair<double, const Tendency*>> terms) {
  NskState out = base;
  for (const auto& [w, t] : terms) {
    out.rho += w * t->drho;
    out.m += w * t->dm;
  }
  return out;
}

Tendency subtract(const Tendency& a, const Tendency& b) { return {a.drho - b.drho, a.dm - b.dm}; }

}  // namespace

VecField NskState::velocity() const { return node_velocity(*this, true); }

SpectralField NskState::r(double epsilon) const {
  return (1.0 / epsilon) * (rho - SpectralField::constant(grid(), 1.0));
}

SpectralField NskState::a(double epsilon) const {
  return spectral::map(rho, [epsilon](double v) { return (1.0 / v - 1.0) / epsilon; });
}

double NskState::mass() const { return spectral::integrate(rho); }

NskState NskState::rest(const GridPtr& grid) {
  require_3d(*grid, "NskState::rest");
  return {SpectralField::constant(grid, 1.0), VecField::zeros(grid, spectral::Orientation::Full), 0.0};
}

Scheme parse_scheme(const std::string& name) {
  if (name == "IMEX") return Scheme::Imex;
  if (name == "EXPLICIT_RK4") return Scheme::ExplicitRk4;
  throw ConfigError("", "unknown scheme '" + name + "'");
}

const char* to_string(Scheme s) { return s == Scheme::Imex ? "IMEX" : "EXPLICIT_RK4"; }

void SimParams::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw PreconditionError("epsilon must lie in (0, 1]");
  if (!(nu >= 0.0)) throw PreconditionError("nu must be non-negative");
  if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
  if (!(t_final >= 0.0)) throw PreconditionError("t_final must be non-negative");
  if (!(rho_min > 0.0 && rho_min < 1.0)) throw PreconditionError("rho_min must lie in (0, 1)");
}

Tendency rhs(const NskState& s, const Model& model) {
  const GridPtr& g = s.grid();
  require_3d(*g, "rhs");
  const SimParams& p = model.params;
  const bool da = p.dealias;
  const double inv_e2 = 1.0 / (p.epsilon * p.epsilon);
  const std::size_t n = g->size();
  check_vacuum(s.rho, p.rho_min, s.t);

  auto rho = s.rho.physical();
  const VecField u = node_velocity(s, da);
  const auto Du = symmetric_gradient(u);

  // Symmetric flux ½(m_i u_j + m_j u_i) − νρ Du_ij.
  std::array<SpectralField, 6> T;
  for (int pi = 0; pi < 6; ++pi) {
    static constexpr int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
    const int i = pairs[pi][0];
    const int j = pairs[pi][1];
    auto mi = s.m[i].physical();
    auto mj = s.m[j].physical();
    auto ui = u[i].physical();
    auto uj = u[j].physical();
    RealVec out(n);
    const auto& d = Du[pi];
    kernels::parallel_for(n, [&](std::size_t x) {
      out[x] = 0.5 * (mi[x] * uj[x] + mj[x] * ui[x]) - p.nu * rho[x] * d[x];
    });
    T[pi] = truncate(from_nodes(g, std::move(out)), da);
  }

  const SpectralField Pi = truncate(spectral::map(s.rho, [&](double v) { return model.pressure.Pi(v); }), da);
  const SpectralField lap = spectral::laplacian(s.rho);

  const SpectralField c = model.rotation.extended(g);
  auto cv = c.physical();
  auto m1 = s.m[0].physical();
  auto m2 = s.m[1].physical();
  RealVec cor1(n), cor2(n);
  kernels::parallel_for(n, [&](std::size_t x) {
    cor1[x] = cv[x] * m2[x] / p.epsilon;
    cor2[x] = -cv[x] * m1[x] / p.epsilon;
  });
  const SpectralField cor[3] = {truncate(from_nodes(g, std::move(cor1)), da),
                                truncate(from_nodes(g, std::move(cor2)), da), SpectralField(g)};

  std::array<SpectralField, 3> dm;
  for (int i = 0; i < 3; ++i) {
    SpectralField div_t = spectral::diff(T[kPackedIndex[i][0]], Axis::X1);
    div_t += spectral::diff(T[kPackedIndex[i][1]], Axis::X2);
    div_t += spectral::diff(T[kPackedIndex[i][2]], Axis::X3);
    const SpectralField dlap_f = spectral::diff(lap, kAxes[i]);
    auto dlap = dlap_f.physical();
    RealVec kort(n);
    kernels::multiply(rho, dlap, kort);
    SpectralField korteweg = truncate(from_nodes(g, std::move(kort)), da);
    SpectralField acc = -div_t;
    acc -= inv_e2 * spectral::diff(Pi, kAxes[i]);
    acc += inv_e2 * korteweg;
    acc += cor[i];
    dm[i] = std::move(acc);
  }
  return {-spectral::divergence(s.m), VecField(dm[0], dm[1], dm[2])};
}

Tendency linear_part(const NskState& s, const Model& model) {
  const Grid& g = *s.grid();
  const double eps = model.params.epsilon;
  const double nu = model.params.nu;
  const double cbar = model.rotation.mean();
  const auto k1 = g.derivative_wavenumbers(Axis::X1);
  const auto k2 = g.derivative_wavenumbers(Axis::X2);
  const auto k3 = g.derivative_wavenumbers(Axis::X3);
  auto rs = s.rho.spectral();
  auto m1 = s.m[0].spectral();
  auto m2 = s.m[1].spectral();
  auto m3 = s.m[2].spectral();
  CplxVec ds(rs.size()), d1(rs.size()), d2(rs.size()), d3(rs.size());
  const cplx I(0.0, 1.0);
  spectral::detail::for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int i3) {
    const double k[3] = {k1[i1], k2[i2], k3[i3]};
    const double kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    const cplx M[3] = {m1[idx], m2[idx], m3[idx]};
    const cplx kM = k[0] * M[0] + k[1] * M[1] + k[2] * M[2];
    // Density deviation: ∇ of the mean is zero anyway.
    const cplx sv = rs[idx];
    const cplx wave = -I * (1.0 + kk) / (eps * eps) * sv;
    ds[idx] = -I * kM;
    d1[idx] = wave * k[0] + cbar / eps * M[1] - 0.5 * nu * (kk * M[0] + k[0] * kM);
    d2[idx] = wave * k[1] - cbar / eps * M[0] - 0.5 * nu * (kk * M[1] + k[1] * kM);
    d3[idx] = wave * k[2] - 0.5 * nu * (kk * M[2] + k[2] * kM);
  });
  const GridPtr& gp = s.grid();
  return {SpectralField::from_spectral(gp, std::move(ds)),
          VecField(SpectralField::from_spectral(gp, std::move(d1)), SpectralField::from_spectral(gp, std::move(d2)),
                   SpectralField::from_spectral(gp, std::move(d3)))};
}

StableStep max_stable_dt(const NskState& s, const Model& model) {
  const Grid& g = *s.grid();
  const SimParams& p = model.params;
  StableStep best{std::numeric_limits<double>::infinity(), "none"};
  auto consider = [&best](double dt, const char* rule) {
    if (dt < best.dt) best = {dt, rule};
  };
  double umax = 0.0;
  const VecField u = node_velocity(s, p.dealias);
  for (int i = 0; i < 3; ++i) umax = std::max(umax, spectral::max_abs(u[i]));
  const double dx = std::min({g.spacing(Axis::X1), g.spacing(Axis::X2), g.spacing(Axis::X3)});
  if (umax > 0.0) consider(0.5 * dx / umax, "advective");
  const double kmax = g.max_retained_wavenumber();
  if (p.scheme == Scheme::ExplicitRk4) {
    consider(0.5 * p.epsilon / (1.0 + kmax * kmax), "capillary-acoustic");
  } else if (model.rotation.max_deviation() > 0.0) {
    consider(0.5 * p.epsilon / model.rotation.max_deviation(), "explicit-coriolis");
  }
  return best;
}

NskState step(const NskState& s, const Model& model) {
  const SimParams& p = model.params;
  const StableStep limit = max_stable_dt(s, model);
  if (p.dt > limit.dt * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << p.dt << " exceeds the " << limit.rule << " limit " << limit.dt;
    throw CflError(os.str(), p.dt, limit.dt);
  }
  const double dt = p.dt;
  NskState next;
  if (p.scheme == Scheme::ExplicitRk4) {
    const Tendency k1 = rhs(s, model);
    NskState s2 = combine(s, {{0.5 * dt, &k1}});
    s2.t = s.t + 0.5 * dt;
    const Tendency k2 = rhs(s2, model);
    NskState s3 = combine(s, {{0.5 * dt, &k2}});
    s3.t = s2.t;
    const Tendency k3 = rhs(s3, model);
    NskState s4 = combine(s, {{dt, &k3}});
    s4.t = s.t + dt;
    const Tendency k4 = rhs(s4, model);
    next = combine(s, {{dt / 6.0, &k1}, {dt / 3.0, &k2}, {dt / 3.0, &k3}, {dt / 6.0, &k4}});
  } else {
    // ARS(2,2,2): stiffly accurate, L-stable implicit part.
    const double gam = 1.0 - 1.0 / std::sqrt(2.0);
    const double del = 1.0 - 1.0 / (2.0 * gam);
    const Tendency n0 = subtract(rhs(s, model), linear_part(s, model));
    NskState b1 = combine(s, {{gam * dt, &n0}});
    NskState u1;
    implicit_solve(b1, u1, gam * dt, model);
    u1.t = s.t + gam * dt;
    const Tendency l1 = linear_part(u1, model);
    const Tendency n1 = subtract(rhs(u1, model), l1);
    NskState b2 = combine(s, {{del * dt, &n0}, {(1.0 - del) * dt, &n1}, {(1.0 - gam) * dt, &l1}});
    implicit_solve(b2, next, gam * dt, model);
  }
  next.t = s.t + dt;
  spectral::symmetry_project(next.rho, next.m);
  check_vacuum(next.rho, p.rho_min, next.t);
  return next;
}

EnergyParts classical_energy(const NskState& s, double epsilon, const PressureLaw& pressure) {
  const GridPtr& g = s.grid();
  const std::size_t n = g->size();
  const double inv_e2 = 1.0 / (epsilon * epsilon);
  auto rho = s.rho.physical();
  auto m1 = s.m[0].physical();
  auto m2 = s.m[1].physical();
  auto m3 = s.m[2].physical();
  RealVec hv(n), hc(n), ke(n);
  kernels::parallel_for(n, [&](std::size_t x) {
    hv[x] = pressure.h(rho[x]);
    hc[x] = pressure.h_cold(rho[x]);
    ke[x] = 0.5 * (m1[x] * m1[x] + m2[x] * m2[x] + m3[x] * m3[x]) / rho[x];
  });
  EnergyParts e;
  e.internal = inv_e2 * cell_integral(g, hv);
  e.cold = inv_e2 * cell_integral(g, hc);
  e.kinetic = cell_integral(g, ke);
  const double grad = spectral::l2_norm(spectral::gradient(s.rho));
  e.capillary = 0.5 * inv_e2 * grad * grad;
  e.total = e.internal + e.cold + e.kinetic + e.capillary;
  return e;
}

BdEntropy bd_entropy(const NskState& s, double nu, double rho_min) {
  check_vacuum(s.rho, std::max(rho_min, std::numeric_limits<double>::min()), s.t);
  const GridPtr& g = s.grid();
  const SpectralField sq = spectral::map(s.rho, [](double v) { return std::sqrt(v); });
  const SpectralField lg = spectral::map(s.rho, [](double v) { return std::log(v); });
  const double gs = spectral::l2_norm(spectral::gradient(sq));
  const VecField gl = spectral::gradient(lg);
  auto rho = s.rho.physical();
  RealVec w(g->size());
  for (int i = 0; i < 3; ++i) {
    auto v = gl[i].physical();
    for (std::size_t x = 0; x < w.size(); ++x) w[x] += rho[x] * v[x] * v[x];
  }
  return {2.0 * nu * nu * gs * gs, 0.5 * nu * nu * cell_integral(g, w)};
}

double viscous_dissipation(const NskState& s) {
  const GridPtr& g = s.grid();
  const auto Du = symmetric_gradient(s.velocity());
  auto rho = s.rho.physical();
  RealVec w(g->size());
  kernels::parallel_for(w.size(), [&](std::size_t x) {
    double acc = 0.0;
    for (int p = 0; p < 6; ++p) acc += kPackedWeight[p] * Du[p][x] * Du[p][x];
    w[x] = rho[x] * acc;
  });
  return cell_integral(g, w);
}

double bd_dissipation(const NskState& s, double epsilon, const PressureLaw& pressure) {
  const GridPtr& g = s.grid();
  double hess = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double v = spectral::l2_norm(spectral::diff(spectral::diff(s.rho, kAxes[i]), kAxes[j]));
      hess += v * v;
    }
  const SpectralField sq = spectral::map(s.rho, [](double v) { return std::sqrt(v); });
  const VecField gs = spectral::gradient(sq);
  auto rho = s.rho.physical();
  RealVec w(g->size());
  for (int i = 0; i < 3; ++i) {
    auto v = gs[i].physical();
    for (std::size_t x = 0; x < w.size(); ++x) w[x] += pressure.dPi(rho[x]) * v[x] * v[x];
  }
  return (hess + cell_integral(g, w)) / (epsilon * epsilon);
}

CoriolisWork coriolis_work(const NskState& s, const Model& model) {
  const GridPtr& g = s.grid();
  const SpectralField c = model.rotation.extended(g);
  auto cv = c.physical();
  auto rho = s.rho.physical();
  auto m1 = s.m[0].physical();
  auto m2 = s.m[1].physical();
  auto m3 = s.m[2].physical();
  RealVec w(g->size()), sc(g->size());
  const double inv_e = 1.0 / model.params.epsilon;
  kernels::parallel_for(w.size(), [&](std::size_t x) {
    const double u1 = m1[x] / rho[x];
    const double u2 = m2[x] / rho[x];
    const double u3 = m3[x] / rho[x];
    // Force −ε⁻¹c e³×m = ε⁻¹c (m², −m¹, 0).
    w[x] = inv_e * cv[x] * (m2[x] * u1 - m1[x] * u2);
    sc[x] = inv_e * std::abs(cv[x]) * std::sqrt(m1[x] * m1[x] + m2[x] * m2[x] + m3[x] * m3[x]) *
            std::sqrt(u1 * u1 + u2 * u2 + u3 * u3);
  });
  return {cell_integral(g, w), cell_integral(g, sc)};
}

double parity_residual(const NskState& s) {
  using spectral::Parity;
  double r = spectral::parity_residual(s.rho, Parity::Even);
  r = std::max(r, spectral::parity_residual(s.m[0], Parity::Even));
  r = std::max(r, spectral::parity_residual(s.m[1], Parity::Even));
  r = std::max(r, spectral::parity_residual(s.m[2], Parity::Odd));
  return r;
}

ModeSpec parse_mode(const std::string& text) {
  std::istringstream is(text);
  ModeSpec m;
  std::string trig;
  if (!(is >> m.field >> m.amplitude >> trig >> m.k1 >> m.k2 >> m.n3)) {
    throw ConfigError("", "mode '" + text + "': expected '<field> <amp> <cos|sin> k1 k2 n3'");
  }
  std::string extra;
  if (is >> extra) throw ConfigError("", "mode '" + text + "': trailing tokens");
  if (m.field != "r" && m.field != "u1" && m.field != "u2" && m.field != "u3") {
    throw ConfigError("", "mode '" + text + "': field must be r, u1, u2 or u3");
  }
  if (trig != "cos" && trig != "sin") throw ConfigError("", "mode '" + text + "': expected cos or sin");
  if (m.n3 < 0) throw ConfigError("", "mode '" + text + "': n3 must be non-negative");
  m.cosine = trig == "cos";
  return m;
}

InitialFields synthesize(const GridPtr& grid, const std::vector<ModeSpec>& modes) {
  require_3d(*grid, "synthesize");
  InitialFields out{SpectralField(grid), VecField::zeros(grid, spectral::Orientation::Full)};
  for (const auto& m : modes) {
    const bool odd = m.field == "u3";
    SpectralField f = SpectralField::sample(grid, [&](double x1, double x2, double x3) {
      const double ph = m.k1 * x1 + m.k2 * x2;
      const double v = odd ? std::sin(kPi * m.n3 * x3) : std::cos(kPi * m.n3 * x3);
      return m.amplitude * (m.cosine ? std::cos(ph) : std::sin(ph)) * v;
    });
    if (m.field == "r") out.r0 += f;
    else out.u0[m.field[1] - '1'] += f;
  }
  return out;
}

InitialDatum init_ill_prepared(const SpectralField& r0, const VecField& u0, double epsilon,
                               const PressureLaw& pressure, double nu, double rho_min) {
  const GridPtr& g = r0.grid();
  require_3d(*g, "init_ill_prepared");
  NskState s;
  s.rho = spectral::dealias(SpectralField::constant(g, 1.0) + epsilon * r0);
  check_vacuum(s.rho, rho_min, 0.0);
  std::array<SpectralField, 3> m;
  for (int i = 0; i < 3; ++i) m[i] = spectral::dealiased_product(s.rho, u0[i]);
  s.m = VecField(m[0], m[1], m[2]);
  spectral::symmetry_project(s.rho, s.m);
  check_vacuum(s.rho, rho_min, 0.0);
  return {s, classical_energy(s, epsilon, pressure), bd_entropy(s, nu, rho_min)};
}

}  // namespace rotcap::nsk

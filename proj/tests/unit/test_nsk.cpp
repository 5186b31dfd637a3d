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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rotcap/error.hpp"
#include "rotcap/nsk/run.hpp"
#include "rotcap/spectral/operators.hpp"

using namespace rotcap;
using namespace rotcap::nsk;
using spectral::Grid;

namespace {

constexpr double kPi = std::numbers::pi;

Model make_model(double eps, double nu, double dt, double T, RotationKind kind, const GridPtr& g,
                 Scheme scheme = Scheme::Imex) {
  return Model{SimParams{eps, nu, dt, T, scheme}, RotationProfile::make(kind, g), PressureLaw(2.0)};
}

NskState smooth_state(const GridPtr& g, double eps, double amp = 0.3) {
  std::vector<ModeSpec> modes;
  for (const auto* s : {"r 1.0 cos 1 0 0", "r 0.5 cos 1 1 1", "u1 0.4 cos 0 1 0", "u2 0.5 sin 1 0 0",
                        "u3 0.3 cos 1 0 1"}) {
    ModeSpec m = parse_mode(s);
    m.amplitude *= amp;
    modes.push_back(m);
  }
  const auto f = synthesize(g, modes);
  return init_ill_prepared(f.r0, f.u0, eps, PressureLaw(2.0), 0.1).state;
}

double distance(const NskState& a, const NskState& b) {
  return spectral::l2_norm(a.rho - b.rho) + spectral::l2_norm(a.m - b.m);
}

NskState advance(NskState s, const Model& model, int steps) {
  for (int i = 0; i < steps; ++i) s = step(s, model);
  return s;
}

}  // namespace

TEST_CASE("pressure law closed forms") {
  for (double gamma : {1.4, 2.0}) {
    const PressureLaw p(gamma);
    CHECK(p.dPi(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(p.h(1.0)) < 1e-15);
    CHECK(std::abs(p.dh(1.0)) < 1e-15);
    CHECK(std::abs(p.h_cold(1.0)) < 1e-15);
    CHECK(std::abs(p.dh_cold(1.0)) < 1e-15);
    CHECK(p.P(2.0) == doctest::Approx(std::pow(2.0, gamma) / (2.0 * gamma)));
    CHECK(p.P_cold(2.0) == doctest::Approx(-0.0625));
    for (double rho : {0.5, 0.9, 1.1, 1.7}) {
      CHECK(p.h(rho) > 0.0);
      CHECK(p.h_cold(rho) > 0.0);
      // h'' = P'/ρ and h_c'' = P_c'/ρ by central differences.
      const double d = 1e-4;
      const double h2 = (p.h(rho + d) - 2.0 * p.h(rho) + p.h(rho - d)) / (d * d);
      const double dP = (p.P(rho + d) - p.P(rho - d)) / (2.0 * d);
      CHECK(h2 == doctest::Approx(dP / rho).epsilon(1e-6));
      const double hc2 = (p.h_cold(rho + d) - 2.0 * p.h_cold(rho) + p.h_cold(rho - d)) / (d * d);
      const double dPc = (p.P_cold(rho + d) - p.P_cold(rho - d)) / (2.0 * d);
      CHECK(hc2 == doctest::Approx(dPc / rho).epsilon(1e-6));
      CHECK(p.dPi(rho) == doctest::Approx((p.Pi(rho + d) - p.Pi(rho - d)) / (2.0 * d)).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(PressureLaw(1.0), PreconditionError);
  CHECK_THROWS_AS(PressureLaw(2.5), PreconditionError);
}

TEST_CASE("rotation profiles") {
  const auto g = Grid::make(64, 64, 4);
  const auto flat = RotationProfile::make(RotationKind::Constant, g);
  CHECK(flat.mean() == doctest::Approx(1.0));
  CHECK(flat.max_deviation() < 1e-14);
  CHECK(flat.lipschitz_bound() < 1e-12);

  const auto c = RotationProfile::make(RotationKind::SmoothNondeg, g);
  CHECK(c.min_abs() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(c.mean() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.lipschitz_bound() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::isfinite(c.zmu_seminorm()));
  CHECK(c.extended(g).grid() == g);

  // |∂₁c| = |cos x¹| ≤ δ on a set of area 2π · 4 asin δ; node counts err by
  // at most one cell per crossing.
  const std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  const auto area = c.nondegeneracy_curve(deltas);
  const double cell = 2.0 * kPi * (2.0 * kPi / 64);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    CHECK(std::abs(area[i] - 2.0 * kPi * 4.0 * std::asin(deltas[i])) <= 4.0 * cell + 1e-12);
    if (i > 0) CHECK(area[i] <= area[i - 1]);
  }
  CHECK(RotationProfile::parse_kind("SMOOTH_NONDEG") == RotationKind::SmoothNondeg);
  CHECK_THROWS_AS(RotationProfile::parse_kind("TILTED"), ConfigError);
}

TEST_CASE("rhs vanishes at rest") {
  const auto g = Grid::make(16, 16, 4);
  const auto model = make_model(0.1, 0.1, 1e-3, 1.0, RotationKind::SmoothNondeg, g);
  const NskState s = NskState::rest(g);
  const Tendency d = rhs(s, model);
  CHECK(spectral::max_abs(d.drho) == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(spectral::max_abs(d.dm[i]) < 1e-12);
  const NskState next = step(s, model);
  CHECK(distance(next, s) < 1e-12);
}

TEST_CASE("Coriolis acts as -c e3 x m / eps") {
  const auto g = Grid::make(16, 16, 4);
  const double eps = 0.1;
  const auto model = make_model(eps, 0.0, 1e-3, 1.0, RotationKind::Constant, g);
  NskState s = NskState::rest(g);
  s.m[0] = SpectralField::constant(g, 1.0);
  const Tendency d = rhs(s, model);
  auto d1 = d.dm[0].physical();
  auto d2 = d.dm[1].physical();
  auto d3 = d.dm[2].physical();
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(std::abs(d1[i]) < 1e-12);
    CHECK(d2[i] == doctest::Approx(-1.0 / eps).epsilon(1e-13));
    CHECK(std::abs(d3[i]) < 1e-12);
  }
  CHECK(spectral::max_abs(d.drho) < 1e-14);
}

TEST_CASE("manufactured density perturbation matches the quadrature oracle") {
  // ρ = 1 + εδ cos x¹, m = 0: ∂_t m¹ = ε⁻¹δ sin x¹ (Π'(ρ) + ρ), the other
  // components vanish. Compare the sin x¹ amplitude with an adaptive
  // quadrature of the closed form.
  const auto g = Grid::make(32, 8, 4);
  const double delta = 0.01;
  for (double eps : {0.2, 0.05}) {
    const auto model = make_model(eps, 0.1, 1e-3, 1.0, RotationKind::SmoothNondeg, g);
    NskState s = NskState::rest(g);
    s.rho = SpectralField::sample(g, [&](double x, double, double) { return 1.0 + eps * delta * std::cos(x); });
    const Tendency d = rhs(s, model);
    const auto exact = [&](double x) {
      const double rho = 1.0 + eps * delta * std::cos(x);
      const double dpi = 0.5 * rho + 0.5 / (rho * rho * rho);
      return delta / eps * std::sin(x) * (dpi + rho);
    };
    const double amp = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                           [&](double x) { return exact(x) * std::sin(x); }, 0.0, 2.0 * kPi, 15, 1e-14) /
                       kPi;
    const auto& c = d.dm[0].spectral();
    // Coefficient of e^{ix¹} is amp / (2i).
    const std::size_t idx = g->spectral_index(1, 0, 0);
    CHECK(c[idx].imag() == doctest::Approx(-0.5 * amp).epsilon(1e-10));
    CHECK(std::abs(c[idx].real()) < 1e-12 * std::abs(amp));
    auto d1 = d.dm[0].physical();
    for (int i = 0; i < 32; ++i) CHECK(d1[g->physical_index(i, 3, 1)] == doctest::Approx(exact(g->coordinate(spectral::Axis::X1, i))).epsilon(1e-9));
    CHECK(spectral::max_abs(d.dm[1]) < 1e-12);
    CHECK(spectral::max_abs(d.dm[2]) < 1e-12);
    CHECK(spectral::max_abs(d.drho) < 1e-14);
  }
}

TEST_CASE("classical energy examples") {
  const auto g = Grid::make(32, 32, 4);
  const PressureLaw p(2.0);
  CHECK(classical_energy(NskState::rest(g), 0.1, p).total == 0.0);

  NskState s = NskState::rest(g);
  s.m[0] = SpectralField::sample(g, [](double, double y, double) { return std::sin(y); });
  const auto e = classical_energy(s, 0.1, p);
  CHECK(e.kinetic == doctest::Approx(0.25 * g->volume()).epsilon(1e-12));
  CHECK(e.total == doctest::Approx(e.kinetic).epsilon(1e-12));

  const double eps = 0.1, a = 0.01;
  s = NskState::rest(g);
  s.rho = SpectralField::sample(g, [&](double x, double, double) { return 1.0 + eps * a * std::cos(x); });
  const auto parts = classical_energy(s, eps, p);
  using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
  const auto rho = [&](double x) { return 1.0 + eps * a * std::cos(x); };
  const double span = 2.0 * kPi * 1.0;  // x² period times the x³ half cell
  const double h = span / (eps * eps) *
                   Q::integrate([&](double x) { return (rho(x) - 1.0) * (rho(x) - 1.0) / 4.0; }, 0.0, 2.0 * kPi, 15, 1e-15);
  const double hc = span / (eps * eps) *
                    Q::integrate([&](double x) { return 1.0 / (12.0 * rho(x) * rho(x)) + rho(x) / 6.0 - 0.25; }, 0.0,
                                 2.0 * kPi, 15, 1e-15);
  const double grad = span / (eps * eps) *
                      Q::integrate([&](double x) { return 0.5 * std::pow(eps * a * std::sin(x), 2); }, 0.0, 2.0 * kPi, 15, 1e-15);
  CHECK(parts.internal == doctest::Approx(h).epsilon(1e-10));
  CHECK(parts.cold == doctest::Approx(hc).epsilon(1e-9));
  CHECK(parts.capillary == doctest::Approx(grad).epsilon(1e-10));
  CHECK(parts.kinetic == 0.0);
  CHECK(parts.total == doctest::Approx(h + hc + grad).epsilon(1e-10));
}

TEST_CASE("BD entropy forms agree") {
  const auto g = Grid::make(32, 16, 4);
  NskState s = NskState::rest(g);
  CHECK(bd_entropy(s, 0.1).sqrt_form == 0.0);
  s.rho = SpectralField::sample(g, [](double x, double, double) { return 1.0 + 0.1 * std::cos(x); });
  const auto f = bd_entropy(s, 0.1);
  CHECK(f.sqrt_form > 0.0);
  CHECK(f.log_form == doctest::Approx(f.sqrt_form).epsilon(1e-10));
  // Resolved smooth state: the forms differ only by aliasing of √ρ and log ρ.
  const auto fine = Grid::make(32, 32, 8);
  s = smooth_state(fine, 0.2);
  const auto f2 = bd_entropy(s, 0.3);
  CHECK(f2.log_form == doctest::Approx(f2.sqrt_form).epsilon(1e-10));
}

TEST_CASE("ill-prepared initial data") {
  const auto g = Grid::make(16, 16, 4);
  const PressureLaw p(2.0);
  const VecField zero = VecField::zeros(g, spectral::Orientation::Full);
  const auto rest = init_ill_prepared(SpectralField(g), zero, 0.1, p, 0.1);
  CHECK(distance(rest.state, NskState::rest(g)) == 0.0);
  CHECK(rest.energy.total == 0.0);

  const SpectralField r0 = SpectralField::sample(g, [](double x, double, double) { return std::cos(x); });
  VecField u0 = zero;
  u0[0] = SpectralField::sample(g, [](double, double y, double) { return std::sin(y); });
  const auto d = init_ill_prepared(r0, u0, 0.1, p, 0.1);
  auto rho = d.state.rho.physical();
  for (int i = 0; i < 16; ++i) {
    const double x = g->coordinate(spectral::Axis::X1, i);
    CHECK(rho[g->physical_index(i, 5, 2)] == doctest::Approx(1.0 + 0.1 * std::cos(x)).epsilon(1e-13));
  }
  CHECK(parity_residual(d.state) < 1e-14);

  // One datum across the sweep: the energy stays within a factor 2.
  const auto modes = synthesize(g, {parse_mode("r 1.0 cos 1 0 0"), parse_mode("r 0.5 cos 2 0 1"),
                                    parse_mode("u2 0.5 sin 1 0 0"), parse_mode("u3 0.2 cos 1 1 1")});
  double lo = 1e300, hi = 0.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto di = init_ill_prepared(modes.r0, modes.u0, eps, p, 0.1);
    CHECK(std::isfinite(di.bd.sqrt_form));
    lo = std::min(lo, di.energy.total);
    hi = std::max(hi, di.energy.total);
  }
  CHECK(hi <= 2.0 * lo);

  CHECK_THROWS_AS(init_ill_prepared(r0, u0, 1.0, p, 0.1), VacuumError);
  CHECK_THROWS_AS(parse_mode("r 1.0 tan 1 0 0"), ConfigError);
  CHECK_THROWS_AS(parse_mode("w 1.0 cos 1 0 0"), ConfigError);
}

TEST_CASE("refusals") {
  const auto g = Grid::make(16, 16, 4);
  const NskState s = smooth_state(g, 0.2);
  auto model = make_model(0.2, 0.1, 0.5, 1.0, RotationKind::SmoothNondeg, g, Scheme::ExplicitRk4);
  CHECK_THROWS_AS(step(s, model), CflError);
  model.params.scheme = Scheme::Imex;
  CHECK_THROWS_AS(step(s, model), CflError);
  model.params.dt = 1e-3;
  CHECK_NOTHROW(step(s, model));

  NskState thin = NskState::rest(g);
  thin.rho = SpectralField::sample(g, [](double x, double, double) { return 1.0 + 0.95 * std::cos(x); });
  CHECK_THROWS_AS(rhs(thin, model), VacuumError);
  model.params.epsilon = 0.0;
  CHECK_THROWS_AS(model.params.validate(), PreconditionError);
  CHECK_THROWS_AS(rhs(NskState::rest(Grid::make(16, 16)), make_model(0.1, 0.1, 1e-3, 1.0, RotationKind::Constant, g)),
                  DimensionError);
}

TEST_CASE("IMEX converges to the RK4 reference") {
  const auto g = Grid::make(16, 16, 4);
  const double eps = 0.5, T = 0.04;
  const NskState s0 = smooth_state(g, eps);
  const auto ref_model = make_model(eps, 0.1, T / 400, T, RotationKind::SmoothNondeg, g, Scheme::ExplicitRk4);
  const NskState ref = advance(s0, ref_model, 400);
  std::vector<double> err;
  for (int n : {8, 16, 32, 64}) {
    const auto m = make_model(eps, 0.1, T / n, T, RotationKind::SmoothNondeg, g);
    err.push_back(distance(advance(s0, m, n), ref));
  }
  for (std::size_t i = 1; i < err.size(); ++i) {
    const double order = std::log2(err[i - 1] / err[i]);
    INFO("order " << order << " at refinement " << i);
    CHECK(order >= 1.0);
  }
}

TEST_CASE("step halving matches the local order") {
  const auto g = Grid::make(16, 16, 4);
  const double eps = 0.5;
  const NskState s0 = smooth_state(g, eps);
  auto local = [&](double dt, Scheme scheme) {
    const auto full = make_model(eps, 0.1, dt, 1.0, RotationKind::SmoothNondeg, g, scheme);
    const auto half = make_model(eps, 0.1, dt / 2, 1.0, RotationKind::SmoothNondeg, g, scheme);
    return distance(step(s0, full), advance(s0, half, 2));
  };
  // ARS(2,2,2) local error is O(dt³); RK4 is O(dt⁵).
  const double imex = std::log2(local(2e-3, Scheme::Imex) / local(1e-3, Scheme::Imex));
  INFO("IMEX local order " << imex);
  CHECK(imex >= 2.5);
  CHECK(imex <= 3.5);
  const double rk4 = std::log2(local(2e-3, Scheme::ExplicitRk4) / local(1e-3, Scheme::ExplicitRk4));
  INFO("RK4 local order " << rk4);
  CHECK(rk4 >= 4.5);
}

TEST_CASE("conservation along a run") {
  const auto g = Grid::make(16, 16, 4);
  const double eps = 0.2;
  const NskState s0 = smooth_state(g, eps);
  const auto model = make_model(eps, 0.1, 5e-3, 0.2, RotationKind::SmoothNondeg, g);
  int calls = 0;
  RunOptions opts;
  opts.observer = [&](const NskState& s, const StepRecord& r) {
    ++calls;
    CHECK(s.t == doctest::Approx(r.t));
  };
  const RunResult res = simulate(s0, model, opts);
  CHECK(res.steps == 40);
  CHECK(calls == 40);
  CHECK(res.records.size() == 41);
  CHECK(res.final_state.t == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(res.max_mass_drift <= 1e-10);
  CHECK(res.max_coriolis_relative <= 1e-12);
  CHECK(res.max_parity <= 1e-12);
  const auto led = energy_ledger(res.records, 0.1);
  CHECK(led.energy_pass);
  CHECK(led.bd_pass);
  CHECK_FALSE(led.first_energy_violation.has_value());
}

TEST_CASE("energy ledger") {
  const auto g = Grid::make(16, 16, 4);
  const auto model = make_model(0.1, 0.1, 0.01, 0.1, RotationKind::SmoothNondeg, g);
  const auto rest = simulate(NskState::rest(g), model);
  const auto led = energy_ledger(rest.records, 0.1);
  CHECK(led.energy_pass);
  CHECK(led.bd_pass);
  CHECK(led.max_energy_residual == 0.0);
  CHECK(led.min_energy_residual == 0.0);
  CHECK(led.bd_max_ratio == 0.0);

  // A fabricated energy increase is flagged at the step where it occurs.
  std::vector<StepRecord> recs(3);
  for (int i = 0; i < 3; ++i) {
    recs[i].t = 0.1 * i;
    recs[i].energy.total = 1.0;
  }
  recs[2].energy.total = 1.01;
  const auto bad = energy_ledger(recs, 0.1);
  CHECK_FALSE(bad.energy_pass);
  REQUIRE(bad.first_energy_violation.has_value());
  CHECK(*bad.first_energy_violation == doctest::Approx(0.2));
  CHECK(bad.max_energy_residual == doctest::Approx(0.01));
}

TEST_CASE("inviscid energy is conserved to scheme order") {
  const auto g = Grid::make(32, 32, 8);
  const double eps = 0.5, T = 0.05;
  const NskState s0 = smooth_state(g, eps, 0.1);
  std::vector<double> drift;
  for (int n : {50, 100}) {
    const auto m = make_model(eps, 0.0, T / n, T, RotationKind::SmoothNondeg, g, Scheme::ExplicitRk4);
    const auto res = simulate(s0, m);
    const double e0 = res.records.front().energy.total;
    double worst = 0.0;
    for (const auto& r : res.records) worst = std::max(worst, std::abs(r.energy.total - e0) / e0);
    drift.push_back(worst);
  }
  INFO("drift " << drift[0] << " -> " << drift[1]);
  CHECK(drift[0] <= 1e-8);
  CHECK(drift[1] <= 1e-8);
}

TEST_CASE("small-amplitude run at preset resolution keeps the energy inequality" * doctest::timeout(300)) {
  const auto g = Grid::make(64, 64, 16);
  const double eps = 0.1;
  const auto f = synthesize(g, {parse_mode("r 0.1 cos 1 0 0"), parse_mode("r 0.05 cos 1 2 1"),
                                parse_mode("u2 0.05 sin 1 0 0")});
  const auto d = init_ill_prepared(f.r0, f.u0, eps, PressureLaw(2.0), 0.1);
  const auto model = make_model(eps, 0.1, 5e-3, 0.5, RotationKind::SmoothNondeg, g);
  const auto res = simulate(d.state, model);
  const auto led = energy_ledger(res.records, 0.1, 1e-3);
  CHECK(led.energy_pass);
  CHECK(led.max_energy_residual <= 1e-3);
  for (std::size_t i = 1; i < res.records.size(); ++i)
    CHECK(res.records[i].energy.total <= res.records[i - 1].energy.total * (1.0 + 1e-3));
  CHECK(res.max_mass_drift <= 1e-10);
}

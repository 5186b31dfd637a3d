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

#include "doctest.h"
#include "rotcap/error.hpp"
#include "rotcap/spectral/littlewood_paley.hpp"
#include "rotcap/spectral/operators.hpp"
#include "rotcap/zygmund/commutator.hpp"
#include "rotcap/zygmund/corpus.hpp"
#include "rotcap/zygmund/regularity.hpp"

using namespace rotcap;
using namespace rotcap::spectral;
using namespace rotcap::zygmund;

namespace {

// Direct quadrature of ∫_s^∞ σ⁻²Γ(σ)dσ · s/Γ(s) on a truncated range.
double direct_ratio(const Modulus& mu, double s) {
  auto f = [&](double sigma) { return mu.gamma(sigma) / (sigma * sigma); };
  double total = 0.0;
  for (double a = s; a < s * 1e12; a *= 4.0) total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, 4.0 * a);
  return total * s / mu.gamma(s);
}

// Kernel form Σ_y K(x−y) f(y)(a(y) − a(x)) with K the periodic kernel of
// θ(λ⁻¹D) on the grid, evaluated by direct summation.
std::vector<double> kernel_commutator(const LpProfile& p, const SpectralField& a, const SpectralField& f,
                                      double lambda) {
  const Grid& g = *a.grid();
  const int n = g.n1();
  std::vector<double> K(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int k = -n / 2; k < n / 2; ++k) {
      const double sym = k == -n / 2 ? 0.0 : p.chi(std::abs(k) / lambda);
      s += sym * std::cos(2.0 * kPi * k * x / n);
    }
    K[x] = s / n;
  }
  auto av = a.physical();
  auto fv = f.physical();
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out[x] += K[(x - y + n) % n] * fv[y] * (av[y] - av[x]);
  return out;
}

}  // namespace

TEST_CASE("admissibility certificates") {
  auto lip = admissibility_check(Modulus::lipschitz());
  CHECK(lip.admissible);
  CHECK(lip.worst_constant == doctest::Approx(1.0).epsilon(1e-8));

  auto h = admissibility_check(Modulus::holder(0.5));
  CHECK(h.admissible);
  CHECK(h.worst_constant == doctest::Approx(2.0).epsilon(1e-8));

  // For u ≤ 1/e the ratio is 1 + 1/|log u|; above, 3 + log u. The peak is 3 at u = 1.
  auto ll = admissibility_check(Modulus::log_lipschitz());
  CHECK(ll.admissible);
  CHECK(ll.worst_constant == doctest::Approx(3.0).epsilon(1e-6));
  for (double s : {1.0, 3.0, 50.0, 1e4}) {
    CHECK(admissibility_ratio(Modulus::log_lipschitz(), 1.0 / s) ==
          doctest::Approx(direct_ratio(Modulus::log_lipschitz(), s)).epsilon(1e-6));
  }

  auto bad = admissibility_check(Modulus("wavy", [](double s) { return std::sin(5.0 * s); }));
  CHECK_FALSE(bad.admissible);
  CHECK_FALSE(bad.modulus_monotone);
}

TEST_CASE("modulus derived functions") {
  auto mu = Modulus::holder(0.5);
  CHECK(mu.gamma(4.0) == doctest::Approx(2.0));
  CHECK(mu(2.0) == doctest::Approx(1.0));
  CHECK(mu(0.0) == 0.0);
  CHECK(mu.tilde(0.25) == doctest::Approx(0.5 * std::log(5.0)));
}

TEST_CASE("translate matches sampled shift") {
  auto g = Grid::make(64, 32);
  auto f = SpectralField::sample(g, [](double x, double y, double) { return std::sin(3 * x) * std::cos(2 * y) + std::cos(x + y); });
  auto ref = SpectralField::sample(g, [](double x, double y, double) {
    return std::sin(3 * (x + 0.3)) * std::cos(2 * (y - 0.7)) + std::cos(x + 0.3 + y - 0.7);
  });
  CHECK(max_abs(translate(f, 0.3, -0.7) - ref) < 1e-13);
}

TEST_CASE("Zygmund seminorm examples") {
  auto g = Grid::make(4096);
  auto mu = Modulus::lipschitz();
  CHECK(zmu_seminorm(SpectralField::constant(g, 2.0), mu) < 1e-13);
  CHECK(zmu_seminorm(tent(g), mu) == doctest::Approx(2.0).epsilon(0.01));
  auto g8 = Grid::make(8192);
  for (int J : {6, 8, 10}) {
    const double z = zmu_seminorm(weierstrass(g8, J), mu);
    CHECK(z > 1.0);
    CHECK(z <= 8.0);
  }
  // More ladder levels can only raise the sampled supremum.
  auto w = weierstrass(g8, 8);
  double prev = 0.0;
  for (int L = 1; L <= default_levels(*g8); ++L) {
    const double z = zmu_seminorm(w, mu, L);
    CHECK(z >= prev);
    prev = z;
  }
}

TEST_CASE("Besov norm examples") {
  auto g = Grid::make(1024);
  auto mu = Modulus::lipschitz();
  CHECK(besov_mu_norm(SpectralField::constant(g, 1.5), mu) == doctest::Approx(1.5));
  auto c32 = SpectralField::sample(g, [](double x, double, double) { return std::cos(32 * x); });
  CHECK(besov_mu_norm(c32, mu) == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(lp_block(c32, 5).spectral()[32].real() == doctest::Approx(0.5));
  const double b = besov_mu_norm(weierstrass(g, 8), mu);
  CHECK(b >= 0.5);
  CHECK(b <= 2.0);
}

TEST_CASE("norm equivalence bands on the corpus") {
  auto g = Grid::make(8192);
  auto mu = Modulus::lipschitz();
  for (const auto& e : corpus(g)) {
    CAPTURE(e.name);
    auto r = regularity_report(e.field, mu);
    const double zb = (r.sup_norm + r.zmu_seminorm) / r.besov_mu_norm;
    CHECK(zb >= 1.0 / 20);
    CHECK(zb <= 20.0);
    if (e.regularity != Regularity::Zygmund) {
      const double cb = (r.sup_norm + r.cmu_seminorm) / (r.sup_norm + r.bgamma_norm);
      CHECK(cb >= 1.0 / 20);
      CHECK(cb <= 20.0);
    }
    CHECK(std::isfinite(first_variation_bound(e.field, mu).constant));
  }
}

TEST_CASE("first variation bound") {
  auto g = Grid::make(4096);
  auto mu = Modulus::lipschitz();
  CHECK(first_variation_bound(SpectralField::constant(g, 1.0), mu).constant == 0.0);
  auto s = first_variation_bound(SpectralField::sample(g, [](double x, double, double) { return std::sin(x); }), mu);
  CHECK(s.ratios.back() < s.ratios[1]);
  auto w = first_variation_bound(weierstrass(Grid::make(8192), 10), mu);
  CHECK(w.constant < 10.0);
}

TEST_CASE("commutator exact cases") {
  LpProfile p;
  auto theta = [p](double r) { return p.chi(r); };
  auto g = Grid::make(256);
  auto f = random_band_limited(g, 40, 3);
  CHECK(max_abs(commutator(theta, SpectralField::constant(g, 2.0), f, 8.0)) < 1e-14);

  // cos x · cos kx = (cos(k+1)x + cos(k−1)x)/2, each mode filtered separately.
  const int k = 10;
  const double lambda = 7.0;
  auto a = SpectralField::sample(g, [](double x, double, double) { return std::cos(x); });
  auto fk = SpectralField::sample(g, [](double x, double, double) { return std::cos(k * x); });
  const double tk = p.chi(k / lambda);
  const double tp = p.chi((k + 1) / lambda) - tk;
  const double tm = p.chi((k - 1) / lambda) - tk;
  auto expect = SpectralField::sample(g, [&](double x, double, double) {
    return 0.5 * (tp * std::cos((k + 1) * x) + tm * std::cos((k - 1) * x));
  });
  CHECK(max_abs(commutator(theta, a, fk, lambda) - expect) < 1e-14);

  auto f2 = random_band_limited(g, 40, 4);
  auto lin = commutator(theta, a, 2.0 * f + f2, lambda) - (2.0 * commutator(theta, a, f, lambda) + commutator(theta, a, f2, lambda));
  CHECK(max_abs(lin) < 1e-13);
  CHECK_THROWS_AS(commutator(theta, a, random_band_limited(Grid::make(128), 10, 1), 2.0), GridMismatchError);
}

TEST_CASE("commutator agrees with its kernel form") {
  LpProfile p;
  auto g = Grid::make(64, 1, 1, 1.0);
  const double lambda = 6.0;
  // Band-limited pair so the grid product is exact (no Nyquist content).
  auto a2 = low_pass(tent(g), 4);
  auto f2 = low_pass(random_band_limited(g, 30, 8), 4);
  auto c2 = commutator([p](double r) { return p.chi(r); }, a2, f2, lambda);
  auto ref2 = kernel_commutator(p, a2, f2, lambda);
  double err = 0.0;
  for (int i = 0; i < 64; ++i) err = std::max(err, std::abs(c2.physical()[i] - ref2[i]));
  CHECK(err <= 1e-8);
}

TEST_CASE("Lipschitz commutator decay") {
  LpProfile p;
  auto g = Grid::make(4096);
  DecayOptions o;
  for (int M = 2; M <= 7; ++M) o.lambdas.push_back(std::ldexp(1.0, M));
  o.ensemble = 8;
  auto a = SpectralField::sample(g, [](double x, double, double) { return std::sin(x); });
  auto rep = verify_commutator_decay([p](double r) { return p.chi(r); }, a, o);
  REQUIRE(rep.exponent.has_value());
  CHECK(*rep.exponent == doctest::Approx(-1.0).epsilon(0.15));
  CHECK(rep.pass);

  auto c = verify_commutator_decay([p](double r) { return p.chi(r); }, SpectralField::constant(g, 1.0), o);
  for (const auto& row : c.rows) CHECK(row.ratio < 1e-14);
  CHECK_FALSE(c.exponent.has_value());

  o.ensemble = 0;
  CHECK_THROWS_AS(verify_commutator_decay([p](double r) { return p.chi(r); }, a, o), PreconditionError);
}

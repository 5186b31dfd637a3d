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

// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// here and do not read the thresholds block of the config.
//
//   acceptance <preset.toml> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotcap/geo/qg.hpp"
#include "rotcap/geo/variable.hpp"
#include "rotcap/geo/wave.hpp"
#include "rotcap/harness/config.hpp"
#include "rotcap/harness/suites.hpp"
#include "rotcap/harness/sweep.hpp"
#include "rotcap/spectral/littlewood_paley.hpp"
#include "rotcap/spectral/operators.hpp"

namespace fs = std::filesystem;
using namespace rotcap;
using spectral::Axis;
using spectral::Grid;
using spectral::GridPtr;
using spectral::SpectralField;

namespace {

// Pinned tolerances.
constexpr double kSpectralTol = 1e-10;
constexpr double kExponentTol = 0.15;
constexpr double kGrowthLimit = 2.0;
constexpr double kBand = 20.0;
constexpr double kMassTol = 1e-10;
constexpr double kCoriolisTol = 1e-12;
constexpr double kEnergySlack = 1e-3;
constexpr double kBdKappa = 2.0;
constexpr double kMemberSeconds = 300.0;
constexpr double kSuiteSeconds = 60.0;
constexpr double kSlopeTol = 0.2;
constexpr double kResidualFactor = 1.5;
constexpr double kDecayTol = 1e-12;
constexpr double kDriftTol = 1e-6;
constexpr double kIdentityTol = 1e-4;
constexpr double kRoundTripTol = 1e-9;
constexpr double kReductionTol = 1e-10;

struct Line {
  int id;
  bool pass;
  std::string text;
};

std::vector<Line> g_lines;

void report(int id, bool pass, const std::string& text) {
  g_lines.push_back({id, pass, text});
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << text << std::endl;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(const SpectralField& a, const SpectralField& b) {
  const double n = spectral::l2_norm(b);
  return spectral::l2_norm(a - b) / (n > 0.0 ? n : 1.0);
}

// Eighth-order central difference of an analytic function at (x, y).
double fd8(const std::function<double(double, double)>& f, double x, double y, Axis axis, double h) {
  static const double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double s = 0.0;
  for (int j = 1; j <= 4; ++j) {
    const double d = j * h;
    s += axis == Axis::X1 ? w[j - 1] * (f(x + d, y) - f(x - d, y)) : w[j - 1] * (f(x, y + d) - f(x, y - d));
  }
  return s / h;
}

// ---------------------------------------------------------------- 1
void criterion_spectral() {
  const auto t0 = std::chrono::steady_clock::now();
  double parseval = 0.0, deriv = 0.0, lp = 0.0;
  const spectral::LpProfile profile;
  const std::function<double(double, double)> fn = [](double x, double y) {
    return std::exp(std::sin(x) + 0.5 * std::cos(y));
  };
  for (const GridPtr& g : {Grid::make(256), Grid::make(64, 64)}) {
    const bool planar = g->active(Axis::X2);
    for (std::uint64_t seed : {3u, 4u}) {
      const SpectralField r = spectral::random_band_limited(g, planar ? 30.0 : 120.0, seed);
      parseval = std::max(parseval, std::abs(spectral::l2_norm(r) - spectral::spectral_l2_norm(r)) / spectral::l2_norm(r));
      SpectralField sum = spectral::lp_block(r, -1, profile);
      for (int j = 0; j <= spectral::max_block(*g, profile); ++j) sum += spectral::lp_block(r, j, profile);
      lp = std::max(lp, rel(sum, r));
    }
    const auto f1 = [&](double x, double y) { return planar ? fn(x, y) : fn(x, 0.0); };
    const SpectralField f = SpectralField::sample(g, [&](double x, double y, double) { return f1(x, y); });
    for (Axis a : planar ? std::vector<Axis>{Axis::X1, Axis::X2} : std::vector<Axis>{Axis::X1}) {
      const SpectralField d = spectral::diff(f, a);
      const SpectralField oracle = SpectralField::sample(
          g, [&](double x, double y, double) { return fd8(f1, x, y, a, 1e-2); });
      deriv = std::max(deriv, rel(d, oracle));
    }
  }
  const bool pass = parseval <= kSpectralTol && deriv <= kSpectralTol && lp <= kSpectralTol;
  report(1, pass,
         "spectral identities on 256 and 64^2: Parseval " + fmt(parseval) + ", derivative vs 8th-order FD " +
             fmt(deriv) + ", LP reconstruction " + fmt(lp) + " (tol " + fmt(kSpectralTol) + ", " +
             fmt(seconds_since(t0)) + " s)");
}

harness::AnalysisConfig analysis() {
  harness::AnalysisConfig a;
  a.n = 4096;
  a.m_min = 2;
  a.m_max = 8;
  a.ensemble = 32;
  a.band = kBand;
  a.exponent_tolerance = kExponentTol;
  a.growth_limit = kGrowthLimit;
  return a;
}

// ---------------------------------------------------------------- 2
void criterion_commutator(std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto suite = harness::run_commutator_suite(analysis(), seed);
  const double secs = seconds_since(t0);
  double worst_exp = 0.0, worst_growth = 0.0;
  bool cases_pass = true;
  for (const auto& c : suite.cases) {
    if (c.check == harness::CaseCheck::Exponent) {
      worst_exp = std::max(worst_exp, c.report.exponent ? std::abs(*c.report.exponent + 1.0) : 1e9);
      cases_pass = cases_pass && c.report.exponent && std::abs(*c.report.exponent + 1.0) <= kExponentTol;
    }
    if (c.check == harness::CaseCheck::Growth) {
      worst_growth = std::max(worst_growth, c.report.growth);
      cases_pass = cases_pass && c.report.growth <= kGrowthLimit;
    }
    if (c.check == harness::CaseCheck::Zero) cases_pass = cases_pass && c.pass;
  }
  report(2, cases_pass && secs < kSuiteSeconds,
         "commutator decay, M = 2..8, theta in {chi, phi}: worst |exponent + 1| on the Lipschitz corpus " +
             fmt(worst_exp) + " (tol " + fmt(kExponentTol) + "), worst Zygmund constant growth " +
             fmt(worst_growth) + " (limit " + fmt(kGrowthLimit) + "), " + fmt(secs) + " s");
}

// ---------------------------------------------------------------- 3
void criterion_norms() {
  const auto suite = harness::run_norm_suite(analysis());
  double lo = 1e300, hi = 0.0, c_max = 0.0;
  bool finite = true;
  for (const auto& c : suite.cases) {
    lo = std::min(lo, c.ratio);
    hi = std::max(hi, c.ratio);
    c_max = std::max(c_max, c.first_variation);
    finite = finite && std::isfinite(c.first_variation);
  }
  const bool pass = lo >= 1.0 / kBand && hi <= kBand && finite;
  report(3, pass,
         "Z_mu vs Besov ratio over the corpus in [" + fmt(lo) + ", " + fmt(hi) + "] (band [1/" + fmt(kBand) + ", " +
             fmt(kBand) + "]), first-variation C_a max " + fmt(c_max));
}

// ---------------------------------------------------------------- 4, 5, 8
void criteria_sweep(const harness::SweepReport& rep) {
  bool pass4 = rep.members.size() >= 3;
  double mass = 0.0, cor = 0.0, slack = 0.0, bd = 0.0, secs = 0.0;
  for (const auto& m : rep.members) {
    mass = std::max(mass, m.max_mass_drift);
    cor = std::max(cor, m.max_coriolis);
    slack = std::max(slack, m.ledger.max_energy_residual);
    bd = std::max(bd, m.ledger.bd_max_ratio);
    secs = std::max(secs, m.seconds);
    pass4 = pass4 && m.completed && m.max_mass_drift <= kMassTol && m.max_coriolis <= kCoriolisTol &&
            m.ledger.max_energy_residual <= kEnergySlack && m.ledger.bd_max_ratio <= 1.0 &&
            m.seconds <= kMemberSeconds;
  }
  report(4, pass4,
         "NSK ledgers over the preset sweep: mass drift " + fmt(mass) + " (tol " + fmt(kMassTol) +
             "), Coriolis work " + fmt(cor) + " (tol " + fmt(kCoriolisTol) + "), energy slack " + fmt(slack) +
             " (tol " + fmt(kEnergySlack) + "), BD over C(1+t) " + fmt(bd) + " (<= 1, kappa " + fmt(kBdKappa) +
             "), slowest member " + fmt(secs) + " s");

  std::string eps, dev, res;
  for (const auto& m : rep.members) {
    eps += (eps.empty() ? "" : ", ") + fmt(m.epsilon);
    dev += (dev.empty() ? "" : ", ") + fmt(m.sup_density_deviation);
    res += (res.empty() ? "" : ", ") + fmt(m.final_kernel.geostrophic);
  }
  bool slope_ok = false;
  double slope = std::nan("");
  std::vector<std::pair<double, double>> pts;
  for (const auto& m : rep.members) {
    if (m.completed && m.sup_density_deviation > 0.0) pts.emplace_back(m.epsilon, m.sup_density_deviation);
  }
  if (pts.size() == rep.members.size() && pts.size() >= 3) {
    slope = io::slope_fit(pts).slope;
    slope_ok = std::abs(slope - 1.0) <= kSlopeTol;
  }
  const double evolved = rep.slope_evolved ? rep.slope_evolved->slope : std::nan("");
  bool trend_ok = rep.complete && rep.members.size() >= 2;
  for (std::size_t i = 1; trend_ok && i < rep.members.size(); ++i) {
    trend_ok = rep.members[i].final_kernel.geostrophic <=
               kResidualFactor * rep.members[i - 1].final_kernel.geostrophic;
  }
  trend_ok = trend_ok && rep.members.back().final_kernel.geostrophic < rep.members.front().final_kernel.geostrophic;
  report(5, slope_ok && trend_ok,
         "eps = {" + eps + "}: slope of sup_t ||rho - 1||_2 " + fmt(slope) + " (1 +- " + fmt(kSlopeTol) +
             ", " + (slope_ok ? "ok" : "out") + "; over t > 0 only " + fmt(evolved) + "); geostrophic residual at T {" + res + "} (" +
             (trend_ok ? "decreasing" : "not decreasing") + " up to factor " + fmt(kResidualFactor) + ")");

  std::string fil;
  bool monotone = true;
  for (std::size_t i = 0; i < rep.members.size(); ++i) {
    const auto& m = rep.members[i];
    const double v = m.comparison ? m.comparison->mean_averaged : std::nan("");
    fil += (fil.empty() ? "" : ", ") + fmt(v);
    if (i > 0) {
      const auto& p = rep.members[i - 1];
      monotone = monotone && m.comparison && p.comparison &&
                 m.comparison->mean_averaged <= p.comparison->mean_averaged;
    }
  }
  const auto& first = rep.members.front();
  const auto& last = rep.members.back();
  const bool strict = first.comparison && last.comparison &&
                      last.comparison->mean_averaged < first.comparison->mean_averaged;
  report(8, strict,
         "filtered discrepancy vs the " + std::string(harness::to_string(rep.limit.axis)) +
             "-axis limit, time-averaged {" + fil + "}: " + (monotone ? "non-increasing" : "not monotone") +
             ", strict decrease largest to smallest eps " + (strict ? "yes" : "no"));
}

// ---------------------------------------------------------------- 6
void criterion_limit_solvers() {
  using namespace geo;
  const auto h = Grid::make(64, 64);
  const auto c = RotationProfile::make(nsk::RotationKind::SmoothNondeg, h);

  // Single mode: the Jacobian vanishes and each step is the exact decay.
  const double nu = 0.1, dt = 1e-3;
  QgState s{SpectralField::sample(h, [](double x, double y, double) { return 0.1 * std::cos(2.0 * x + y); }), 0.0};
  const double factor = std::exp(-qg_decay_rate(nu, 5.0) * dt);
  double decay = 0.0;
  for (int i = 0; i < 100; ++i) {
    const QgState n = qg_step_const(s, nu, dt);
    decay = std::max(decay, rel(n.r, factor * s.r));
    s = n;
  }

  // Inviscid energy over T = 1.
  const SpectralField r0 = 0.05 * spectral::random_band_limited(h, 5.0, 21);
  QgState q{r0, 0.0};
  const double e0 = qg_energy_const(r0);
  double drift = 0.0;
  for (int i = 0; i < 1000; ++i) {
    q = qg_step_const(q, 0.0, dt);
    drift = std::max(drift, std::abs(qg_energy_const(q.r) - e0) / e0);
  }

  // Variable axis: discrete energy identity per step.
  QgState v{spectral::random_band_limited(h, 6.0, 41), 0.0};
  double identity = 0.0;
  for (int i = 0; i < 20; ++i) {
    const QgState n = qg_step_var(v, c, nu, 0.01);
    const double de = (qg_energy_var(n.r, c) - qg_energy_var(v.r, c)) / 0.01;
    const double diss = nu * qg_dissipation_var(0.5 * (v.r + n.r), c);
    identity = std::max(identity, std::abs(de + diss) / diss);
    v = n;
  }

  // Mass operator round trip.
  double round = 0.0;
  for (std::uint64_t seed : {4u, 5u, 6u}) {
    const SpectralField x = spectral::random_band_limited(h, 10.0, seed);
    const SpectralField mx = apply_mass_operator(x, c);
    const SpectralField back = solve_mass_operator(mx, c);
    round = std::max(round, rel(apply_mass_operator(back, c), mx));
  }
  const bool pass = decay <= kDecayTol && drift <= kDriftTol && identity <= kIdentityTol && round <= kRoundTripTol;
  report(6, pass,
         "limit solvers: single-mode decay per step " + fmt(decay) + " (tol " + fmt(kDecayTol) +
             "), inviscid E_QG drift over T=1 " + fmt(drift) + " (tol " + fmt(kDriftTol) +
             "), variable-axis energy identity " + fmt(identity) + " (tol " + fmt(kIdentityTol) +
             "), mass round-trip residual " + fmt(round) + " (tol " + fmt(kRoundTripTol) + ")");
}

// ---------------------------------------------------------------- 7
void criterion_reductions() {
  using namespace geo;
  const auto h = Grid::make(64, 64);
  const auto one = RotationProfile::make(nsk::RotationKind::Constant, h);
  double op = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const SpectralField f = spectral::random_band_limited(h, 12.0, seed);
    op = std::max(op, rel(transpose_dc_dc(f, one), 0.5 * bilaplacian_h(f)));
  }
  // Solenoidal u0 = ∇⊥ψ with a random stream function.
  double forms = 0.0;
  for (std::uint64_t seed : {7u, 8u}) {
    const SpectralField r0 = spectral::random_band_limited(h, 8.0, seed);
    const SpectralField psi = spectral::random_band_limited(h, 8.0, seed + 100);
    const spectral::VecField u{-1.0 * spectral::diff(psi, Axis::X2), spectral::diff(psi, Axis::X1)};
    const SpectralField a = reconstruct_limit_datum(r0, u, one, LimitForm::Constant);
    const SpectralField b = reconstruct_limit_datum(r0, u, one, LimitForm::Variable);
    forms = std::max(forms, rel(b, a));
  }
  report(7, op <= kReductionTol && forms <= kReductionTol,
         "c = 1 reductions: tD_cD_c vs (1/2)Lap_h^2 " + fmt(op) + ", reconstruction forms " + fmt(forms) + " (tol " +
             fmt(kReductionTol) + ")");
}

// ---------------------------------------------------------------- 9
void criterion_reproducibility(const harness::SweepReport& a, const harness::SweepReport& b) {
  const auto ja = nlohmann::json::parse(std::ifstream(a.manifest_path));
  const auto jb = nlohmann::json::parse(std::ifstream(b.manifest_path));
  const bool same_list = ja["outputs"] == jb["outputs"];
  const bool same_digest = a.outputs_digest == b.outputs_digest;
  report(9, same_list && same_digest,
         "two preset sweeps with identical config: " + std::to_string(ja["outputs"].size()) + " output hashes " +
             (same_list ? "identical" : "differ") + ", digest " + a.outputs_digest.substr(0, 16) +
             (same_digest ? " == " : " != ") + b.outputs_digest.substr(0, 16));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <preset.toml> <scratch-dir>\n";
    return 3;
  }
  const fs::path base = argv[2];
  harness::Config cfg = harness::load_config(argv[1]);
  cfg.thresholds.energy_slack = kEnergySlack;
  cfg.thresholds.bd_kappa = kBdKappa;
  cfg.validate_sweep();

  criterion_spectral();
  criterion_commutator(cfg.seed);
  criterion_norms();

  cfg.experiment.output_dir = (base / "run_a").string();
  fs::remove_all(cfg.experiment.output_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const auto run_a = harness::run_sweep(cfg);
  std::cout << "      preset sweep A: " << fmt(seconds_since(t0)) << " s on " << run_a.workers << " worker(s)"
            << std::endl;
  criteria_sweep(run_a);

  criterion_limit_solvers();
  criterion_reductions();

  cfg.experiment.output_dir = (base / "run_b").string();
  fs::remove_all(cfg.experiment.output_dir);
  const auto run_b = harness::run_sweep(cfg, run_a.workers);
  criterion_reproducibility(run_a, run_b);

  std::sort(g_lines.begin(), g_lines.end(), [](const Line& x, const Line& y) { return x.id < y.id; });
  int failed = 0;
  std::cout << "\nsummary:\n";
  for (const auto& l : g_lines) {
    std::cout << "  " << l.id << " " << (l.pass ? "PASS" : "FAIL") << "\n";
    failed += l.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criterion/criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}

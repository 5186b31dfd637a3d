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

#include "rotcap/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "rotcap/error.hpp"
#include "rotcap/geo/qg.hpp"
#include "rotcap/geo/variable.hpp"
#include "rotcap/io/format.hpp"
#include "rotcap/io/manifest.hpp"
#include "rotcap/io/series.hpp"
#include "rotcap/io/snapshot.hpp"
#include "rotcap/spectral/operators.hpp"

#ifndef ROTCAP_VERSION
#define ROTCAP_VERSION "unknown"
#endif

namespace rotcap::harness {

namespace fs = std::filesystem;
using spectral::Grid;
using spectral::SpectralField;

namespace {

const std::vector<std::string> kSeriesColumns = {
    "t",          "E_internal", "E_cold",        "E_kinetic",  "E_capillary",     "E_total",
    "F_bd",       "viscous_rate", "bd_rate",     "viscous_integral", "energy_residual", "mass",
    "coriolis_relative", "parity", "rho_min",    "rho_dev_l2"};

const std::vector<std::string> kKernelColumns = {"t",          "div_h",          "vertical_velocity",
                                                 "vertical_variance", "geostrophic", "axis_alignment",
                                                 "rho_dev_l2", "rho_dev_linf"};

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json kernel_json(const geo::KernelResidual& k) {
  return {{"div_h", k.div_h},
          {"vertical_velocity", k.vertical_velocity},
          {"vertical_variance", k.vertical_variance},
          {"geostrophic", k.geostrophic},
          {"axis_alignment", k.axis_alignment}};
}

io::Snapshot nsk_snapshot(const nsk::NskState& s, const Config& c, double epsilon) {
  io::Snapshot snap;
  snap.epsilon = epsilon;
  snap.nu = c.physics.nu;
  snap.gamma = c.physics.gamma;
  snap.scheme = nsk::to_string(c.scheme.integrator);
  snap.time = s.t;
  snap.add("rho", s.rho);
  snap.add("m1", s.m[0]);
  snap.add("m2", s.m[1]);
  snap.add("m3", s.m[2]);
  return snap;
}

io::TimeSeries step_series(const std::vector<nsk::StepRecord>& records, double nu) {
  io::TimeSeries ts(kSeriesColumns);
  double integral = 0.0;
  const double e0 = records.empty() ? 0.0 : records.front().energy.total;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (i > 0) {
      const auto& q = records[i - 1];
      integral += 0.5 * nu * (r.t - q.t) * (r.viscous_rate + q.viscous_rate);
    }
    ts.add_row({r.t, r.energy.internal, r.energy.cold, r.energy.kinetic, r.energy.capillary, r.energy.total, r.bd,
                r.viscous_rate, r.bd_rate, integral, r.energy.total + integral - e0, r.mass, r.coriolis_relative,
                r.parity, r.rho_min, r.density_deviation});
  }
  return ts;
}

nsk::Model make_model(const Config& c, double epsilon, const spectral::GridPtr& grid) {
  nsk::SimParams p;
  p.epsilon = epsilon;
  p.nu = c.physics.nu;
  p.t_final = c.scheme.t_final;
  p.scheme = c.scheme.integrator;
  p.rho_min = c.physics.rho_min;
  p.dt = c.scheme.dt.value_or(1e-3);
  return {p, nsk::RotationProfile::make(c.physics.rotation, grid), nsk::PressureLaw(c.physics.gamma)};
}

std::string member_dir(double epsilon) { return "eps_" + io::format_double(epsilon); }

}  // namespace

nlohmann::json MemberOutcome::to_json() const {
  nlohmann::json j;
  j["epsilon"] = epsilon;
  j["completed"] = completed;
  j["error"] = error;
  j["dt"] = dt;
  j["steps"] = steps;
  j["final_time"] = final_time;
  j["sup_density_deviation"] = sup_density_deviation;
  j["sup_density_deviation_evolved"] = sup_density_deviation_evolved;
  j["sup_density_linf"] = sup_density_linf;
  j["final_kernel"] = kernel_json(final_kernel);
  j["ledger"] = {{"energy_pass", ledger.energy_pass},
                 {"bd_pass", ledger.bd_pass},
                 {"tol_energy", ledger.tol_energy},
                 {"max_energy_residual", ledger.max_energy_residual},
                 {"min_energy_residual", ledger.min_energy_residual},
                 {"bd_constant", ledger.bd_constant},
                 {"bd_max_ratio", ledger.bd_max_ratio},
                 {"first_energy_violation", opt_json(ledger.first_energy_violation)},
                 {"first_bd_violation", opt_json(ledger.first_bd_violation)}};
  j["max_mass_drift"] = max_mass_drift;
  j["max_coriolis"] = max_coriolis;
  j["mass_pass"] = mass_pass;
  j["coriolis_pass"] = coriolis_pass;
  if (comparison) {
    j["filtered"] = {{"mean_discrepancy", comparison->mean_discrepancy},
                     {"mean_averaged", comparison->mean_averaged}};
  } else {
    j["filtered"] = nullptr;
  }
  j["files"] = files;
  return j;
}

nlohmann::json LimitOutcome::to_json() const {
  return {{"axis", to_string(axis)},       {"completed", completed},
          {"error", error},                {"dt", dt},
          {"steps", steps},                {"initial_energy", initial_energy},
          {"final_energy", final_energy},  {"max_iterations", max_iterations},
          {"files", files}};
}

nlohmann::json SweepReport::summary() const {
  nlohmann::json j;
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : members) ms.push_back(m.to_json());
  j["members"] = ms;
  j["limit"] = limit.to_json();
  if (slope) {
    j["slope"] = {{"slope", slope->slope}, {"intercept", slope->intercept}, {"residual", slope->residual}};
  } else {
    j["slope"] = nullptr;
  }
  j["slope_evolved"] = slope_evolved ? nlohmann::json(slope_evolved->slope) : nlohmann::json(nullptr);
  j["residuals"] = residuals;
  j["filtered"] = filtered;
  j["checks"] = {{"slope", slope_pass},
                 {"residual_trend", residual_pass},
                 {"filtered_monotone", filtered_monotone},
                 {"filtered_trend", filtered_pass},
                 {"ledger", ledger_pass},
                 {"complete", complete},
                 {"pass", pass}};
  return j;
}

int resolve_workers() {
  if (const char* env = std::getenv("ROTCAP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

LimitAxis resolve_axis(const Config& config) {
  const bool constant = config.physics.rotation == nsk::RotationKind::Constant;
  switch (config.limit.axis) {
    case LimitAxis::Auto: return constant ? LimitAxis::Constant : LimitAxis::Variable;
    case LimitAxis::Constant:
      if (!constant) throw ConfigError("limit.axis", "the constant-axis limit needs physics.rotation = CONSTANT");
      return LimitAxis::Constant;
    case LimitAxis::Variable: return LimitAxis::Variable;
  }
  return LimitAxis::Variable;
}

MemberOutcome run_member(const Config& c, double epsilon, const fs::path& dir, const std::string& relative) {
  const auto start = std::chrono::steady_clock::now();
  MemberOutcome out;
  out.epsilon = epsilon;
  const fs::path here = dir / relative;
  fs::create_directories(here);
  auto grid = Grid::make(c.grid.nx, c.grid.ny, c.grid.nz, c.grid.dealias);

  std::vector<nsk::StepRecord> records;
  io::TimeSeries kernel(kKernelColumns);
  std::optional<nsk::NskState> last;
  int count = 0;
  int sampled_at = -1;

  auto finish_files = [&](const char* snap_name) {
    step_series(records, c.physics.nu).write_csv(here / "series.csv");
    out.files.push_back(relative + "/series.csv");
    kernel.write_csv(here / "kernel.csv");
    out.files.push_back(relative + "/kernel.csv");
    if (c.experiment.snapshots && last) {
      io::write_snapshot(here / snap_name, nsk_snapshot(*last, c, epsilon));
      out.files.push_back(relative + "/" + snap_name);
    }
  };

  try {
    nsk::Model model = make_model(c, epsilon, grid);
    const auto fields = nsk::synthesize(grid, c.mode_specs());
    const auto datum = nsk::init_ill_prepared(fields.r0, fields.u0, epsilon, model.pressure, c.physics.nu,
                                              c.physics.rho_min);
    if (!c.scheme.dt) model.params.dt = c.scheme.cfl * nsk::max_stable_dt(datum.state, model).dt;
    out.dt = model.params.dt;
    const SpectralField one = SpectralField::constant(grid, 1.0);

    auto sample = [&](const nsk::NskState& s, const nsk::StepRecord& rec) {
      const SpectralField r = s.r(epsilon);
      const auto kr = geo::kernel_residual(r, s.velocity(), model.rotation);
      const double linf = spectral::max_abs(s.rho - one);
      kernel.add_row({s.t, kr.div_h, kr.vertical_velocity, kr.vertical_variance, kr.geostrophic, kr.axis_alignment,
                      rec.density_deviation, linf});
      out.final_kernel = kr;
      out.sup_density_linf = std::max(out.sup_density_linf, linf);
      out.samples.push_back({s.t, spectral::vertical_mean(r)});
      sampled_at = count;
    };

    records.push_back(nsk::record(datum.state, model));
    last = datum.state;
    sample(datum.state, records.back());

    nsk::RunOptions opts;
    opts.observer = [&](const nsk::NskState& s, const nsk::StepRecord& rec) {
      ++count;
      records.push_back(rec);
      last = s;
      if (count % c.experiment.sample_every == 0) sample(s, rec);
    };
    const nsk::RunResult res = nsk::simulate(datum.state, model, opts);
    if (sampled_at != count) sample(res.final_state, records.back());
    out.steps = res.steps;
    out.completed = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }

  out.steps = count;
  out.final_time = records.empty() ? 0.0 : records.back().t;
  if (!records.empty()) {
    const double mass0 = records.front().mass;
    for (const auto& r : records) {
      out.sup_density_deviation = std::max(out.sup_density_deviation, r.density_deviation);
      if (r.t > 0.0) {
        out.sup_density_deviation_evolved = std::max(out.sup_density_deviation_evolved, r.density_deviation);
      }
      out.max_mass_drift = std::max(out.max_mass_drift, std::abs(r.mass - mass0) / std::abs(mass0));
      out.max_coriolis = std::max(out.max_coriolis, r.coriolis_relative);
    }
    out.ledger = nsk::energy_ledger(records, c.physics.nu, c.thresholds.energy_slack, c.thresholds.bd_kappa);
  }
  out.mass_pass = out.completed && out.max_mass_drift <= c.thresholds.mass_drift;
  out.coriolis_pass = out.completed && out.max_coriolis <= c.thresholds.coriolis;
  finish_files(out.completed ? "final.snap" : "abort.snap");
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

LimitOutcome run_limit(const Config& c, const fs::path& dir, const std::string& relative) {
  LimitOutcome out;
  const fs::path here = dir / relative;
  fs::create_directories(here);
  out.axis = resolve_axis(c);
  const bool constant = out.axis == LimitAxis::Constant;
  io::TimeSeries ts(std::vector<std::string>{"t", "energy", "dissipation", "iterations"});
  std::optional<geo::QgState> state;
  try {
    auto grid = Grid::make(c.grid.nx, c.grid.ny, c.grid.nz, c.grid.dealias);
    const auto rot = nsk::RotationProfile::make(c.physics.rotation, grid);
    const auto fields = nsk::synthesize(grid, c.mode_specs());
    state = geo::QgState{geo::reconstruct_limit_datum(fields.r0, fields.u0, rot,
                                                      constant ? geo::LimitForm::Constant : geo::LimitForm::Variable),
                         0.0};
    const int n = std::max(1, static_cast<int>(std::ceil(c.scheme.t_final / c.limit.dt - 1e-9)));
    out.dt = c.scheme.t_final / n;
    geo::SolverOptions so{c.limit.tolerance, c.limit.max_iterations};

    auto energy = [&](const SpectralField& r) {
      return constant ? geo::qg_energy_const(r) : geo::qg_energy_var(r, rot);
    };
    auto log = [&](int iterations) {
      const double e = energy(state->r);
      ts.add_row({state->t, e, geo::qg_dissipation_var(state->r, rot), static_cast<double>(iterations)});
      out.samples.push_back({state->t, state->r});
      out.final_energy = e;
    };
    log(0);
    out.initial_energy = out.final_energy;
    for (int i = 0; i < n; ++i) {
      geo::SolveStats stats;
      geo::QgState next = constant ? geo::qg_step_const(*state, c.physics.nu, out.dt)
                                   : geo::qg_step_var(*state, rot, c.physics.nu, out.dt, so, &stats);
      next.t = (i + 1) * out.dt;
      state = std::move(next);
      out.max_iterations = std::max(out.max_iterations, stats.iterations);
      ++out.steps;
      log(stats.iterations);
    }
    out.completed = true;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  ts.write_csv(here / "series.csv");
  out.files.push_back(relative + "/series.csv");
  if (c.experiment.snapshots && state) {
    io::Snapshot snap;
    snap.nu = c.physics.nu;
    snap.gamma = c.physics.gamma;
    snap.scheme = constant ? "QG_IFRK4" : "QG_CN";
    snap.time = state->t;
    snap.add("r", state->r);
    const std::string name = out.completed ? "final.snap" : "abort.snap";
    io::write_snapshot(here / name, snap);
    out.files.push_back(relative + "/" + name);
  }
  return out;
}

SweepReport run_sweep(const Config& c, int workers) {
  c.validate_sweep();
  resolve_axis(c);
  SweepReport rep;
  const fs::path dir = c.experiment.output_dir;
  fs::create_directories(dir);
  io::RunManifest manifest;
  manifest.config = c.to_json();
  manifest.code_version = ROTCAP_VERSION;
  manifest.seed = c.seed;
  manifest.started = io::utc_now();

  const auto& eps = c.physics.epsilon;
  rep.workers = std::clamp(workers > 0 ? workers : resolve_workers(), 1, static_cast<int>(eps.size()));
  manifest.workers = rep.workers;
  rep.members.resize(eps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < eps.size(); i = next++) {
      rep.members[i] = run_member(c, eps[i], dir, member_dir(eps[i]));
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < rep.workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  rep.limit = run_limit(c, dir, "limit");

  io::CompareOptions co;
  co.M = c.experiment.filter_M;
  co.window = c.experiment.window;
  for (auto& m : rep.members) {
    if (m.samples.empty() || rep.limit.samples.empty()) continue;
    try {
      m.comparison = io::filtered_compare(m.samples, rep.limit.samples, co);
    } catch (const PreconditionError& e) {
      if (m.error.empty()) m.error = e.what();
      continue;
    }
    const std::string rel = member_dir(m.epsilon) + "/compare.csv";
    io::TimeSeries ts(std::vector<std::string>{"t", "discrepancy", "averaged"});
    for (std::size_t k = 0; k < m.comparison->times.size(); ++k) {
      ts.add_row({m.comparison->times[k], m.comparison->discrepancy[k], m.comparison->averaged[k]});
    }
    ts.write_csv(dir / rel);
    m.files.push_back(rel);
  }

  rep.complete = rep.limit.completed;
  rep.ledger_pass = true;
  for (const auto& m : rep.members) {
    rep.complete = rep.complete && m.completed && m.comparison.has_value();
    rep.ledger_pass = rep.ledger_pass && m.ledger.energy_pass && m.ledger.bd_pass && m.mass_pass && m.coriolis_pass;
    rep.residuals.push_back(m.final_kernel.geostrophic);
    rep.filtered.push_back(m.comparison ? m.comparison->mean_averaged : 0.0);
  }

  // Trend checks run on completed sweeps only; all-zero data passes trivially.
  auto all_zero = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
  };
  std::vector<double> sup_dev;
  for (const auto& m : rep.members) sup_dev.push_back(m.sup_density_deviation);
  if (rep.complete) {
    if (all_zero(sup_dev)) {
      rep.slope_pass = true;
    } else if (std::all_of(sup_dev.begin(), sup_dev.end(), [](double x) { return x > 0.0; })) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < eps.size(); ++i) pts.emplace_back(eps[i], sup_dev[i]);
      rep.slope = io::slope_fit(pts);
      rep.slope_pass = std::abs(rep.slope->slope - c.thresholds.slope_target) <= c.thresholds.slope_tolerance;
      std::vector<std::pair<double, double>> later;
      for (const auto& m : rep.members) {
        if (m.sup_density_deviation_evolved > 0.0) later.emplace_back(m.epsilon, m.sup_density_deviation_evolved);
      }
      if (later.size() == eps.size()) rep.slope_evolved = io::slope_fit(later);
    }

    bool bounded = true;
    for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
      bounded = bounded && rep.residuals[i] <= c.thresholds.residual_factor * rep.residuals[i - 1];
    }
    rep.residual_pass =
        all_zero(rep.residuals) || (bounded && rep.residuals.back() < rep.residuals.front());

    rep.filtered_monotone = true;
    for (std::size_t i = 1; i < rep.filtered.size(); ++i) {
      rep.filtered_monotone = rep.filtered_monotone && rep.filtered[i] <= rep.filtered[i - 1];
    }
    rep.filtered_pass = all_zero(rep.filtered) || rep.filtered.back() < rep.filtered.front();
  }
  rep.pass = rep.complete && rep.ledger_pass && rep.slope_pass && rep.residual_pass && rep.filtered_pass;

  const nlohmann::json summary = rep.summary();
  {
    std::ofstream os(dir / "summary.json", std::ios::binary | std::ios::trunc);
    if (!os) throw Error("run_sweep: cannot write summary.json");
    os << summary.dump(2) << "\n";
  }
  for (const auto& m : rep.members) {
    for (const auto& f : m.files) manifest.add_output(dir, f);
  }
  for (const auto& f : rep.limit.files) manifest.add_output(dir, f);
  manifest.add_output(dir, "summary.json");
  manifest.summary = summary["checks"];
  manifest.finished = io::utc_now();
  rep.outputs_digest = manifest.outputs_digest();
  rep.manifest_path = dir / "manifest.json";
  manifest.write(rep.manifest_path);
  return rep;
}

}  // namespace rotcap::harness

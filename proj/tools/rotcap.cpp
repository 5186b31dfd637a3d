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

// Command-line front end. Exit codes: 0 success, 1 run failure,
// 2 threshold failure (outputs still written), 3 configuration error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rotcap/error.hpp"
#include "rotcap/geo/qg.hpp"
#include "rotcap/geo/variable.hpp"
#include "rotcap/geo/wave.hpp"
#include "rotcap/harness/config.hpp"
#include "rotcap/harness/suites.hpp"
#include "rotcap/harness/sweep.hpp"
#include "rotcap/io/format.hpp"
#include "rotcap/io/manifest.hpp"
#include "rotcap/io/series.hpp"
#include "rotcap/io/snapshot.hpp"
#include "rotcap/nsk/nsk.hpp"
#include "rotcap/spectral/operators.hpp"
#include "rotcap/zygmund/regularity.hpp"

namespace fs = std::filesystem;
using namespace rotcap;
using harness::Config;

namespace {

constexpr int kOk = 0;
constexpr int kRunFailure = 1;
constexpr int kThresholdFailure = 2;
constexpr int kConfigError = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
};

Config load(const Common& c, bool required) {
  Config cfg;
  if (c.config_path.empty()) {
    if (required) throw ConfigError("", "missing config: pass --config <file>");
    harness::TomlDocument doc;
    harness::apply_overrides(doc, c.overrides);
    cfg = harness::config_from_toml(doc);
    cfg.validate();
  } else {
    cfg = harness::load_config(c.config_path, c.overrides);
  }
  if (!c.output_dir.empty()) cfg.experiment.output_dir = c.output_dir;
  return cfg;
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  os << j.dump(2) << "\n";
}

io::RunManifest start_manifest(const Config& cfg) {
  io::RunManifest m;
  m.config = cfg.to_json();
  m.code_version = ROTCAP_VERSION;
  m.seed = cfg.seed;
  m.started = io::utc_now();
  return m;
}

void finish_manifest(io::RunManifest& m, const fs::path& dir, const std::vector<std::string>& files,
                     const nlohmann::json& summary) {
  for (const auto& f : files) m.add_output(dir, f);
  m.summary = summary;
  m.finished = io::utc_now();
  m.write(dir / "manifest.json");
}

int cmd_simulate_nsk(const Common& common, std::optional<double> epsilon) {
  Config cfg = load(common, true);
  const double eps = epsilon.value_or(cfg.physics.epsilon.front());
  const fs::path dir = cfg.experiment.output_dir;
  fs::create_directories(dir);
  auto manifest = start_manifest(cfg);
  const std::string rel = "eps_" + io::format_double(eps);
  const auto out = harness::run_member(cfg, eps, dir, rel);
  const nlohmann::json summary = out.to_json();
  write_json(dir / rel / "summary.json", summary);
  std::vector<std::string> files = out.files;
  files.push_back(rel + "/summary.json");
  finish_manifest(manifest, dir, files, summary);
  print(summary);
  if (!out.completed) return kRunFailure;
  const bool pass = out.ledger.energy_pass && out.ledger.bd_pass && out.mass_pass && out.coriolis_pass;
  return pass ? kOk : kThresholdFailure;
}

int cmd_simulate_qg(const Common& common, const std::string& axis_name) {
  Config cfg = load(common, true);
  const bool constant = axis_name == "constant";
  if (constant) cfg.physics.rotation = nsk::RotationKind::Constant;
  cfg.limit.axis = constant ? harness::LimitAxis::Constant : harness::LimitAxis::Variable;
  const fs::path dir = cfg.experiment.output_dir;
  const std::string rel = std::string("qg_") + axis_name;
  fs::create_directories(dir / rel);
  auto manifest = start_manifest(cfg);

  auto grid = spectral::Grid::make(cfg.grid.nx, cfg.grid.ny, cfg.grid.nz, cfg.grid.dealias);
  const auto rot = nsk::RotationProfile::make(cfg.physics.rotation, grid);
  const auto fields = nsk::synthesize(grid, cfg.mode_specs());
  geo::QgState s{geo::reconstruct_limit_datum(fields.r0, fields.u0, rot,
                                              constant ? geo::LimitForm::Constant : geo::LimitForm::Variable),
                 0.0};
  const int n = std::max(1, static_cast<int>(std::ceil(cfg.scheme.t_final / cfg.limit.dt - 1e-9)));
  const double dt = cfg.scheme.t_final / n;
  const double nu = cfg.physics.nu;
  geo::SolverOptions so{cfg.limit.tolerance, cfg.limit.max_iterations};

  io::TimeSeries ts(std::vector<std::string>{"t", "energy", "dissipation", "step_check"});
  auto energy = [&](const spectral::SpectralField& r) {
    return constant ? geo::qg_energy_const(r) : geo::qg_energy_var(r, rot);
  };
  // Constant axis: r_{n+1} against e^{−λ(k)dt} r_n, exact when the Jacobian
  // vanishes (single modes). Variable axis: the discrete energy identity
  // with the dissipation taken at the Crank–Nicolson midpoint.
  double worst = 0.0;
  double e = energy(s.r);
  ts.add_row({0.0, e, geo::qg_dissipation_var(s.r, rot), 0.0});
  for (int i = 0; i < n; ++i) {
    geo::QgState next = constant ? geo::qg_step_const(s, nu, dt) : geo::qg_step_var(s, rot, nu, dt, so);
    next.t = (i + 1) * dt;
    double check = 0.0;
    const double en = energy(next.r);
    const double dn = geo::qg_dissipation_var(next.r, rot);
    const double dmid = geo::qg_dissipation_var(0.5 * (s.r + next.r), rot);
    if (constant) {
      const auto exact = spectral::apply_multiplier(s.r, [&](double k1, double k2, double) {
        return std::exp(-geo::qg_decay_rate(nu, k1 * k1 + k2 * k2) * dt);
      });
      const double scale = spectral::l2_norm(s.r);
      check = scale > 0.0 ? spectral::l2_norm(next.r - exact) / scale : 0.0;
    } else {
      const double lhs = (en - e) / dt;
      const double rhs = -nu * dmid;
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      check = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
    }
    worst = std::max(worst, check);
    ts.add_row({next.t, en, dn, check});
    s = std::move(next);
    e = en;
  }
  ts.write_csv(dir / rel / "series.csv");
  io::Snapshot snap;
  snap.nu = nu;
  snap.gamma = cfg.physics.gamma;
  snap.scheme = constant ? "QG_IFRK4" : "QG_CN";
  snap.time = s.t;
  snap.add("r", s.r);
  io::write_snapshot(dir / rel / "final.snap", snap);

  const double tol = constant ? 1e-12 : 1e-4;
  const bool pass = worst <= tol;
  const nlohmann::json summary = {{"axis", axis_name},
                                  {"steps", n},
                                  {"dt", dt},
                                  {"check", constant ? "closed_form_decay" : "energy_identity"},
                                  {"worst_step_error", worst},
                                  {"tolerance", tol},
                                  {"initial_energy", ts.rows().front()[1]},
                                  {"final_energy", e},
                                  {"pass", pass}};
  write_json(dir / rel / "summary.json", summary);
  finish_manifest(manifest, dir, {rel + "/series.csv", rel + "/final.snap", rel + "/summary.json"}, summary);
  print(summary);
  return pass ? kOk : kThresholdFailure;
}

int cmd_sweep(const Common& common, int workers) {
  Config cfg = load(common, true);
  const auto rep = harness::run_sweep(cfg, workers);
  nlohmann::json s = rep.summary()["checks"];
  s["outputs_digest"] = rep.outputs_digest;
  s["manifest"] = rep.manifest_path.string();
  s["slope"] = rep.slope ? nlohmann::json(rep.slope->slope) : nlohmann::json(nullptr);
  s["slope_evolved"] = rep.slope_evolved ? nlohmann::json(rep.slope_evolved->slope) : nlohmann::json(nullptr);
  s["residuals"] = rep.residuals;
  s["filtered"] = rep.filtered;
  print(s);
  if (!rep.complete) return kRunFailure;
  return rep.pass ? kOk : kThresholdFailure;
}

int cmd_lp_analyze(const Common& common, const std::string& snapshot, const std::string& field) {
  Config cfg = load(common, false);
  const fs::path dir = fs::path(cfg.experiment.output_dir) / "lp";
  fs::create_directories(dir);
  if (!snapshot.empty()) {
    const auto snap = io::read_snapshot(snapshot);
    auto grid = spectral::Grid::make(snap.dims[0], snap.dims[1], snap.dims[2]);
    const auto f = snap.field(field, grid);
    const auto rep = zygmund::regularity_report(f, zygmund::Modulus::lipschitz());
    io::TimeSeries blocks(std::vector<std::string>{"j", "linf", "l2"});
    for (const auto& b : harness::block_norms(f)) blocks.add_row({double(b.j), b.linf, b.l2});
    blocks.write_csv(dir / "blocks.csv");
    const nlohmann::json j = {{"snapshot", snapshot},       {"field", field},
                              {"cmu_seminorm", rep.cmu_seminorm}, {"zmu_seminorm", rep.zmu_seminorm},
                              {"besov_mu_norm", rep.besov_mu_norm}, {"bgamma_norm", rep.bgamma_norm},
                              {"sup_norm", rep.sup_norm},   {"blocks", rep.blocks}};
    write_json(dir / "summary.json", j);
    print(j);
    return kOk;
  }
  const auto suite = harness::run_norm_suite(cfg.analysis);
  suite.write_csv(dir / "norms.csv");
  write_json(dir / "summary.json", suite.summary());
  print({{"cases", suite.cases.size()}, {"band", suite.band}, {"pass", suite.pass}, {"table", (dir / "norms.csv").string()}});
  return suite.pass ? kOk : kThresholdFailure;
}

int cmd_verify_commutator(const Common& common) {
  Config cfg = load(common, false);
  const fs::path dir = fs::path(cfg.experiment.output_dir) / "commutator";
  fs::create_directories(dir);
  const auto suite = harness::run_commutator_suite(cfg.analysis, cfg.seed);
  suite.write_csv(dir / "rates.csv");
  const nlohmann::json j = suite.summary();
  write_json(dir / "summary.json", j);
  nlohmann::json brief = nlohmann::json::array();
  for (const auto& c : j["cases"]) {
    brief.push_back({{"theta", c["theta"]}, {"function", c["function"]}, {"check", c["check"]},
                     {"exponent", c["exponent"]}, {"growth", c["growth"]}, {"pass", c["pass"]}});
  }
  print({{"cases", brief}, {"pass", suite.pass}, {"table", (dir / "rates.csv").string()}});
  return suite.pass ? kOk : kThresholdFailure;
}

int cmd_reconstruct(const Common& common, const std::string& form_name) {
  Config cfg = load(common, true);
  const fs::path dir = fs::path(cfg.experiment.output_dir) / "datum";
  fs::create_directories(dir);
  auto grid = spectral::Grid::make(cfg.grid.nx, cfg.grid.ny, cfg.grid.nz, cfg.grid.dealias);
  const auto rot = nsk::RotationProfile::make(cfg.physics.rotation, grid);
  const auto fields = nsk::synthesize(grid, cfg.mode_specs());
  geo::LimitForm form = rot.is_constant() ? geo::LimitForm::Constant : geo::LimitForm::Variable;
  if (form_name == "constant") form = geo::LimitForm::Constant;
  if (form_name == "variable") form = geo::LimitForm::Variable;
  if (form == geo::LimitForm::Constant && !rot.is_constant()) {
    throw ConfigError("physics.rotation", "the constant form needs CONSTANT rotation");
  }
  const auto datum = geo::reconstruct_limit_datum(fields.r0, fields.u0, rot, form);
  nlohmann::json j = {{"form", form == geo::LimitForm::Constant ? "constant" : "variable"},
                      {"rotation", rot.name()},
                      {"l2", spectral::l2_norm(datum)},
                      {"max_abs", spectral::max_abs(datum)},
                      {"energy_var", geo::qg_energy_var(datum, rot)}};
  if (rot.is_constant()) {
    const auto other = geo::reconstruct_limit_datum(
        fields.r0, fields.u0, rot,
        form == geo::LimitForm::Constant ? geo::LimitForm::Variable : geo::LimitForm::Constant);
    j["forms_agree"] = spectral::max_abs(datum - other);
  }
  io::Snapshot snap;
  snap.nu = cfg.physics.nu;
  snap.gamma = cfg.physics.gamma;
  snap.scheme = "DATUM";
  snap.add("r", datum);
  io::write_snapshot(dir / "datum.snap", snap);
  write_json(dir / "summary.json", j);
  print(j);
  return kOk;
}

int cmd_diagnose(const std::string& path, double gamma_override) {
  const auto snap = io::read_snapshot(path);
  auto grid = spectral::Grid::make(snap.dims[0], snap.dims[1], snap.dims[2]);
  nlohmann::json j = {{"dims", snap.dims},   {"epsilon", snap.epsilon}, {"nu", snap.nu},
                      {"gamma", snap.gamma}, {"scheme", snap.scheme},   {"time", snap.time},
                      {"fields", snap.names}};
  nlohmann::json norms = nlohmann::json::object();
  for (const auto& name : snap.names) {
    const auto f = snap.field(name, grid);
    norms[name] = {{"l2", spectral::l2_norm(f)}, {"max_abs", spectral::max_abs(f)}, {"integral", spectral::integrate(f)}};
  }
  j["norms"] = norms;
  const auto has = [&](const char* n) { return std::find(snap.names.begin(), snap.names.end(), n) != snap.names.end(); };
  if (has("rho") && has("m1") && has("m2") && has("m3") && snap.epsilon > 0.0 && grid->dimension() == 3) {
    nsk::NskState s;
    s.rho = snap.field("rho", grid);
    s.m = spectral::VecField(snap.field("m1", grid), snap.field("m2", grid), snap.field("m3", grid));
    s.t = snap.time;
    const double gamma = gamma_override > 0.0 ? gamma_override : snap.gamma;
    const auto e = nsk::classical_energy(s, snap.epsilon, nsk::PressureLaw(gamma));
    const auto bd = nsk::bd_entropy(s, snap.nu);
    const auto rot = nsk::RotationProfile::make(nsk::RotationKind::SmoothNondeg, grid);
    const auto rot_c = nsk::RotationProfile::make(nsk::RotationKind::Constant, grid);
    const auto r = s.r(snap.epsilon);
    const auto u = s.velocity();
    const auto k_var = geo::kernel_residual(r, u, rot);
    const auto k_const = geo::kernel_residual(r, u, rot_c);
    j["nsk"] = {{"mass", s.mass()},
                {"density_deviation_l2", spectral::l2_norm(s.rho - spectral::SpectralField::constant(grid, 1.0))},
                {"energy", {{"internal", e.internal}, {"cold", e.cold}, {"kinetic", e.kinetic},
                            {"capillary", e.capillary}, {"total", e.total}}},
                {"bd_entropy", bd.sqrt_form},
                {"geostrophic_residual", {{"SMOOTH_NONDEG", k_var.geostrophic}, {"CONSTANT", k_const.geostrophic}}},
                {"div_h", k_var.div_h},
                {"vertical_velocity", k_var.vertical_velocity}};
  }
  print(j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotcap: rotating Navier-Stokes-Korteweg experiments and Littlewood-Paley analysis"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "Config file (TOML subset)");
    sub->add_option("--set", common.overrides, "Override a config key, dotted.key=value")->take_all();
    sub->add_option("-o,--output", common.output_dir, "Output directory (overrides experiment.output_dir)");
  };

  std::optional<double> epsilon;
  auto* nsk_cmd = app.add_subcommand("simulate-nsk", "One NSK run with the energy and BD ledgers");
  add_common(nsk_cmd);
  nsk_cmd->add_option("--epsilon", epsilon, "epsilon (default: first of physics.epsilon)");

  std::string axis = "constant";
  auto* qg_cmd = app.add_subcommand("simulate-qg", "Limit equation run with its per-step check");
  add_common(qg_cmd);
  qg_cmd->add_option("--axis", axis, "Rotation axis form")->check(CLI::IsMember({"constant", "variable"}));

  int workers = 0;
  auto* sweep_cmd = app.add_subcommand("sweep-epsilon", "Epsilon sweep against the limit solution");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--workers", workers, "Worker threads (default: ROTCAP_WORKERS or hardware)");

  std::string snapshot;
  std::string field = "rho";
  auto* lp_cmd = app.add_subcommand("lp-analyze", "Norm-equivalence suite, or block norms of a snapshot field");
  add_common(lp_cmd);
  lp_cmd->add_option("--snapshot", snapshot, "Analyze a field of this snapshot instead of the corpus");
  lp_cmd->add_option("--field", field, "Field name inside the snapshot");

  auto* comm_cmd = app.add_subcommand("verify-commutator", "Commutator decay suite over the built-in corpus");
  add_common(comm_cmd);

  std::string form = "auto";
  auto* rec_cmd = app.add_subcommand("reconstruct-datum", "Limit initial datum from the configured data");
  add_common(rec_cmd);
  rec_cmd->add_option("--form", form, "Reconstruction form")->check(CLI::IsMember({"auto", "constant", "variable"}));

  std::string diag_path;
  double gamma = 0.0;
  auto* diag_cmd = app.add_subcommand("diagnose", "Print diagnostics of a snapshot");
  diag_cmd->add_option("snapshot", diag_path, "Snapshot file")->required();
  diag_cmd->add_option("--gamma", gamma, "Override the pressure exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*nsk_cmd) return cmd_simulate_nsk(common, epsilon);
    if (*qg_cmd) return cmd_simulate_qg(common, axis);
    if (*sweep_cmd) return cmd_sweep(common, workers);
    if (*lp_cmd) return cmd_lp_analyze(common, snapshot, field);
    if (*comm_cmd) return cmd_verify_commutator(common);
    if (*rec_cmd) return cmd_reconstruct(common, form);
    if (*diag_cmd) return cmd_diagnose(diag_path, gamma);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "run failure: " << e.what() << "\n";
    return kRunFailure;
  }
  return kRunFailure;
}

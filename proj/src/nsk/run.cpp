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

#include "rotcap/nsk/run.hpp"

#include <algorithm>
#include <cmath>

#include "rotcap/spectral/operators.hpp"

namespace rotcap::nsk {

StepRecord record(const NskState& s, const Model& model) {
  const SimParams& p = model.params;
  StepRecord r;
  r.t = s.t;
  r.energy = classical_energy(s, p.epsilon, model.pressure);
  r.bd = bd_entropy(s, p.nu).sqrt_form;
  r.viscous_rate = viscous_dissipation(s);
  r.bd_rate = bd_dissipation(s, p.epsilon, model.pressure);
  r.mass = s.mass();
  const CoriolisWork w = coriolis_work(s, model);
  r.coriolis_relative = w.scale > 0.0 ? std::abs(w.work) / w.scale : 0.0;
  r.parity = parity_residual(s);
  r.rho_min = spectral::min_value(s.rho);
  r.density_deviation = spectral::l2_norm(s.rho - SpectralField::constant(s.grid(), 1.0));
  return r;
}

RunResult simulate(const NskState& initial, const Model& model, const RunOptions& options) {
  model.params.validate();
  Model m = model;
  const double T = model.params.t_final;
  const int steps = T > 0.0 ? static_cast<int>(std::ceil(T / model.params.dt - 1e-9)) : 0;
  m.params.dt = steps > 0 ? T / steps : model.params.dt;

  RunResult out;
  out.dt = m.params.dt;
  NskState s = initial;
  out.records.push_back(record(s, m));
  const double mass0 = out.records.front().mass;
  auto absorb = [&](const StepRecord& r) {
    out.max_mass_drift = std::max(out.max_mass_drift, std::abs(r.mass - mass0) / std::abs(mass0));
    out.max_coriolis_relative = std::max(out.max_coriolis_relative, r.coriolis_relative);
    out.max_parity = std::max(out.max_parity, r.parity);
    out.sup_density_deviation = std::max(out.sup_density_deviation, r.density_deviation);
  };
  absorb(out.records.front());
  for (int i = 0; i < steps; ++i) {
    s = step(s, m);
    s.t = (i + 1) * m.params.dt;
    out.records.push_back(record(s, m));
    absorb(out.records.back());
    if (options.observer) options.observer(s, out.records.back());
  }
  out.steps = steps;
  out.final_state = std::move(s);
  return out;
}

LedgerReport energy_ledger(const std::vector<StepRecord>& records, double nu, double tol_energy, double kappa) {
  LedgerReport rep;
  rep.tol_energy = tol_energy;
  if (records.empty()) {
    rep.energy_pass = rep.bd_pass = true;
    return rep;
  }
  const double E0 = records.front().energy.total;
  const double F0 = records.front().bd;
  const double T = records.back().t - records.front().t;
  rep.bd_constant = kappa * (E0 + F0);
  const double scale = E0 > 0.0 ? E0 : 1.0;
  double visc = 0.0;
  double bdint = 0.0;
  rep.energy_pass = true;
  rep.bd_pass = true;
  rep.max_energy_residual = -std::numeric_limits<double>::infinity();
  rep.min_energy_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const StepRecord& r = records[i];
    if (i > 0) {
      const StepRecord& q = records[i - 1];
      const double h = r.t - q.t;
      visc += 0.5 * h * (q.viscous_rate + r.viscous_rate);
      bdint += 0.5 * h * (q.bd_rate + r.bd_rate);
    }
    const double resid = (r.energy.total + nu * visc - E0) / scale;
    rep.max_energy_residual = std::max(rep.max_energy_residual, resid);
    rep.min_energy_residual = std::min(rep.min_energy_residual, resid);
    if (resid > tol_energy && !rep.first_energy_violation) {
      rep.first_energy_violation = r.t;
      rep.energy_pass = false;
    }
    const double lhs = r.bd + nu * bdint;
    const double bound = rep.bd_constant * (1.0 + T);
    const double ratio = bound > 0.0 ? lhs / bound : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.bd_max_ratio = std::max(rep.bd_max_ratio, ratio);
    if (ratio > 1.0 && !rep.first_bd_violation) {
      rep.first_bd_violation = r.t;
      rep.bd_pass = false;
    }
  }
  return rep;
}

}  // namespace rotcap::nsk

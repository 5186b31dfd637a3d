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

#include "rotcap/io/compare.hpp"

#include <algorithm>
#include <cmath>

#include "rotcap/error.hpp"
#include "rotcap/spectral/littlewood_paley.hpp"
#include "rotcap/spectral/operators.hpp"

namespace rotcap::io {

namespace {

SpectralField horizontal(const SpectralField& f) {
  return f.grid()->active(spectral::Axis::X3) ? spectral::vertical_mean(f) : f;
}

// Limit field at time t, linear between bracketing samples.
SpectralField limit_at(const std::vector<FieldSample>& lim, double t) {
  auto it = std::lower_bound(lim.begin(), lim.end(), t, [](const FieldSample& s, double v) { return s.t < v; });
  if (it == lim.end()) return lim.back().r;
  if (it->t == t || it == lim.begin()) return it->r;
  const auto& a = *(it - 1);
  const double w = (t - a.t) / (it->t - a.t);
  return (1.0 - w) * a.r + w * it->r;
}

double trapezoid_mean(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() == 1) return y.front();
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s / (t.back() - t.front());
}

}  // namespace

FilteredComparison filtered_compare(const std::vector<FieldSample>& r_eps, const std::vector<FieldSample>& r_limit,
                                    const CompareOptions& opt) {
  if (r_eps.empty() || r_limit.empty()) throw PreconditionError("filtered_compare: empty trajectory");
  if (!(opt.window >= 0.0)) throw PreconditionError("filtered_compare: window must be non-negative");
  for (const auto* traj : {&r_eps, &r_limit}) {
    for (std::size_t i = 1; i < traj->size(); ++i) {
      if (!((*traj)[i].t > (*traj)[i - 1].t)) throw PreconditionError("filtered_compare: times must increase");
    }
  }
  double lo = std::max(r_eps.front().t, r_limit.front().t);
  double hi = std::min(r_eps.back().t, r_limit.back().t);
  if (opt.t_begin) lo = std::max(lo, *opt.t_begin);
  if (opt.t_end) hi = std::min(hi, *opt.t_end);
  if (lo > hi) throw PreconditionError("filtered_compare: time ranges do not overlap");

  FilteredComparison out;
  std::vector<SpectralField> diff;
  for (const auto& s : r_eps) {
    if (s.t < lo || s.t > hi) continue;
    SpectralField d = horizontal(s.r);
    spectral::require_same_grid(d, r_limit.front().r, "filtered_compare");
    d -= limit_at(r_limit, s.t);
    diff.push_back(spectral::low_pass(d, opt.M));
    out.times.push_back(s.t);
    out.discrepancy.push_back(spectral::l2_norm(diff.back()));
  }
  if (out.times.empty()) throw PreconditionError("filtered_compare: no samples inside the common time range");

  // Cumulative trapezoid integrals of the difference field.
  const std::size_t n = diff.size();
  std::vector<SpectralField> cum(n, SpectralField(diff.front().grid()));
  for (std::size_t i = 1; i < n; ++i) {
    cum[i] = cum[i - 1] + (0.5 * (out.times[i] - out.times[i - 1])) * (diff[i] + diff[i - 1]);
  }
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = out.times[i];
    while (out.times[a] < t - 0.5 * opt.window) ++a;
    if (b < i) b = i;
    while (b + 1 < n && out.times[b + 1] <= t + 0.5 * opt.window) ++b;
    if (b == a) {
      out.averaged.push_back(out.discrepancy[i]);
    } else {
      out.averaged.push_back(spectral::l2_norm(cum[b] - cum[a]) / (out.times[b] - out.times[a]));
    }
  }
  out.mean_discrepancy = trapezoid_mean(out.times, out.discrepancy);
  out.mean_averaged = trapezoid_mean(out.times, out.averaged);
  return out;
}

}  // namespace rotcap::io

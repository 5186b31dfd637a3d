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

#include "rotcap/spectral/operators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "rotcap/error.hpp"
#include "rotcap/kernels.hpp"
#include "rotcap/spectral/detail.hpp"

namespace rotcap::spectral {

using detail::for_each_coefficient;

namespace {

void require_axis(const Grid& g, Axis a, const char* where) {
  if (!g.active(a)) {
    throw DimensionError(std::string(where) + ": axis x" + std::to_string(static_cast<int>(a) + 1) +
                         " is not active on this grid");
  }
}

cplx ipow(int order) {
  switch (((order % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

void for_each_mode(const Grid& g,
                   const std::function<void(std::size_t, double, double, double)>& fn) {
  const auto k1 = g.wavenumbers(Axis::X1);
  const auto k2 = g.wavenumbers(Axis::X2);
  const auto k3 = g.wavenumbers(Axis::X3);
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.half1(); ++i1) fn(g.spectral_index(i1, i2, i3), k1[i1], k2[i2], k3[i3]);
}

SpectralField diff(const SpectralField& f, Axis axis, int order) {
  const Grid& g = *f.grid();
  require_axis(g, axis, "diff");
  if (order < 0) throw PreconditionError("diff: order must be non-negative");
  if (order == 0) return f;
  const auto kd = g.derivative_wavenumbers(axis);
  const cplx unit = ipow(order);
  CplxVec out(f.spectral().begin(), f.spectral().end());
  const int ax = static_cast<int>(axis);
  for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int i3) {
    const int i = ax == 0 ? i1 : (ax == 1 ? i2 : i3);
    out[idx] *= unit * std::pow(kd[i], order);
  });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

SpectralField apply_multiplier(const SpectralField& f, const Symbol& m) {
  const Grid& g = *f.grid();
  CplxVec out(f.spectral().begin(), f.spectral().end());
  for_each_mode(g, [&](std::size_t idx, double k1, double k2, double k3) { out[idx] *= m(k1, k2, k3); });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

SpectralField invert_multiplier(const SpectralField& f, const Symbol& m) {
  const Grid& g = *f.grid();
  CplxVec out(f.spectral().begin(), f.spectral().end());
  for_each_mode(g, [&](std::size_t idx, double k1, double k2, double k3) {
    const double v = m(k1, k2, k3);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw SingularMultiplierError("invert_multiplier: symbol is not positive at k = (" +
                                    std::to_string(k1) + ", " + std::to_string(k2) + ", " +
                                    std::to_string(k3) + ")");
    }
    out[idx] /= v;
  });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = *f.grid();
  const auto k1 = g.derivative_wavenumbers(Axis::X1);
  const auto k2 = g.derivative_wavenumbers(Axis::X2);
  const auto k3 = g.derivative_wavenumbers(Axis::X3);
  CplxVec out(f.spectral().begin(), f.spectral().end());
  for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int i3) {
    out[idx] *= -(k1[i1] * k1[i1] + k2[i2] * k2[i2] + k3[i3] * k3[i3]);
  });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

SpectralField laplacian_h(const SpectralField& f) {
  const Grid& g = *f.grid();
  const auto k1 = g.derivative_wavenumbers(Axis::X1);
  const auto k2 = g.derivative_wavenumbers(Axis::X2);
  CplxVec out(f.spectral().begin(), f.spectral().end());
  for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int) {
    out[idx] *= -(k1[i1] * k1[i1] + k2[i2] * k2[i2]);
  });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

VecField gradient(const SpectralField& f) {
  const Grid& g = *f.grid();
  if (g.active(Axis::X3)) return VecField(diff(f, Axis::X1), diff(f, Axis::X2), diff(f, Axis::X3));
  return gradient_h(f);
}

VecField gradient_h(const SpectralField& f) {
  require_axis(*f.grid(), Axis::X2, "gradient_h");
  return VecField(diff(f, Axis::X1), diff(f, Axis::X2));
}

VecField perp_gradient_h(const SpectralField& f) {
  require_axis(*f.grid(), Axis::X2, "perp_gradient_h");
  return VecField(-diff(f, Axis::X2), diff(f, Axis::X1));
}

SpectralField divergence(const VecField& v) {
  SpectralField d = diff(v[0], Axis::X1);
  d += diff(v[1], Axis::X2);
  if (v.size() == 3) d += diff(v[2], Axis::X3);
  return d;
}

SpectralField divergence_h(const VecField& v) {
  SpectralField d = diff(v[0], Axis::X1);
  d += diff(v[1], Axis::X2);
  return d;
}

SpectralField curl_h(const VecField& v) {
  SpectralField c = diff(v[1], Axis::X1);
  c -= diff(v[0], Axis::X2);
  return c;
}

SpectralField perp_divergence_h(const VecField& v) { return curl_h(v); }

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b, "multiply");
  RealVec out(a.grid()->size());
  kernels::multiply(a.physical(), b.physical(), out);
  return SpectralField::from_physical(a.grid(), std::move(out));
}

SpectralField map(const SpectralField& f, const std::function<double(double)>& fn) {
  auto in = f.physical();
  RealVec out(in.size());
  kernels::parallel_for(in.size(), [&](std::size_t i) { out[i] = fn(in[i]); });
  return SpectralField::from_physical(f.grid(), std::move(out));
}

void dealias_in_place(SpectralField& f) {
  const Grid& g = *f.grid();
  if (g.dealias_fraction() >= 1.0) return;
  auto s = f.spectral_mut();
  for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int i3) {
    if (!detail::is_retained(g, i1, i2, i3)) s[idx] = 0.0;
  });
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  SpectralField p = multiply(dealias(a), dealias(b));
  dealias_in_place(p);
  return p;
}

double integrate(const SpectralField& f) {
  return kernels::sum(f.physical()) * f.grid()->volume() / static_cast<double>(f.grid()->size());
}

double inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "inner");
  return kernels::dot(f.physical(), g.physical()) * f.grid()->volume() /
         static_cast<double>(f.grid()->size());
}

double l2_norm(const SpectralField& f) { return std::sqrt(std::max(0.0, inner(f, f))); }

double spectral_l2_norm(const SpectralField& f) {
  const Grid& g = *f.grid();
  auto s = f.spectral();
  double total = 0.0;
  for (int i3 = 0; i3 < g.n3(); ++i3)
    for (int i2 = 0; i2 < g.n2(); ++i2)
      for (int i1 = 0; i1 < g.half1(); ++i1)
        total += g.hermitian_weight(i1) * std::norm(s[g.spectral_index(i1, i2, i3)]);
  return std::sqrt(total * g.volume());
}

double l2_norm(const VecField& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += inner(v[i], v[i]);
  return std::sqrt(s);
}

double lp_norm(const SpectralField& f, double p) {
  if (std::isinf(p)) return max_abs(f);
  auto x = f.physical();
  const double s = [&] {
    RealVec t(x.size());
    kernels::parallel_for(x.size(), [&](std::size_t i) { t[i] = std::pow(std::abs(x[i]), p); });
    return kernels::sum(t);
  }();
  return std::pow(s * f.grid()->volume() / static_cast<double>(x.size()), 1.0 / p);
}

double max_abs(const SpectralField& f) { return kernels::max_abs(f.physical()); }

double min_value(const SpectralField& f) { return kernels::min_value(f.physical()); }

SpectralField vertical_mean(const SpectralField& f) {
  const Grid& g = *f.grid();
  if (!g.active(Axis::X3)) throw DimensionError("vertical_mean: field has no vertical axis");
  GridPtr h = g.horizontal();
  auto s = f.spectral();
  CplxVec out(h->spectral_size());
  std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(h->spectral_size()), out.begin());
  return SpectralField::from_spectral(h, std::move(out));
}

SpectralField extend_vertically(const SpectralField& f2d, const GridPtr& grid3d) {
  const Grid& h = *f2d.grid();
  if (h.n1() != grid3d->n1() || h.n2() != grid3d->n2() || h.n3() != 1) {
    throw GridMismatchError("extend_vertically: horizontal shapes differ");
  }
  CplxVec out(grid3d->spectral_size(), cplx{});
  auto s = f2d.spectral();
  std::copy(s.begin(), s.end(), out.begin());
  return SpectralField::from_spectral(grid3d, std::move(out));
}

std::pair<SpectralField, SpectralField> vertical_split(const SpectralField& f) {
  SpectralField mean = vertical_mean(f);
  CplxVec fl(f.spectral().begin(), f.spectral().end());
  std::fill(fl.begin(), fl.begin() + static_cast<std::ptrdiff_t>(mean.grid()->spectral_size()), cplx{});
  return {std::move(mean), SpectralField::from_spectral(f.grid(), std::move(fl))};
}

SpectralField inv_d3(const SpectralField& f) {
  const Grid& g = *f.grid();
  require_axis(g, Axis::X3, "inv_d3");
  const double mean_norm = l2_norm(vertical_mean(f));
  if (mean_norm > 1e-10 * std::max(1.0, l2_norm(f))) {
    throw PreconditionError("inv_d3: field has a nonzero vertical average (" +
                            std::to_string(mean_norm) + ")");
  }
  const auto kd = g.derivative_wavenumbers(Axis::X3);
  CplxVec out(f.spectral().begin(), f.spectral().end());
  for_each_coefficient(g, [&](std::size_t idx, int, int, int i3) {
    out[idx] = kd[i3] == 0.0 ? cplx{} : out[idx] / cplx(0.0, kd[i3]);
  });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

SpectralField project_parity(const SpectralField& f, Parity parity) {
  const Grid& g = *f.grid();
  require_axis(g, Axis::X3, "project_parity");
  auto s = f.spectral();
  CplxVec out(s.size());
  const int n3 = g.n3();
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  for_each_coefficient(g, [&](std::size_t idx, int i1, int i2, int i3) {
    const int mirror = (n3 - i3) % n3;
    const cplx a = s[idx];
    const cplx b = s[g.spectral_index(i1, i2, mirror)];
    out[idx] = 0.5 * (a + sign * b);
  });
  return SpectralField::from_spectral(f.grid(), std::move(out));
}

double parity_residual(const SpectralField& f, Parity parity) {
  const double n = spectral_l2_norm(f);
  if (n == 0.0) return 0.0;
  return spectral_l2_norm(f - project_parity(f, parity)) / n;
}

void symmetry_project(SpectralField& rho, VecField& m) {
  rho = project_parity(rho, Parity::Even);
  m[0] = project_parity(m[0], Parity::Even);
  m[1] = project_parity(m[1], Parity::Even);
  if (m.size() == 3) m[2] = project_parity(m[2], Parity::Odd);
}

SpectralField random_band_limited(const GridPtr& grid, double kmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVec white(grid->size());
  for (auto& v : white) v = normal(rng);
  SpectralField f = SpectralField::from_physical(grid, std::move(white));
  f = apply_multiplier(f, [kmax](double k1, double k2, double k3) {
    return std::sqrt(k1 * k1 + k2 * k2 + k3 * k3) <= kmax ? 1.0 : 0.0;
  });
  auto s = f.spectral_mut();
  s[0] = 0.0;
  const double rms = spectral_l2_norm(f) / std::sqrt(grid->volume());
  if (rms > 0.0) f *= 1.0 / rms;
  return f;
}

}  // namespace rotcap::spectral

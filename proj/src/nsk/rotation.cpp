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

#include "rotcap/nsk/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "rotcap/error.hpp"
#include "rotcap/spectral/operators.hpp"
#include "rotcap/zygmund/regularity.hpp"

namespace rotcap::nsk {

using spectral::Axis;

RotationProfile RotationProfile::make(RotationKind kind, const GridPtr& grid) {
  if (!grid->active(Axis::X2)) throw DimensionError("RotationProfile: grid needs two horizontal axes");
  GridPtr h = grid->active(Axis::X3) ? grid->horizontal() : grid;
  RotationProfile p;
  p.kind_ = kind;
  p.name_ = to_string(kind);
  if (kind == RotationKind::Constant) {
    p.c_ = SpectralField::constant(h, 1.0);
  } else {
    p.c_ = SpectralField::sample(h, [](double x1, double, double) { return 2.0 + std::sin(x1); });
  }
  p.grad_ = spectral::gradient_h(p.c_);
  auto cv = p.c_.physical();
  p.mean_ = spectral::integrate(p.c_) / h->volume();
  p.min_abs_ = std::abs(cv[0]);
  p.max_dev_ = 0.0;
  for (double v : cv) {
    p.min_abs_ = std::min(p.min_abs_, std::abs(v));
    p.max_dev_ = std::max(p.max_dev_, std::abs(v - p.mean_));
  }
  if (!(p.min_abs_ > 0.0)) throw PreconditionError("RotationProfile: c vanishes on the grid");
  auto gx = p.grad_[0].physical();
  auto gy = p.grad_[1].physical();
  for (std::size_t i = 0; i < gx.size(); ++i) p.lipschitz_ = std::max(p.lipschitz_, std::hypot(gx[i], gy[i]));
  p.zmu_ = zygmund::zmu_seminorm(p.c_, zygmund::Modulus::lipschitz());
  return p;
}

RotationKind RotationProfile::parse_kind(const std::string& name) {
  if (name == "CONSTANT") return RotationKind::Constant;
  if (name == "SMOOTH_NONDEG") return RotationKind::SmoothNondeg;
  throw ConfigError("", "unknown rotation profile '" + name + "'");
}

std::vector<double> RotationProfile::nondegeneracy_curve(const std::vector<double>& deltas) const {
  auto gx = grad_[0].physical();
  auto gy = grad_[1].physical();
  const double cell = c_.grid()->volume() / static_cast<double>(gx.size());
  std::vector<double> out;
  for (double d : deltas) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < gx.size(); ++i)
      if (std::hypot(gx[i], gy[i]) <= d) ++count;
    out.push_back(cell * static_cast<double>(count));
  }
  return out;
}

SpectralField RotationProfile::extended(const GridPtr& grid3d) const {
  if (!grid3d->active(Axis::X3)) return c_;
  return spectral::extend_vertically(c_, grid3d);
}

const char* to_string(RotationKind kind) {
  return kind == RotationKind::Constant ? "CONSTANT" : "SMOOTH_NONDEG";
}

}  // namespace rotcap::nsk

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

#pragma once

#include <string>
#include <vector>

#include "rotcap/spectral/field.hpp"

namespace rotcap::nsk {

using spectral::GridPtr;
using spectral::SpectralField;
using spectral::VecField;

enum class RotationKind { Constant, SmoothNondeg };

/// Axis-variation function c(x^h) of the Coriolis term, sampled on the
/// horizontal grid, with the metadata the limit analysis relies on.
class RotationProfile {
 public:
  /// c ≡ 1 (Constant) or c = 2 + sin x¹ (SmoothNondeg) on `grid`'s
  /// horizontal grid. `grid` may be 2D or 3D.
  static RotationProfile make(RotationKind kind, const GridPtr& grid);
  static RotationKind parse_kind(const std::string& name);

  RotationKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_constant() const { return kind_ == RotationKind::Constant; }
  /// c on the horizontal grid.
  const SpectralField& c() const { return c_; }
  /// ∇_h c on the horizontal grid.
  const VecField& grad_c() const { return grad_; }
  double mean() const { return mean_; }
  double min_abs() const { return min_abs_; }
  double max_deviation() const { return max_dev_; }
  /// ‖∇_h c‖_∞.
  double lipschitz_bound() const { return lipschitz_; }
  /// |c|_{Z_μ} with μ(s) = s.
  double zmu_seminorm() const { return zmu_; }
  /// Area of {x^h : |∇_h c(x^h)| ≤ δ} for each δ, from node counts.
  std::vector<double> nondegeneracy_curve(const std::vector<double>& deltas) const;

  /// c extended along x³ onto a 3D grid with the same horizontal shape.
  SpectralField extended(const GridPtr& grid3d) const;

 private:
  RotationKind kind_ = RotationKind::Constant;
  std::string name_;
  SpectralField c_;
  VecField grad_;
  double mean_ = 1.0;
  double min_abs_ = 1.0;
  double max_dev_ = 0.0;
  double lipschitz_ = 0.0;
  double zmu_ = 0.0;
};

const char* to_string(RotationKind kind);

}  // namespace rotcap::nsk

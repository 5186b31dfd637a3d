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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rotcap/spectral/grid.hpp"

namespace rotcap::spectral {

/// A real scalar field on a periodic grid, carried in physical and/or Fourier
/// form. Each representation is produced on demand from the other; callers
/// treat instances as values.
class SpectralField {
 public:
  SpectralField() = default;
  /// The zero field.
  explicit SpectralField(GridPtr grid);

  static SpectralField from_physical(GridPtr grid, RealVec values);
  static SpectralField from_physical(GridPtr grid, std::span<const double> values);
  static SpectralField from_spectral(GridPtr grid, CplxVec coefficients);
  /// Samples fn(x1, x2, x3) on the grid nodes.
  static SpectralField sample(GridPtr grid, const std::function<double(double, double, double)>& fn);
  static SpectralField constant(GridPtr grid, double value);

  const GridPtr& grid() const { return grid_; }
  bool valid() const { return grid_ != nullptr; }

  std::span<const double> physical() const;
  std::span<const cplx> spectral() const;
  /// Mutable access; invalidates the other representation.
  std::span<double> physical_mut();
  std::span<cplx> spectral_mut();

  bool has_physical() const { return phys_ok_; }
  bool has_spectral() const { return spec_ok_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  void ensure_physical() const;
  void ensure_spectral() const;

  GridPtr grid_;
  mutable RealVec phys_;
  mutable CplxVec spec_;
  mutable bool phys_ok_ = false;
  mutable bool spec_ok_ = false;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator-(SpectralField a);

/// Throws GridMismatchError unless both fields share a grid shape.
void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where);

enum class Orientation { Horizontal, Full };

/// Two (horizontal) or three (full) scalar components on one grid.
class VecField {
 public:
  VecField() = default;
  VecField(SpectralField c1, SpectralField c2);
  VecField(SpectralField c1, SpectralField c2, SpectralField c3);
  static VecField zeros(GridPtr grid, Orientation orientation);

  Orientation orientation() const { return orientation_; }
  std::size_t size() const { return comps_.size(); }
  const GridPtr& grid() const { return comps_.front().grid(); }
  const SpectralField& operator[](std::size_t i) const { return comps_[i]; }
  SpectralField& operator[](std::size_t i) { return comps_[i]; }

  VecField& operator+=(const VecField& other);
  VecField& operator-=(const VecField& other);
  VecField& operator*=(double s);

 private:
  std::vector<SpectralField> comps_;
  Orientation orientation_ = Orientation::Full;
};

VecField operator+(VecField a, const VecField& b);
VecField operator-(VecField a, const VecField& b);
VecField operator*(double s, VecField a);

}  // namespace rotcap::spectral

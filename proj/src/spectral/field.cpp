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

#include "rotcap/spectral/field.hpp"

#include <algorithm>

#include "rotcap/error.hpp"
#include "rotcap/kernels.hpp"

namespace rotcap::spectral {

SpectralField::SpectralField(GridPtr grid)
    : grid_(std::move(grid)),
      phys_(grid_->size(), 0.0),
      spec_(grid_->spectral_size(), cplx{}),
      phys_ok_(true),
      spec_ok_(true) {}

SpectralField SpectralField::from_physical(GridPtr grid, RealVec values) {
  if (values.size() != grid->size()) throw GridMismatchError("physical values do not match grid size");
  SpectralField f;
  f.grid_ = std::move(grid);
  f.phys_ = std::move(values);
  f.phys_ok_ = true;
  return f;
}

SpectralField SpectralField::from_physical(GridPtr grid, std::span<const double> values) {
  return from_physical(std::move(grid), RealVec(values.begin(), values.end()));
}

SpectralField SpectralField::from_spectral(GridPtr grid, CplxVec coefficients) {
  if (coefficients.size() != grid->spectral_size()) {
    throw GridMismatchError("coefficients do not match grid spectral size");
  }
  SpectralField f;
  f.grid_ = std::move(grid);
  f.spec_ = std::move(coefficients);
  f.spec_ok_ = true;
  return f;
}

SpectralField SpectralField::sample(GridPtr grid,
                                    const std::function<double(double, double, double)>& fn) {
  RealVec v(grid->size());
  for (int i3 = 0; i3 < grid->n3(); ++i3) {
    const double x3 = grid->coordinate(Axis::X3, i3);
    for (int i2 = 0; i2 < grid->n2(); ++i2) {
      const double x2 = grid->coordinate(Axis::X2, i2);
      for (int i1 = 0; i1 < grid->n1(); ++i1) {
        v[grid->physical_index(i1, i2, i3)] = fn(grid->coordinate(Axis::X1, i1), x2, x3);
      }
    }
  }
  return from_physical(std::move(grid), std::move(v));
}

SpectralField SpectralField::constant(GridPtr grid, double value) {
  CplxVec c(grid->spectral_size(), cplx{});
  c[0] = value;
  RealVec v(grid->size(), value);
  SpectralField f;
  f.grid_ = std::move(grid);
  f.spec_ = std::move(c);
  f.phys_ = std::move(v);
  f.spec_ok_ = f.phys_ok_ = true;
  return f;
}

void SpectralField::ensure_physical() const {
  if (phys_ok_) return;
  phys_.resize(grid_->size());
  grid_->backward(spec_, phys_);
  phys_ok_ = true;
}

void SpectralField::ensure_spectral() const {
  if (spec_ok_) return;
  spec_.resize(grid_->spectral_size());
  grid_->forward(phys_, spec_);
  spec_ok_ = true;
}

std::span<const double> SpectralField::physical() const {
  ensure_physical();
  return phys_;
}

std::span<const cplx> SpectralField::spectral() const {
  ensure_spectral();
  return spec_;
}

std::span<double> SpectralField::physical_mut() {
  ensure_physical();
  spec_ok_ = false;
  return phys_;
}

std::span<cplx> SpectralField::spectral_mut() {
  ensure_spectral();
  phys_ok_ = false;
  return spec_;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other, "operator+=");
  if (spec_ok_ && other.spec_ok_ && !(phys_ok_ && other.phys_ok_)) {
    auto s = spectral_mut();
    auto o = other.spectral();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += o[i];
  } else {
    auto p = physical_mut();
    kernels::axpby(1.0, other.physical(), 1.0, p);
  }
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other, "operator-=");
  if (spec_ok_ && other.spec_ok_ && !(phys_ok_ && other.phys_ok_)) {
    auto s = spectral_mut();
    auto o = other.spectral();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= o[i];
  } else {
    auto p = physical_mut();
    kernels::axpby(-1.0, other.physical(), 1.0, p);
  }
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  if (phys_ok_) {
    for (auto& v : phys_) v *= s;
  }
  if (spec_ok_) {
    for (auto& c : spec_) c *= s;
  }
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator-(SpectralField a) { return a *= -1.0; }

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where) {
  if (!a.valid() || !b.valid() || !a.grid()->same_shape(*b.grid())) {
    throw GridMismatchError(std::string(where) + ": fields live on different grids");
  }
}

VecField::VecField(SpectralField c1, SpectralField c2) : orientation_(Orientation::Horizontal) {
  require_same_grid(c1, c2, "VecField");
  comps_.push_back(std::move(c1));
  comps_.push_back(std::move(c2));
}

VecField::VecField(SpectralField c1, SpectralField c2, SpectralField c3)
    : orientation_(Orientation::Full) {
  require_same_grid(c1, c2, "VecField");
  require_same_grid(c1, c3, "VecField");
  comps_.push_back(std::move(c1));
  comps_.push_back(std::move(c2));
  comps_.push_back(std::move(c3));
}

VecField VecField::zeros(GridPtr grid, Orientation orientation) {
  if (orientation == Orientation::Horizontal) {
    return VecField(SpectralField(grid), SpectralField(grid));
  }
  return VecField(SpectralField(grid), SpectralField(grid), SpectralField(grid));
}

VecField& VecField::operator+=(const VecField& other) {
  if (other.size() != size()) throw GridMismatchError("VecField: component count mismatch");
  for (std::size_t i = 0; i < size(); ++i) comps_[i] += other.comps_[i];
  return *this;
}

VecField& VecField::operator-=(const VecField& other) {
  if (other.size() != size()) throw GridMismatchError("VecField: component count mismatch");
  for (std::size_t i = 0; i < size(); ++i) comps_[i] -= other.comps_[i];
  return *this;
}

VecField& VecField::operator*=(double s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

VecField operator+(VecField a, const VecField& b) { return a += b; }
VecField operator-(VecField a, const VecField& b) { return a -= b; }
VecField operator*(double s, VecField a) { return a *= s; }

}  // namespace rotcap::spectral

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

#include "rotcap/spectral/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <new>

#include "rotcap/error.hpp"

namespace rotcap::spectral {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void* fftw_aligned_alloc(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void fftw_aligned_free(void* p) noexcept { fftw_free(p); }

GridPtr Grid::make(int n1, int n2, int n3, double dealias_fraction) {
  return GridPtr(new Grid(n1, n2, n3, dealias_fraction));
}

Grid::Grid(int n1, int n2, int n3, double dealias_fraction)
    : n_{n1, n2, n3}, dealias_fraction_(dealias_fraction) {
  for (int a = 0; a < 3; ++a) {
    const int n = n_[a];
    if (n == 1 && a > 0) continue;
    if (!power_of_two(n) || n < 4) {
      throw DimensionError("grid counts must be powers of two >= 4 on active axes (got " +
                              std::to_string(n) + ")");
    }
  }
  if (n2 == 1 && n3 > 1) throw DimensionError("a vertical axis requires an x2 axis");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw PreconditionError("dealias fraction must lie in (0, 1]");
  }
  size_ = static_cast<std::size_t>(n1) * n2 * n3;
  spectral_size_ = static_cast<std::size_t>(half1()) * n2 * n3;

  for (int a = 0; a < 3; ++a) {
    const int n = n_[a];
    const int len = a == 0 ? half1() : n;
    const double unit = a == 2 ? kPi : 1.0;
    k_[a].resize(len);
    kd_[a].resize(len);
    m_[a].resize(len);
    for (int i = 0; i < len; ++i) {
      int mode = (a == 0 || i < n / 2) ? i : i - n;
      if (a > 0 && n > 1 && i == n / 2) mode = -n / 2;
      if (n == 1) mode = 0;
      m_[a][i] = mode;
      k_[a][i] = unit * mode;
      kd_[a][i] = (n > 1 && 2 * std::abs(mode) == n) ? 0.0 : unit * mode;
    }
    // Retained modes satisfy |mode| <= fraction * n / 2.
    cut_[a] = n == 1 ? 0 : static_cast<int>(std::floor(dealias_fraction * n / 2.0 + 1e-12));
    if (dealias_fraction < 1.0 && n > 1 && 2 * cut_[a] >= n) cut_[a] = n / 2 - 1;
  }

  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* re = static_cast<double*>(fftw_malloc(sizeof(double) * size_));
  auto* co = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * spectral_size_));
  plan_r2c_ = fftw_plan_dft_r2c_3d(n3, n2, n1, re, co, FFTW_ESTIMATE);
  plan_c2r_ = fftw_plan_dft_c2r_3d(n3, n2, n1, co, re, FFTW_ESTIMATE);
  fftw_free(re);
  fftw_free(co);
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_r2c_) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

int Grid::dimension() const {
  return (n_[0] > 1) + (n_[1] > 1) + (n_[2] > 1);
}

double Grid::period(Axis a) const { return a == Axis::X3 ? 2.0 : 2.0 * kPi; }

double Grid::volume() const {
  double v = 2.0 * kPi;
  if (active(Axis::X2)) v *= 2.0 * kPi;
  return v;  // the vertical half-cell has unit length
}

bool Grid::retained(Axis a, int spectral_index) const {
  const int ax = static_cast<int>(a);
  return std::abs(m_[ax][spectral_index]) <= cut_[ax];
}

double Grid::max_retained_wavenumber() const {
  double s = 0.0;
  s += std::pow(cut_[0], 2);
  s += std::pow(cut_[1], 2);
  s += std::pow(kPi * cut_[2], 2);
  return std::sqrt(s);
}

GridPtr Grid::horizontal() const { return make(n_[0], n_[1], 1, dealias_fraction_); }

void Grid::forward(std::span<const double> in, std::span<cplx> out) const {
  if (in.size() != size_ || out.size() != spectral_size_) {
    throw GridMismatchError("forward transform: buffer sizes do not match the grid");
  }
  // The plans assume SIMD-aligned buffers; stage anything else through scratch.
  thread_local RealVec in_scratch;
  thread_local CplxVec out_scratch;
  double* src = const_cast<double*>(in.data());  // r2c does not write its input
  if (fftw_alignment_of(src) != 0) {
    in_scratch.assign(in.begin(), in.end());
    src = in_scratch.data();
  }
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  const bool stage_out = fftw_alignment_of(reinterpret_cast<double*>(dst)) != 0;
  if (stage_out) {
    out_scratch.resize(spectral_size_);
    dst = reinterpret_cast<fftw_complex*>(out_scratch.data());
  }
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), src, dst);
  if (stage_out) std::copy(out_scratch.begin(), out_scratch.end(), out.begin());
  const double inv = 1.0 / static_cast<double>(size_);
  for (auto& c : out) c *= inv;
}

void Grid::backward(std::span<const cplx> in, std::span<double> out) const {
  if (in.size() != spectral_size_ || out.size() != size_) {
    throw GridMismatchError("backward transform: buffer sizes do not match the grid");
  }
  // c2r destroys its input.
  thread_local CplxVec scratch;
  thread_local RealVec out_scratch;
  scratch.assign(in.begin(), in.end());
  double* dst = out.data();
  const bool stage_out = fftw_alignment_of(dst) != 0;
  if (stage_out) {
    out_scratch.resize(size_);
    dst = out_scratch.data();
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), dst);
  if (stage_out) std::copy(out_scratch.begin(), out_scratch.end(), out.begin());
}

bool Grid::same_shape(const Grid& other) const {
  return n_[0] == other.n_[0] && n_[1] == other.n_[1] && n_[2] == other.n_[2] &&
         dealias_fraction_ == other.dealias_fraction_;
}

}  // namespace rotcap::spectral

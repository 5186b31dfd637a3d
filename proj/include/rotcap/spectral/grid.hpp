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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace rotcap::spectral {

using cplx = std::complex<double>;

/// Allocator backed by fftw_malloc so every buffer has the alignment the
/// cached FFTW plans were created with.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  return static_cast<T*>(fftw_aligned_alloc(n * sizeof(T)));
}
template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_aligned_free(p);
}

using RealVec = std::vector<double, FftwAllocator<double>>;
using CplxVec = std::vector<cplx, FftwAllocator<cplx>>;

enum class Axis { X1 = 0, X2 = 1, X3 = 2 };

inline constexpr double kPi = 3.14159265358979323846;

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Periodic box [0,2π)² × [0,2). The vertical period 2 stands for the
/// reflected slab T¹ = [−1,1]; horizontal wavenumbers are integers and
/// vertical wavenumbers are π times an integer.
///
/// Physical samples are stored row-major as [n3][n2][n1] (x¹ fastest).
/// Fourier coefficients use the r2c half layout [n3][n2][n1/2+1] and are
/// normalized as Fourier-series coefficients: f(x) = Σ_k f̂_k e^{ik·x}.
class Grid {
 public:
  static GridPtr make(int n1, int n2 = 1, int n3 = 1, double dealias_fraction = 2.0 / 3.0);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n(Axis a) const { return n_[static_cast<int>(a)]; }
  int n1() const { return n_[0]; }
  int n2() const { return n_[1]; }
  int n3() const { return n_[2]; }
  int half1() const { return n_[0] / 2 + 1; }
  bool active(Axis a) const { return n(a) > 1; }
  int dimension() const;
  double dealias_fraction() const { return dealias_fraction_; }

  std::size_t size() const { return size_; }
  std::size_t spectral_size() const { return spectral_size_; }

  double period(Axis a) const;
  double spacing(Axis a) const { return period(a) / n(a); }
  double coordinate(Axis a, int index) const { return index * spacing(a); }
  /// Measure of the cell used by integrals: the vertical extent counts as 1
  /// (half of the reflected period), horizontal extents as 2π.
  double volume() const;

  /// Wavenumbers along each axis, indexed by spectral position on that axis.
  std::span<const double> wavenumbers(Axis a) const { return k_[static_cast<int>(a)]; }
  /// Same, with the Nyquist entry set to zero (used by derivatives).
  std::span<const double> derivative_wavenumbers(Axis a) const { return kd_[static_cast<int>(a)]; }
  /// Integer mode index along each axis (signed; Nyquist is −n/2).
  std::span<const int> modes(Axis a) const { return m_[static_cast<int>(a)]; }
  /// Whether the 1D index survives the dealiasing truncation.
  bool retained(Axis a, int spectral_index) const;
  /// Largest |k| (Euclidean) among modes retained by dealiasing.
  double max_retained_wavenumber() const;

  std::size_t spectral_index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i3) * n_[1] + i2) * half1() + i1;
  }
  std::size_t physical_index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i3) * n_[1] + i2) * n_[0] + i1;
  }
  /// Multiplicity of a half-layout coefficient in the full spectrum (1 or 2).
  double hermitian_weight(int i1) const { return (i1 == 0 || 2 * i1 == n_[0]) ? 1.0 : 2.0; }

  /// The horizontal (nz = 1) grid sharing this grid's n1, n2.
  GridPtr horizontal() const;

  /// Normalized forward transform: out = FFT(in) / size().
  void forward(std::span<const double> in, std::span<cplx> out) const;
  /// Inverse transform (input is not modified).
  void backward(std::span<const cplx> in, std::span<double> out) const;

  bool same_shape(const Grid& other) const;

 private:
  Grid(int n1, int n2, int n3, double dealias_fraction);

  int n_[3];
  double dealias_fraction_;
  std::size_t size_;
  std::size_t spectral_size_;
  std::vector<double> k_[3];
  std::vector<double> kd_[3];
  std::vector<int> m_[3];
  int cut_[3];
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
};

}  // namespace rotcap::spectral

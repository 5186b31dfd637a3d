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

// Data-parallel inner loops. The unqualified functions in rotcap::kernels are
// OpenMP-parallel; rotcap::kernels::serial holds the plain reference loops the
// tests and the benchmark compare against. Elementwise kernels agree bit for
// bit with their serial reference. Reductions use a fixed block size so the
// result does not depend on the number of threads.

#include <complex>
#include <cstddef>
#include <span>

namespace rotcap::kernels {

using cplx = std::complex<double>;

/// Block length of the deterministic reductions.
inline constexpr std::size_t kReductionBlock = 4096;

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();
void set_thread_count(int n);

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

// out = a * b
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
// out = a / b
void divide(std::span<const double> a, std::span<const double> b, std::span<double> out);
// y = alpha * x + beta * y
void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y);
// f[i] *= symbol[i]
void apply_symbol(std::span<cplx> f, std::span<const double> symbol);
// f[i] *= symbol[i] (complex symbol)
void apply_symbol(std::span<cplx> f, std::span<const cplx> symbol);

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double min_value(std::span<const double> x);

namespace serial {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void divide(std::span<const double> a, std::span<const double> b, std::span<double> out);
void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y);
void apply_symbol(std::span<cplx> f, std::span<const double> symbol);
void apply_symbol(std::span<cplx> f, std::span<const cplx> symbol);

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);
double min_value(std::span<const double> x);

}  // namespace serial
}  // namespace rotcap::kernels

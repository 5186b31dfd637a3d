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

#include "rotcap/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace rotcap::kernels {

namespace {

std::ptrdiff_t ssize(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

// Sum of per-block partials in block order, each block summed sequentially.
template <class Term>
double blocked_reduce(std::size_t n, Term term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < ssize(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int n) { omp_set_num_threads(std::max(1, n)); }

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(out.size()); ++i) out[i] = a[i] * b[i];
}

void divide(std::span<const double> a, std::span<const double> b, std::span<double> out) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(out.size()); ++i) out[i] = a[i] / b[i];
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(y.size()); ++i) y[i] = alpha * x[i] + beta * y[i];
}

void apply_symbol(std::span<cplx> f, std::span<const double> symbol) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(f.size()); ++i) f[i] *= symbol[i];
}

void apply_symbol(std::span<cplx> f, std::span<const cplx> symbol) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(f.size()); ++i) f[i] *= symbol[i];
}

double sum(std::span<const double> x) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i]; });
}

double dot(std::span<const double> x, std::span<const double> y) {
  return blocked_reduce(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(x.size()); ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double min_value(std::span<const double> x) {
  double m = x.empty() ? 0.0 : x[0];
#pragma omp parallel for reduction(min : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < ssize(x.size()); ++i) m = std::min(m, x[i]);
  return m;
}

namespace serial {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void divide(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] / b[i];
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha * x[i] + beta * y[i];
}

void apply_symbol(std::span<cplx> f, std::span<const double> symbol) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= symbol[i];
}

void apply_symbol(std::span<cplx> f, std::span<const cplx> symbol) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= symbol[i];
}

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double min_value(std::span<const double> x) {
  double m = x.empty() ? 0.0 : x[0];
  for (double v : x) m = std::min(m, v);
  return m;
}

}  // namespace serial
}  // namespace rotcap::kernels

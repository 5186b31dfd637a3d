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

// Serial reference loops against the OpenMP kernels on preset-sized arrays
// (64x64x16 physical, 64x16x33 spectral), plus one NSK right-hand side.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rotcap/kernels.hpp"
#include "rotcap/nsk/nsk.hpp"

namespace k = rotcap::kernels;

namespace {

constexpr std::size_t kPhysical = 64 * 64 * 16;
constexpr std::size_t kSpectral = 64 * 16 * 33;

std::vector<double> random_vec(std::size_t n, unsigned seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

template <bool Parallel>
void BM_multiply(benchmark::State& state) {
  const auto a = random_vec(kPhysical, 1), b = random_vec(kPhysical, 2);
  std::vector<double> out(kPhysical);
  for (auto _ : state) {
    if constexpr (Parallel) k::multiply(a, b, out);
    else k::serial::multiply(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * 3 * kPhysical * sizeof(double));
}

template <bool Parallel>
void BM_axpby(benchmark::State& state) {
  const auto x = random_vec(kPhysical, 3);
  auto y = random_vec(kPhysical, 4);
  for (auto _ : state) {
    if constexpr (Parallel) k::axpby(0.5, x, 0.5, y);
    else k::serial::axpby(0.5, x, 0.5, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_apply_symbol(benchmark::State& state) {
  const auto re = random_vec(kSpectral, 5), im = random_vec(kSpectral, 6);
  const auto sym = random_vec(kSpectral, 7, 0.9, 1.0);
  std::vector<k::cplx> f(kSpectral);
  for (std::size_t i = 0; i < kSpectral; ++i) f[i] = {re[i], im[i]};
  for (auto _ : state) {
    if constexpr (Parallel) k::apply_symbol(f, sym);
    else k::serial::apply_symbol(f, sym);
    benchmark::DoNotOptimize(f.data());
  }
}

template <bool Parallel>
void BM_dot(benchmark::State& state) {
  const auto x = random_vec(kPhysical, 8), y = random_vec(kPhysical, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? k::dot(x, y) : k::serial::dot(x, y));
  }
}

template <bool Parallel>
void BM_max_abs(benchmark::State& state) {
  const auto x = random_vec(kPhysical, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? k::max_abs(x) : k::serial::max_abs(x));
  }
}

// Whole right-hand side on the preset grid; threads = 1 is the serial path.
void BM_nsk_rhs(benchmark::State& state) {
  const int saved = k::thread_count();
  k::set_thread_count(static_cast<int>(state.range(0)));
  using namespace rotcap;
  auto grid = spectral::Grid::make(64, 64, 16);
  nsk::Model model{nsk::SimParams{}, nsk::RotationProfile::make(nsk::RotationKind::SmoothNondeg, grid),
                   nsk::PressureLaw(2.0)};
  const auto f = nsk::synthesize(grid, {nsk::parse_mode("r 1.0 cos 1 0 0"), nsk::parse_mode("u2 0.5 sin 1 0 0"),
                                        nsk::parse_mode("u3 0.2 cos 1 1 1")});
  const auto datum = nsk::init_ill_prepared(f.r0, f.u0, model.params.epsilon, model.pressure, model.params.nu);
  for (auto _ : state) {
    auto t = nsk::rhs(datum.state, model);
    benchmark::DoNotOptimize(t.drho);
  }
  k::set_thread_count(saved);
}

}  // namespace

BENCHMARK_TEMPLATE(BM_multiply, false)->Name("multiply/serial");
BENCHMARK_TEMPLATE(BM_multiply, true)->Name("multiply/openmp");
BENCHMARK_TEMPLATE(BM_axpby, false)->Name("axpby/serial");
BENCHMARK_TEMPLATE(BM_axpby, true)->Name("axpby/openmp");
BENCHMARK_TEMPLATE(BM_apply_symbol, false)->Name("apply_symbol/serial");
BENCHMARK_TEMPLATE(BM_apply_symbol, true)->Name("apply_symbol/openmp");
BENCHMARK_TEMPLATE(BM_dot, false)->Name("dot/serial");
BENCHMARK_TEMPLATE(BM_dot, true)->Name("dot/openmp");
BENCHMARK_TEMPLATE(BM_max_abs, false)->Name("max_abs/serial");
BENCHMARK_TEMPLATE(BM_max_abs, true)->Name("max_abs/openmp");
BENCHMARK(BM_nsk_rhs)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

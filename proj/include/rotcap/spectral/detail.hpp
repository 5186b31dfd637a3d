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

// Internal loop helpers shared by the spectral operator implementations.

#include <cstddef>

#include "rotcap/kernels.hpp"
#include "rotcap/spectral/grid.hpp"

namespace rotcap::spectral::detail {

/// fn(index, i1, i2, i3) over the half-layout spectrum, rows in parallel.
template <class Fn>
void for_each_coefficient(const Grid& g, Fn&& fn) {
  const int h = g.half1();
  const int n2 = g.n2();
  const std::size_t rows = static_cast<std::size_t>(g.n3()) * n2;
  kernels::parallel_for(rows, [&](std::size_t row) {
    const int i3 = static_cast<int>(row / n2);
    const int i2 = static_cast<int>(row % n2);
    std::size_t idx = row * h;
    for (int i1 = 0; i1 < h; ++i1, ++idx) fn(idx, i1, i2, i3);
  });
}

inline bool is_retained(const Grid& g, int i1, int i2, int i3) {
  return g.retained(Axis::X1, i1) && g.retained(Axis::X2, i2) && g.retained(Axis::X3, i3);
}

}  // namespace rotcap::spectral::detail

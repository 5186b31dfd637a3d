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

#include "rotcap/zygmund/corpus.hpp"

#include <cmath>

#include "rotcap/error.hpp"

namespace rotcap::zygmund {

using spectral::kPi;
using spectral::SpectralField;

SpectralField weierstrass(const spectral::GridPtr& grid, int J) {
  if (J < 0) throw PreconditionError("weierstrass: J must be non-negative");
  if (std::ldexp(1.0, J) >= grid->n1() / 2) {
    throw PreconditionError("weierstrass: highest mode 2^J is not resolved on this grid");
  }
  return SpectralField::sample(grid, [J](double x, double, double) {
    double s = 0.0;
    for (int j = 0; j <= J; ++j) s += std::ldexp(std::cos(std::ldexp(x, j)), -j);
    return s;
  });
}

SpectralField tent(const spectral::GridPtr& grid) {
  return SpectralField::sample(grid, [](double x, double, double) {
    return std::abs(std::remainder(x, 2.0 * kPi));
  });
}

std::vector<CorpusEntry> corpus(const spectral::GridPtr& grid) {
  std::vector<CorpusEntry> out;
  out.push_back({"constant", Regularity::Constant, SpectralField::constant(grid, 1.5)});
  out.push_back({"cos1", Regularity::Smooth,
                 SpectralField::sample(grid, [](double x, double, double) { return std::cos(x); })});
  out.push_back({"sin1", Regularity::Smooth,
                 SpectralField::sample(grid, [](double x, double, double) { return std::sin(x); })});
  out.push_back({"cos32", Regularity::Smooth,
                 SpectralField::sample(grid, [](double x, double, double) { return std::cos(32 * x); })});
  out.push_back({"tent", Regularity::Lipschitz, tent(grid)});
  for (int J : {6, 8, 10}) {
    out.push_back({"weierstrass" + std::to_string(J), Regularity::Zygmund, weierstrass(grid, J)});
  }
  return out;
}

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::Constant: return "constant";
    case Regularity::Smooth: return "smooth";
    case Regularity::Lipschitz: return "lipschitz";
    case Regularity::Zygmund: return "zygmund";
  }
  return "unknown";
}

}  // namespace rotcap::zygmund

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

#include "rotcap/io/slope.hpp"

#include <cmath>

#include "rotcap/error.hpp"

namespace rotcap::io {

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw PreconditionError("slope_fit: need at least three pairs");
  const double n = static_cast<double>(pairs.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pairs) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw PreconditionError("slope_fit: entries must be positive and finite");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (!(sxx > 0.0)) throw PreconditionError("slope_fit: abscissae must not all coincide");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& [x, y] : pairs) {
    const double e = std::log(y) - (fit.slope * std::log(x) + fit.intercept);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace rotcap::io

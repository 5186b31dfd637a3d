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

#include <utility>
#include <vector>

namespace rotcap::io {

/// log y ≈ slope · log x + intercept.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// RMS of the log-space residuals.
  double residual = 0.0;
};

/// Least squares in log-log coordinates. Needs at least three pairs with
/// positive entries and two distinct abscissae; throws PreconditionError
/// otherwise.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace rotcap::io

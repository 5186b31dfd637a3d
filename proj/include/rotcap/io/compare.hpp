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

#include <optional>
#include <vector>

#include "rotcap/spectral/field.hpp"

namespace rotcap::io {

using spectral::SpectralField;

struct FieldSample {
  double t = 0.0;
  SpectralField r;
};

struct CompareOptions {
  int M = 3;            ///< low-pass S_M applied to the difference
  double window = 0.5;  ///< moving-mean width in time
  std::optional<double> t_begin;
  std::optional<double> t_end;
};

struct FilteredComparison {
  std::vector<double> times;
  /// ‖S_M(⟨r_ε(t)⟩ − r_lim(t))‖_{L²}.
  std::vector<double> discrepancy;
  /// Same with the difference first averaged over [t − w/2, t + w/2].
  std::vector<double> averaged;
  double mean_discrepancy = 0.0;
  double mean_averaged = 0.0;
};

/// Compares an NSK trajectory (2D, or 3D averaged over x³) with a limit
/// trajectory on the same horizontal grid. Samples of r_eps inside the
/// common time range are used; the limit is linearly interpolated in time.
/// Time means are trapezoidal. Throws PreconditionError on disjoint ranges
/// or empty input.
FilteredComparison filtered_compare(const std::vector<FieldSample>& r_eps, const std::vector<FieldSample>& r_limit,
                                    const CompareOptions& options = {});

}  // namespace rotcap::io

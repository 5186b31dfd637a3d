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

#include <string>
#include <vector>

#include "rotcap/spectral/field.hpp"

namespace rotcap::zygmund {

enum class Regularity { Constant, Smooth, Lipschitz, Zygmund };

struct CorpusEntry {
  std::string name;
  Regularity regularity;
  spectral::SpectralField field;
};

/// Truncated Weierstrass function Σ_{j=0..J} 2^{−j} cos(2^j x¹).
spectral::SpectralField weierstrass(const spectral::GridPtr& grid, int J);
/// 2π-periodic tent equal to |x¹| on [−π, π].
spectral::SpectralField tent(const spectral::GridPtr& grid);

/// The fixed test corpus, functions of x¹ sampled on `grid`: constant,
/// cos x¹, sin x¹, cos 32x¹, tent, Weierstrass at J = 6, 8, 10.
std::vector<CorpusEntry> corpus(const spectral::GridPtr& grid);

const char* to_string(Regularity r);

}  // namespace rotcap::zygmund

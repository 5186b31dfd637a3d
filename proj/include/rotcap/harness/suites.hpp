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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotcap/harness/config.hpp"
#include "rotcap/zygmund/commutator.hpp"
#include "rotcap/zygmund/corpus.hpp"

namespace rotcap::harness {

/// What a commutator case is held to.
enum class CaseCheck {
  Zero,      ///< every ratio vanishes (constant coefficient)
  Exponent,  ///< fitted exponent within tolerance of −1 (Lipschitz corpus)
  Growth,    ///< normalized ratio grows at most growth_limit (Zygmund corpus)
  Report,    ///< reported only
};

struct CommutatorCase {
  std::string theta;  ///< "chi" or "phi"
  std::string function;
  zygmund::Regularity regularity = zygmund::Regularity::Smooth;
  CaseCheck check = CaseCheck::Report;
  zygmund::DecayReport report;
  bool pass = false;
};

struct CommutatorSuite {
  std::vector<CommutatorCase> cases;
  double exponent_tolerance = 0.15;
  double growth_limit = 2.0;
  bool pass = false;

  /// One row per (θ, function, λ): the rates table.
  void write_csv(const std::filesystem::path& path) const;
  nlohmann::json summary() const;
};

/// Runs [θ(λ⁻¹D), a] for θ ∈ {χ, φ} over the built-in corpus on a 1D grid of
/// analysis.n points with λ = 2^M, M = m_min..m_max.
CommutatorSuite run_commutator_suite(const AnalysisConfig& analysis, std::uint64_t seed);

struct NormCase {
  std::string function;
  zygmund::Regularity regularity = zygmund::Regularity::Smooth;
  /// ‖a‖_∞ + |a|_{Z_μ} and the Besov-type norm, μ(s) = s.
  double zmu_norm = 0.0;
  double besov = 0.0;
  double ratio = 0.0;
  /// |a|_{C_μ} and the B_Γ norm with Γ ≡ 1; ratio 0 when both vanish.
  double cmu = 0.0;
  double bgamma = 0.0;
  double lipschitz_ratio = 0.0;
  bool lipschitz_checked = false;
  /// Observed C_a of the first-variation bound.
  double first_variation = 0.0;
  bool pass = false;
};

struct NormSuite {
  std::vector<NormCase> cases;
  double band = 20.0;
  bool pass = false;

  void write_csv(const std::filesystem::path& path) const;
  nlohmann::json summary() const;
};

/// Norm-equivalence bands and first-variation constants over the corpus.
NormSuite run_norm_suite(const AnalysisConfig& analysis);

/// Littlewood–Paley block norms of one field: rows (j, ‖Δ_j a‖_∞, ‖Δ_j a‖_2).
struct BlockRow {
  int j = -1;
  double linf = 0.0;
  double l2 = 0.0;
};
std::vector<BlockRow> block_norms(const spectral::SpectralField& a);

const char* to_string(CaseCheck check);

}  // namespace rotcap::harness

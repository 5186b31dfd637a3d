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

#include <functional>
#include <string>
#include <vector>

namespace rotcap::zygmund {

/// A modulus of continuity μ on [0,1]. Arguments above 1 are clamped to
/// μ(1); arguments ≤ 0 give 0.
class Modulus {
 public:
  Modulus(std::string name, std::function<double(double)> mu);

  /// μ(s) = s.
  static Modulus lipschitz();
  /// μ(s) = s^α, 0 < α ≤ 1.
  static Modulus holder(double alpha);
  /// μ(s) = s|log s| for s ≤ 1/e, constant 1/e above.
  static Modulus log_lipschitz();

  double operator()(double s) const;
  /// Γ_μ(s) = s μ(1/s).
  double gamma(double s) const { return s * (*this)(1.0 / s); }
  /// μ̃(s) = μ(s) log(1 + 1/s).
  double tilde(double s) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(double)> mu_;
};

struct AdmissibilityCertificate {
  bool admissible = false;
  bool modulus_monotone = false;
  bool gamma_monotone = false;
  /// Largest sampled ratio ∫_s^∞ σ⁻²Γ_μ(σ)dσ / (s⁻¹Γ_μ(s)).
  double worst_constant = 0.0;
  double worst_at = 1.0;
  std::string reason;
};

/// Samples s = 2^{i/4}, i = 0..4·octaves, and checks Definition-style
/// admissibility. Never throws for a bad μ; the certificate says why.
AdmissibilityCertificate admissibility_check(const Modulus& mu, int octaves = 40);

/// ∫_0^u μ(τ)/τ dτ / μ(u), which equals the admissibility ratio at s = 1/u.
double admissibility_ratio(const Modulus& mu, double u);

}  // namespace rotcap::zygmund

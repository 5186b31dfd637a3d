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

namespace rotcap::nsk {

/// Π = P + P_c with P(ρ) = ρ^γ/(2γ) and P_c(ρ) = −ρ^{−2}/4, so Π′(1) = 1.
/// The internal energies solve h″ = P′/ρ, h_c″ = P_c′/ρ with value and
/// slope zero at ρ = 1.
class PressureLaw {
 public:
  explicit PressureLaw(double gamma = 2.0);

  double gamma() const { return gamma_; }
  static constexpr double gamma_c = 2.0;

  double P(double rho) const;
  double P_cold(double rho) const;
  double Pi(double rho) const { return P(rho) + P_cold(rho); }
  double dPi(double rho) const;
  /// (ρ^γ − γρ + γ − 1) / (2γ(γ−1)).
  double h(double rho) const;
  double dh(double rho) const;
  /// ρ^{−2}/12 + ρ/6 − 1/4.
  double h_cold(double rho) const;
  double dh_cold(double rho) const;

 private:
  double gamma_;
};

}  // namespace rotcap::nsk

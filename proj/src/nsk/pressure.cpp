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

#include "rotcap/nsk/pressure.hpp"

#include <cmath>

#include "rotcap/error.hpp"

namespace rotcap::nsk {

PressureLaw::PressureLaw(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0 && gamma <= 2.0)) throw PreconditionError("PressureLaw: gamma must lie in (1, 2]");
}

double PressureLaw::P(double rho) const { return std::pow(rho, gamma_) / (2.0 * gamma_); }

double PressureLaw::P_cold(double rho) const { return -0.25 / (rho * rho); }

double PressureLaw::dPi(double rho) const {
  return 0.5 * std::pow(rho, gamma_ - 1.0) + 0.5 / (rho * rho * rho);
}

double PressureLaw::h(double rho) const {
  return (std::pow(rho, gamma_) - gamma_ * rho + gamma_ - 1.0) / (2.0 * gamma_ * (gamma_ - 1.0));
}

double PressureLaw::dh(double rho) const {
  return (std::pow(rho, gamma_ - 1.0) - 1.0) / (2.0 * (gamma_ - 1.0));
}

double PressureLaw::h_cold(double rho) const { return 1.0 / (12.0 * rho * rho) + rho / 6.0 - 0.25; }

double PressureLaw::dh_cold(double rho) const { return -1.0 / (6.0 * rho * rho * rho) + 1.0 / 6.0; }

}  // namespace rotcap::nsk

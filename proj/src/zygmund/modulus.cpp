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

#include "rotcap/zygmund/modulus.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>

#include "rotcap/error.hpp"

namespace rotcap::zygmund {

Modulus::Modulus(std::string name, std::function<double(double)> mu)
    : name_(std::move(name)), mu_(std::move(mu)) {
  if (!mu_) throw PreconditionError("Modulus: empty evaluator");
}

Modulus Modulus::lipschitz() {
  return Modulus("lipschitz", [](double s) { return s; });
}

Modulus Modulus::holder(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("Modulus::holder: alpha must lie in (0, 1]");
  return Modulus("holder-" + std::to_string(alpha), [alpha](double s) { return std::pow(s, alpha); });
}

Modulus Modulus::log_lipschitz() {
  const double cut = std::exp(-1.0);
  return Modulus("log-lipschitz", [cut](double s) { return s <= cut ? -s * std::log(s) : cut; });
}

double Modulus::operator()(double s) const {
  if (!(s > 0.0)) return 0.0;
  return mu_(std::min(s, 1.0));
}

double Modulus::tilde(double s) const { return (*this)(s) * std::log1p(1.0 / s); }

double admissibility_ratio(const Modulus& mu, double u) {
  const double mu_u = mu(u);
  if (!(mu_u > 0.0)) return std::numeric_limits<double>::infinity();
  // τ = u e^{−t} turns ∫_0^u μ(τ)/τ dτ into ∫_0^∞ μ(u e^{−t}) dt.
  boost::math::quadrature::exp_sinh<double> integrator;
  double value = 0.0;
  try {
    value = integrator.integrate([&](double t) { return mu(u * std::exp(-t)); }, 0.0,
                                 std::numeric_limits<double>::infinity());
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
  return value / mu_u;
}

AdmissibilityCertificate admissibility_check(const Modulus& mu, int octaves) {
  AdmissibilityCertificate cert;
  const int samples = 4 * octaves;
  cert.modulus_monotone = mu(0.0) == 0.0;
  cert.gamma_monotone = true;
  double prev_mu = 0.0;
  double prev_gamma = 0.0;
  std::vector<double> ratios;
  for (int i = samples; i >= 0; --i) {
    const double u = std::exp2(-i / 4.0);
    const double m = mu(u);
    if (!(m >= prev_mu) || !std::isfinite(m)) cert.modulus_monotone = false;
    prev_mu = m;
  }
  for (int i = 0; i <= samples; ++i) {
    const double s = std::exp2(i / 4.0);
    const double g = mu.gamma(s);
    if (i > 0 && g < prev_gamma * (1.0 - 1e-12)) cert.gamma_monotone = false;
    prev_gamma = g;
    const double c = admissibility_ratio(mu, 1.0 / s);
    ratios.push_back(c);
    if (!(c <= cert.worst_constant)) {
      cert.worst_constant = c;
      cert.worst_at = s;
    }
  }
  bool finite = std::isfinite(cert.worst_constant);
  // The ratio must not keep growing toward small scales.
  const std::size_t tail = ratios.size() * 3 / 4;
  double head_max = 0.0;
  for (std::size_t i = 0; i < tail; ++i) head_max = std::max(head_max, ratios[i]);
  bool bounded = true;
  for (std::size_t i = tail; i < ratios.size(); ++i)
    if (ratios[i] > 1.01 * head_max) bounded = false;

  cert.admissible = cert.modulus_monotone && cert.gamma_monotone && finite && bounded;
  if (!cert.modulus_monotone) cert.reason = "mu is not non-decreasing with mu(0) = 0";
  else if (!cert.gamma_monotone) cert.reason = "Gamma_mu decreases on [1, inf)";
  else if (!finite) cert.reason = "integral condition diverges";
  else if (!bounded) cert.reason = "integral ratio grows toward small scales";
  return cert;
}

}  // namespace rotcap::zygmund

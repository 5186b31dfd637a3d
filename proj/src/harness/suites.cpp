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

#include "rotcap/harness/suites.hpp"

#include <cmath>
#include <fstream>

#include "rotcap/error.hpp"
#include "rotcap/io/format.hpp"
#include "rotcap/io/series.hpp"
#include "rotcap/spectral/littlewood_paley.hpp"
#include "rotcap/spectral/operators.hpp"
#include "rotcap/zygmund/regularity.hpp"

namespace rotcap::harness {

using spectral::Grid;
using zygmund::Modulus;
using zygmund::Regularity;

namespace {

CaseCheck check_for(const zygmund::CorpusEntry& e) {
  switch (e.regularity) {
    case Regularity::Constant: return CaseCheck::Zero;
    case Regularity::Zygmund: return CaseCheck::Growth;
    case Regularity::Lipschitz: return CaseCheck::Exponent;
    case Regularity::Smooth: return e.name == "cos32" ? CaseCheck::Report : CaseCheck::Exponent;
  }
  return CaseCheck::Report;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  return os;
}

}  // namespace

const char* to_string(CaseCheck check) {
  switch (check) {
    case CaseCheck::Zero: return "zero";
    case CaseCheck::Exponent: return "exponent";
    case CaseCheck::Growth: return "growth";
    case CaseCheck::Report: return "report";
  }
  return "report";
}

CommutatorSuite run_commutator_suite(const AnalysisConfig& a, std::uint64_t seed) {
  CommutatorSuite suite;
  suite.exponent_tolerance = a.exponent_tolerance;
  suite.growth_limit = a.growth_limit;
  const auto grid = Grid::make(a.n);
  const spectral::LpProfile profile;
  const std::vector<std::pair<std::string, zygmund::RadialSymbol>> thetas = {
      {"chi", [profile](double r) { return profile.chi(r); }},
      {"phi", [profile](double r) { return profile.phi(r); }}};

  zygmund::DecayOptions base;
  for (int M = a.m_min; M <= a.m_max; ++M) base.lambdas.push_back(std::ldexp(1.0, M));
  base.ensemble = a.ensemble;
  base.seed = seed;
  base.spread_limit = a.growth_limit;

  suite.pass = true;
  for (const auto& [name, theta] : thetas) {
    for (const auto& e : zygmund::corpus(grid)) {
      CommutatorCase cc;
      cc.theta = name;
      cc.function = e.name;
      cc.regularity = e.regularity;
      cc.check = check_for(e);
      zygmund::DecayOptions o = base;
      if (e.regularity == Regularity::Zygmund) {
        o.coefficient = zygmund::CoefficientClass::Zmu;
        o.modulus = Modulus::lipschitz();
      }
      cc.report = zygmund::verify_commutator_decay(theta, e.field, o);
      switch (cc.check) {
        case CaseCheck::Zero: {
          double worst = 0.0;
          for (const auto& r : cc.report.rows) worst = std::max(worst, r.ratio);
          cc.pass = worst <= 1e-12;
          break;
        }
        case CaseCheck::Exponent:
          cc.pass = cc.report.exponent && std::abs(*cc.report.exponent + 1.0) <= a.exponent_tolerance;
          break;
        case CaseCheck::Growth: cc.pass = cc.report.pass; break;
        case CaseCheck::Report: cc.pass = true; break;
      }
      suite.pass = suite.pass && cc.pass;
      suite.cases.push_back(std::move(cc));
    }
  }
  return suite;
}

void CommutatorSuite::write_csv(const std::filesystem::path& path) const {
  auto os = open_out(path);
  os << "theta,function,class,lambda,ratio,envelope,normalized,pass\r\n";
  for (const auto& c : cases) {
    for (const auto& r : c.report.rows) {
      os << io::csv_field(c.theta) << ',' << io::csv_field(c.function) << ','
         << io::csv_field(zygmund::to_string(c.regularity)) << ',' << io::format_double(r.lambda) << ','
         << io::format_double(r.ratio) << ',' << io::format_double(r.envelope) << ','
         << io::format_double(r.normalized) << ',' << (r.pass ? "true" : "false") << "\r\n";
    }
  }
}

nlohmann::json CommutatorSuite::summary() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cases) {
    cs.push_back({{"theta", c.theta},
                  {"function", c.function},
                  {"class", zygmund::to_string(c.regularity)},
                  {"check", to_string(c.check)},
                  {"exponent", c.report.exponent ? nlohmann::json(*c.report.exponent) : nlohmann::json(nullptr)},
                  {"envelope_exponent", c.report.envelope_exponent},
                  {"constant", c.report.constant},
                  {"growth", c.report.growth},
                  {"spread", c.report.spread},
                  {"coefficient_norm", c.report.coefficient_norm},
                  {"pass", c.pass}});
  }
  return {{"cases", cs},
          {"exponent_tolerance", exponent_tolerance},
          {"growth_limit", growth_limit},
          {"pass", pass}};
}

NormSuite run_norm_suite(const AnalysisConfig& a) {
  NormSuite suite;
  suite.band = a.band;
  const auto grid = Grid::make(a.n);
  const Modulus mu = Modulus::lipschitz();
  const auto one = [](double) { return 1.0; };
  auto in_band = [&](double r) { return r >= 1.0 / a.band && r <= a.band; };
  suite.pass = true;
  for (const auto& e : zygmund::corpus(grid)) {
    NormCase nc;
    nc.function = e.name;
    nc.regularity = e.regularity;
    nc.zmu_norm = spectral::max_abs(e.field) + zygmund::zmu_seminorm(e.field, mu);
    nc.besov = zygmund::besov_mu_norm(e.field, mu);
    nc.ratio = nc.besov > 0.0 ? nc.zmu_norm / nc.besov : 0.0;
    nc.first_variation = zygmund::first_variation_bound(e.field, mu).constant;
    bool ok = in_band(nc.ratio) && std::isfinite(nc.first_variation);
    if (e.regularity == Regularity::Smooth || e.regularity == Regularity::Lipschitz) {
      nc.cmu = zygmund::cmu_seminorm(e.field, mu);
      nc.bgamma = zygmund::bgamma_norm(e.field, one);
      nc.lipschitz_checked = true;
      nc.lipschitz_ratio = nc.bgamma > 0.0 ? nc.cmu / nc.bgamma : 0.0;
      ok = ok && in_band(nc.lipschitz_ratio);
    }
    nc.pass = ok;
    suite.pass = suite.pass && ok;
    suite.cases.push_back(nc);
  }
  return suite;
}

void NormSuite::write_csv(const std::filesystem::path& path) const {
  auto os = open_out(path);
  os << "function,class,zmu_norm,besov_mu_norm,ratio,cmu_seminorm,bgamma_norm,lipschitz_ratio,"
        "first_variation_C,pass\r\n";
  for (const auto& c : cases) {
    os << io::csv_field(c.function) << ',' << io::csv_field(zygmund::to_string(c.regularity)) << ','
       << io::format_double(c.zmu_norm) << ',' << io::format_double(c.besov) << ',' << io::format_double(c.ratio)
       << ',' << io::format_double(c.cmu) << ',' << io::format_double(c.bgamma) << ','
       << io::format_double(c.lipschitz_ratio) << ',' << io::format_double(c.first_variation) << ','
       << (c.pass ? "true" : "false") << "\r\n";
  }
}

nlohmann::json NormSuite::summary() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json j = {{"function", c.function},
                        {"class", zygmund::to_string(c.regularity)},
                        {"zmu_norm", c.zmu_norm},
                        {"besov_mu_norm", c.besov},
                        {"ratio", c.ratio},
                        {"first_variation_C", c.first_variation},
                        {"pass", c.pass}};
    if (c.lipschitz_checked) {
      j["cmu_seminorm"] = c.cmu;
      j["bgamma_norm"] = c.bgamma;
      j["lipschitz_ratio"] = c.lipschitz_ratio;
    }
    cs.push_back(j);
  }
  return {{"cases", cs}, {"band", band}, {"pass", pass}};
}

std::vector<BlockRow> block_norms(const spectral::SpectralField& a) {
  std::vector<BlockRow> rows;
  const int top = spectral::max_block(*a.grid());
  for (int j = -1; j <= top; ++j) {
    const auto b = spectral::lp_block(a, j);
    rows.push_back({j, spectral::max_abs(b), spectral::l2_norm(b)});
  }
  return rows;
}

}  // namespace rotcap::harness

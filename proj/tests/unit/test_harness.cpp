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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "rotcap/error.hpp"
#include "rotcap/harness/config.hpp"
#include "rotcap/harness/suites.hpp"
#include "rotcap/harness/sweep.hpp"
#include "rotcap/harness/toml.hpp"
#include "rotcap/io/manifest.hpp"
#include "rotcap/io/series.hpp"

using namespace rotcap;
using namespace rotcap::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rotcap_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string config_error(const std::string& text) {
  try {
    config_from_toml(parse_toml(text)).validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

// 16x16x4, ten steps: small enough for a unit test.
Config tiny_sweep(const fs::path& dir, const std::string& modes) {
  const std::string text = "seed = 7\n"
                           "[grid]\nnx = 16\nny = 16\nnz = 4\n"
                           "[physics]\nepsilon = [0.2, 0.1, 0.05]\nrotation = \"SMOOTH_NONDEG\"\n"
                           "[scheme]\ndt = 0.005\nt_final = 0.05\n"
                           "[initial]\nmodes = [" + modes + "]\n"
                           "[limit]\ndt = 0.01\n"
                           "[experiment]\nwindow = 0.02\nsample_every = 2\noutput_dir = \"" + dir.string() + "\"\n";
  Config c = config_from_toml(parse_toml(text));
  c.validate_sweep();
  return c;
}

}  // namespace

TEST_CASE("toml subset parses tables, dotted keys and arrays") {
  const auto doc = parse_toml(
      "# comment\n"
      "seed = 42\n"
      "[grid]\n"
      "nx = 32   # trailing comment\n"
      "dealias = 0.5\n"
      "[physics]\n"
      "epsilon = [0.2, 0.1,\n"
      "           0.05]  # continues\n"
      "rotation = 'SMOOTH_NONDEG'\n"
      "[experiment]\n"
      "output_dir = \"a \\\"quoted\\\" dir\"\n"
      "snapshots = false\n"
      "limit.dt = 1_000.0\n");
  CHECK(doc.at("seed").integer == 42);
  CHECK(doc.at("grid.nx").integer == 32);
  CHECK(doc.at("grid.dealias").real == 0.5);
  REQUIRE(doc.at("physics.epsilon").items.size() == 3);
  CHECK(doc.at("physics.epsilon").items[2].real == 0.05);
  CHECK(doc.at("physics.rotation").text == "SMOOTH_NONDEG");
  CHECK(doc.at("experiment.output_dir").text == "a \"quoted\" dir");
  CHECK_FALSE(doc.at("experiment.snapshots").boolean);
  CHECK(doc.at("experiment.limit.dt").real == 1000.0);
  CHECK(doc.at("grid.nx").line == 4);
}

TEST_CASE("toml errors name the line") {
  auto msg = [](const std::string& text) {
    try {
      parse_toml(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg("a = 1\nb = \n").find("line 2") != std::string::npos);
  CHECK(msg("a = 1\na = 2\n").find("defined twice") != std::string::npos);
  CHECK(msg("[t]\n[t]\n").find("line 2") != std::string::npos);
  CHECK(msg("x = \"open\n").find("unterminated string") != std::string::npos);
  CHECK(msg("x = [1, 2\n").find("unterminated array") != std::string::npos);
  CHECK(msg("x = 1 2\n").find("trailing") != std::string::npos);
  CHECK(msg("x = [[1]]\n").find("nested") != std::string::npos);
}

TEST_CASE("config rejects unknown keys with their location") {
  const std::string msg = config_error("[grid]\nnx = 32\nnxx = 32\n");
  CHECK(msg.find("grid.nxx") != std::string::npos);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("unknown key") != std::string::npos);

  CHECK(config_error("[grid]\nnx = \"big\"\n").find("grid.nx (line 2)") != std::string::npos);
  CHECK(config_error("[grid]\nnx = 48\n").find("grid.nx") != std::string::npos);
  CHECK(config_error("[physics]\nrotation = \"SPIRAL\"\n").find("physics.rotation (line 2)") != std::string::npos);
  CHECK(config_error("[initial]\nmodes = [\"q 1 cos 1 0 0\"]\n").find("initial.modes") != std::string::npos);
  CHECK(config_error("[physics]\nnu = -1.0\n").find("physics.nu") != std::string::npos);
  CHECK(config_error("[scheme]\nintegrator = \"imex\"\n").empty());
}

TEST_CASE("sweep configs need three strictly decreasing epsilons") {
  auto sweep_error = [](const std::string& eps) {
    try {
      config_from_toml(parse_toml("[physics]\nepsilon = " + eps + "\n")).validate_sweep();
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string();
  };
  CHECK(sweep_error("[0.2, 0.1, 0.05]").empty());
  CHECK(sweep_error("[0.2, 0.1]") == "physics.epsilon");
  CHECK(sweep_error("[0.2, 0.2, 0.05]") == "physics.epsilon");
  CHECK(sweep_error("[0.05, 0.1, 0.2]") == "physics.epsilon");
  CHECK_NOTHROW(config_from_toml(parse_toml("[physics]\nepsilon = 0.1\n")).validate());
}

TEST_CASE("dotted overrides replace config values") {
  auto doc = parse_toml("[grid]\nnx = 32\n");
  apply_overrides(doc, {"grid.nx=16", "physics.epsilon=[0.4, 0.2, 0.1]", "experiment.output_dir=/tmp/x y",
                        "scheme.dt = auto"});
  const Config c = config_from_toml(doc);
  CHECK(c.grid.nx == 16);
  CHECK(c.physics.epsilon == std::vector<double>{0.4, 0.2, 0.1});
  CHECK(c.experiment.output_dir == "/tmp/x y");
  CHECK_FALSE(c.scheme.dt.has_value());
  CHECK_THROWS_AS(apply_overrides(doc, {"novalue"}), ConfigError);
  auto bad = parse_toml("");
  apply_overrides(bad, {"grid.bogus=1"});
  CHECK_THROWS_AS(config_from_toml(bad), ConfigError);
}

TEST_CASE("config echo round-trips through the manifest form") {
  Config c;
  const auto j = c.to_json();
  CHECK(j["grid"]["nx"] == 64);
  CHECK(j["physics"]["rotation"] == "SMOOTH_NONDEG");
  CHECK(j["scheme"]["integrator"] == "IMEX");
  CHECK(j["physics"]["epsilon"].size() == 3);
}

TEST_CASE("missing config file is a config error") {
  CHECK_THROWS_AS(load_config("/nonexistent/rotcap.toml"), ConfigError);
}

TEST_CASE("rest-state sweep passes with every metric zero") {
  const fs::path dir = scratch("rest");
  const Config c = tiny_sweep(dir, "");
  const auto rep = run_sweep(c, 1);
  CHECK(rep.complete);
  CHECK(rep.pass);
  for (const auto& m : rep.members) {
    CHECK(m.completed);
    CHECK(m.sup_density_deviation == 0.0);
    CHECK(m.final_kernel.max() == 0.0);
    REQUIRE(m.comparison.has_value());
    CHECK(m.comparison->mean_averaged == 0.0);
  }
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "eps_0.05" / "final.snap"));
  CHECK(fs::exists(dir / "limit" / "series.csv"));
}

TEST_CASE("sweep outputs are independent of worker count and reproducible") {
  const std::string modes = "\"r 0.5 cos 1 0 0\", \"u2 0.3 sin 1 0 0\", \"u3 0.1 cos 1 1 1\"";
  const auto a = run_sweep(tiny_sweep(scratch("det_a"), modes), 1);
  const auto b = run_sweep(tiny_sweep(scratch("det_b"), modes), 3);
  const auto c = run_sweep(tiny_sweep(scratch("det_c"), modes), 1);
  CHECK(a.complete);
  CHECK(a.outputs_digest == b.outputs_digest);
  CHECK(a.outputs_digest == c.outputs_digest);
  CHECK(b.workers == 3);

  // Every listed output carries a hash that matches the file on disk.
  const auto manifest = nlohmann::json::parse(std::ifstream(a.manifest_path));
  CHECK(manifest["outputs"].size() >= 3 * 4 + 2);
  for (const auto& o : manifest["outputs"]) {
    CHECK(io::sha256_file(fs::path(a.manifest_path).parent_path() / o["path"].get<std::string>()) == o["sha256"]);
  }
  CHECK(manifest["outputs_digest"] == a.outputs_digest);

  const auto kernel = io::TimeSeries::read_csv(fs::path(a.manifest_path).parent_path() / "eps_0.1" / "kernel.csv");
  CHECK(kernel.size() == 6);  // t = 0 and every second step of ten
  const auto series = io::TimeSeries::read_csv(fs::path(a.manifest_path).parent_path() / "eps_0.1" / "series.csv");
  CHECK(series.size() == 11);
}

TEST_CASE("member aborts are recorded and the sweep continues") {
  const fs::path dir = scratch("abort");
  // Amplitude 10: ρ = 1 + 10ε cos x¹ has vacuum for ε ≥ 0.1 but not at 0.05.
  const auto rep = run_sweep(tiny_sweep(dir, "\"r 10.0 cos 1 0 0\""), 1);
  CHECK_FALSE(rep.complete);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.members.size() == 3);
  CHECK_FALSE(rep.members[0].completed);
  CHECK(rep.members[0].error.find("rho_min") != std::string::npos);
  CHECK_FALSE(rep.members[1].completed);
  CHECK(rep.members[2].completed);
  CHECK(fs::exists(dir / "eps_0.05" / "final.snap"));
  CHECK(fs::exists(dir / "manifest.json"));
  const auto summary = nlohmann::json::parse(std::ifstream(dir / "summary.json"));
  CHECK(summary["checks"]["complete"] == false);
}

TEST_CASE("limit axis follows the rotation profile") {
  Config c;
  c.physics.rotation = nsk::RotationKind::Constant;
  CHECK(resolve_axis(c) == LimitAxis::Constant);
  c.physics.rotation = nsk::RotationKind::SmoothNondeg;
  CHECK(resolve_axis(c) == LimitAxis::Variable);
  c.limit.axis = LimitAxis::Constant;
  CHECK_THROWS_AS(resolve_axis(c), ConfigError);
}

TEST_CASE("analysis suites pass on a reduced corpus run") {
  AnalysisConfig a;
  a.n = 4096;
  a.m_max = 6;
  a.ensemble = 4;
  const auto comm = run_commutator_suite(a, 11);
  CHECK(comm.cases.size() == 16);
  CHECK(comm.pass);
  const auto norms = run_norm_suite(a);
  CHECK(norms.cases.size() == 8);
  CHECK(norms.pass);
  const fs::path dir = scratch("suites");
  comm.write_csv(dir / "rates.csv");
  std::ifstream is(dir / "rates.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header == "theta,function,class,lambda,ratio,envelope,normalized,pass\r");
}

TEST_CASE("worker count honours the environment") {
  setenv("ROTCAP_WORKERS", "5", 1);
  CHECK(resolve_workers() == 5);
  setenv("ROTCAP_WORKERS", "zero", 1);
  CHECK(resolve_workers() >= 1);
  unsetenv("ROTCAP_WORKERS");
}

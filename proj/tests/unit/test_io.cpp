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

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "rotcap/error.hpp"
#include "rotcap/io/compare.hpp"
#include "rotcap/io/manifest.hpp"
#include "rotcap/io/series.hpp"
#include "rotcap/io/slope.hpp"
#include "rotcap/io/snapshot.hpp"
#include "rotcap/spectral/operators.hpp"

using namespace rotcap;
using namespace rotcap::io;
using spectral::Grid;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rotcap_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("slope fit") {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  std::vector<std::pair<double, double>> lin, sq;
  for (double e : eps) {
    lin.emplace_back(e, 2.0 * e);
    sq.emplace_back(e, e * e);
  }
  const SlopeFit a = slope_fit(lin);
  CHECK(a.slope == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(a.residual < 1e-14);
  CHECK(slope_fit(sq).slope == doctest::Approx(2.0).epsilon(1e-14));

  // Scale equivariance: only the intercept moves.
  std::vector<std::pair<double, double>> noisy{{0.2, 0.31}, {0.1, 0.18}, {0.05, 0.07}, {0.025, 0.041}};
  const SlopeFit base = slope_fit(noisy);
  for (auto& p : noisy) p.second *= 37.5;
  const SlopeFit scaled = slope_fit(noisy);
  CHECK(std::abs(scaled.slope - base.slope) <= 1e-12);
  CHECK(scaled.intercept == doctest::Approx(base.intercept + std::log(37.5)).epsilon(1e-12));
  CHECK(scaled.residual == doctest::Approx(base.residual).epsilon(1e-10));
  CHECK(base.residual > 0.0);

  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {2.0, 2.0}}), PreconditionError);
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {2.0, 0.0}, {3.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {-2.0, 1.0}, {3.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}), PreconditionError);
}

TEST_CASE("filtered comparison") {
  const auto g = Grid::make(32, 32, 4);
  const auto h = g->horizontal();
  const SpectralField base = spectral::random_band_limited(h, 3.0, 5);
  const SpectralField high =
      SpectralField::sample(h, [](double x, double y, double) { return std::cos(9.0 * x) * std::sin(3.0 * y); });
  std::vector<FieldSample> lim, same, noisy, osc;
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.025 * i;
    const SpectralField r = std::exp(-t) * base;
    lim.push_back({t, r});
    same.push_back({t, spectral::extend_vertically(r, g)});
    noisy.push_back({t, r + 0.1 * high});
    osc.push_back({t, r + std::cos(2.0 * std::numbers::pi * t / 0.05) * base});
  }
  const auto z = filtered_compare(same, lim);
  CHECK(z.times.size() == 41);
  for (double d : z.discrepancy) CHECK(d == 0.0);
  CHECK(z.mean_discrepancy == 0.0);
  CHECK(z.mean_averaged == 0.0);

  // |k| ≥ 9 lies beyond the S_3 cut-off (χ(|k|/4) = 0 for |k| ≥ 7.6).
  const auto hf = filtered_compare(noisy, lim, {3, 0.5});
  for (double d : hf.discrepancy) CHECK(d < 1e-14);

  // An oscillation with period 0.05 survives pointwise but averages out
  // over a window of whole periods.
  const auto o = filtered_compare(osc, lim, {3, 0.2});
  CHECK(o.mean_discrepancy > 0.1 * spectral::l2_norm(base));
  CHECK(o.averaged[20] < 1e-12 * spectral::l2_norm(base) + 1e-14);
  CHECK(o.mean_averaged < o.mean_discrepancy);

  // Interpolation in time and windowing of the range.
  std::vector<FieldSample> coarse{lim.front(), lim.back()};
  const auto lin = filtered_compare(lim, coarse, {3, 0.0, 0.5, 0.75});
  CHECK(lin.times.front() == doctest::Approx(0.5));
  CHECK(lin.times.back() == doctest::Approx(0.75));
  CHECK(lin.mean_discrepancy > 0.0);

  std::vector<FieldSample> later{{2.0, base}, {3.0, base}};
  CHECK_THROWS_AS(filtered_compare(lim, later), PreconditionError);
  CHECK_THROWS_AS(filtered_compare({}, lim), PreconditionError);
}

TEST_CASE("snapshot round trip and refusals") {
  const auto dir = scratch_dir("snap");
  const auto g = Grid::make(16, 8, 4);
  Snapshot s;
  s.epsilon = 0.05;
  s.nu = 0.1;
  s.gamma = 2.0;
  s.scheme = "IMEX";
  s.time = 0.1 + 0.2;  // not exactly representable in short decimal
  const SpectralField a = spectral::random_band_limited(g, 5.0, 1);
  const SpectralField b = spectral::random_band_limited(g, 5.0, 2);
  s.add("rho", a);
  s.add("m1", b);
  write_snapshot(dir / "s.snap", s);
  const Snapshot r = read_snapshot(dir / "s.snap");
  CHECK(r.dims == s.dims);
  CHECK(r.periods == s.periods);
  CHECK(r.time == s.time);
  CHECK(r.epsilon == s.epsilon);
  CHECK(r.scheme == "IMEX");
  CHECK(r.names == s.names);
  REQUIRE(r.fields.size() == 2);
  for (std::size_t f = 0; f < 2; ++f) {
    for (std::size_t i = 0; i < r.fields[f].size(); ++i) {
      CHECK(std::bit_cast<std::uint64_t>(r.fields[f][i]) == std::bit_cast<std::uint64_t>(s.fields[f][i]));
    }
  }
  const SpectralField back = r.field("m1", g);
  CHECK(spectral::max_abs(back - b) == 0.0);
  // Rewriting gives identical bytes.
  write_snapshot(dir / "t.snap", r);
  CHECK(slurp(dir / "s.snap") == slurp(dir / "t.snap"));

  const std::string bytes = slurp(dir / "s.snap");
  {
    std::ofstream os(dir / "trunc.snap", std::ios::binary);
    os << bytes.substr(0, bytes.size() - 9);
  }
  CHECK_THROWS_AS(read_snapshot(dir / "trunc.snap"), FormatError);
  {
    std::ofstream os(dir / "long.snap", std::ios::binary);
    os << bytes << "x";
  }
  CHECK_THROWS_AS(read_snapshot(dir / "long.snap"), FormatError);
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string t = bytes;
    t.replace(t.find(from), from.size(), to);
    std::ofstream os(dir / "x.snap", std::ios::binary);
    os << t;
    return dir / "x.snap";
  };
  try {
    read_snapshot(replaced("endianness little", "endianness big"));
    FAIL("big-endian payload accepted");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("unsupported format") != std::string::npos);
  }
  CHECK_THROWS_AS(read_snapshot(replaced("format_version 1", "format_version 2")), FormatError);
  CHECK_THROWS_AS(read_snapshot(replaced("rotcap-snapshot", "other-snapshot")), FormatError);

  Snapshot bad = s;
  bad.fields[1][3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(write_snapshot(dir / "nan.snap", bad), PreconditionError);
  bad = s;
  bad.fields[0].pop_back();
  CHECK_THROWS_AS(write_snapshot(dir / "short.snap", bad), PreconditionError);
  CHECK_THROWS_AS(s.add("other", SpectralField(Grid::make(8, 8, 4))), GridMismatchError);
}

TEST_CASE("CSV time series") {
  const auto dir = scratch_dir("csv");
  TimeSeries ts({"t", "E, total", "say \"hi\""});
  ts.add_row({0.0, 1.0 / 3.0, -2.5e-300});
  ts.add_row({0.1, 0.25, 7.0});
  ts.add_row({0.1, 0.2, 7.0});  // equal times are allowed
  CHECK_THROWS_AS(ts.add_row({0.05, 1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(ts.add_row({0.2, std::numeric_limits<double>::infinity(), 1.0}), PreconditionError);
  CHECK_THROWS_AS(ts.add_row({0.2, 1.0}), PreconditionError);
  ts.write_csv(dir / "s.csv");
  const std::string text = slurp(dir / "s.csv");
  CHECK(text.rfind("t,\"E, total\",\"say \"\"hi\"\"\"\r\n", 0) == 0);
  const TimeSeries back = TimeSeries::read_csv(dir / "s.csv");
  CHECK(back.columns() == ts.columns());
  CHECK(back.rows() == ts.rows());
  CHECK(back.column("E, total")[0] == 1.0 / 3.0);

  append_series(dir / "a.csv", {"t", "x"}, {0.0, 1.0});
  append_series(dir / "a.csv", {"t", "x"}, {1.0, 2.0});
  CHECK(slurp(dir / "a.csv") == "t,x\r\n0,1\r\n1,2\r\n");
  CHECK_THROWS_AS(append_series(dir / "a.csv", {"t", "y"}, {2.0, 2.0}), FormatError);
  CHECK_THROWS_AS(append_series(dir / "a.csv", {"t", "x"}, {2.0, std::nan("")}), PreconditionError);
  CHECK(csv_split("a,\"b,c\",\"d\"\"e\"") == std::vector<std::string>{"a", "b,c", "d\"e"});
}

TEST_CASE("manifest hashing") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const auto dir = scratch_dir("manifest");
  {
    std::ofstream(dir / "a.txt") << "abc";
    std::ofstream(dir / "b.txt") << "xyz";
  }
  CHECK(sha256_file(dir / "a.txt") == sha256_hex("abc"));
  RunManifest m1, m2;
  m1.started = "one";
  m2.started = "two";
  m1.add_output(dir, "a.txt");
  m1.add_output(dir, "b.txt");
  m2.add_output(dir, "b.txt");
  m2.add_output(dir, "a.txt");
  CHECK(m1.outputs_digest() == m2.outputs_digest());
  CHECK(m1.outputs.front().bytes == 3);
  m1.write(dir / "manifest.json");
  const auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(j["outputs_digest"] == m1.outputs_digest());
  CHECK(j["outputs"].size() == 2);
  { std::ofstream(dir / "b.txt") << "xyZ"; }
  RunManifest m3;
  m3.add_output(dir, "a.txt");
  m3.add_output(dir, "b.txt");
  CHECK(m3.outputs_digest() != m1.outputs_digest());
}

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

#include "rotcap/io/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "rotcap/error.hpp"
#include "rotcap/io/format.hpp"

namespace rotcap::io {

namespace {

constexpr const char* kMagic = "rotcap-snapshot";

void put_le(std::ostream& os, const std::vector<double>& v) {
  std::vector<unsigned char> buf(v.size() * 8);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v[i]);
    for (int b = 0; b < 8; ++b) buf[8 * i + b] = static_cast<unsigned char>(bits >> (8 * b));
  }
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

std::vector<double> get_le(const unsigned char* p, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[8 * i + b]) << (8 * b);
    v[i] = std::bit_cast<double>(bits);
  }
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw FormatError("snapshot header: bad number for '" + key + "'");
  }
  return v;
}

}  // namespace

void Snapshot::add(const std::string& name, const spectral::SpectralField& f) {
  const auto& g = *f.grid();
  if (fields.empty()) {
    dims = {g.n1(), g.n2(), g.n3()};
    for (int a = 0; a < 3; ++a) periods[a] = g.period(static_cast<spectral::Axis>(a));
  } else if (dims != std::array<int, 3>{g.n1(), g.n2(), g.n3()}) {
    throw GridMismatchError("Snapshot::add: field '" + name + "' has a different grid");
  }
  auto v = f.physical();
  names.push_back(name);
  fields.emplace_back(v.begin(), v.end());
}

spectral::SpectralField Snapshot::field(const std::string& name, const spectral::GridPtr& grid) const {
  if (dims != std::array<int, 3>{grid->n1(), grid->n2(), grid->n3()}) {
    throw GridMismatchError("Snapshot::field: grid does not match the snapshot");
  }
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw PreconditionError("Snapshot::field: no field named '" + name + "'");
  return spectral::SpectralField::from_physical(grid, fields[static_cast<std::size_t>(it - names.begin())]);
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  const std::size_t n = static_cast<std::size_t>(s.dims[0]) * s.dims[1] * s.dims[2];
  if (s.names.size() != s.fields.size()) throw PreconditionError("write_snapshot: names and fields differ in count");
  for (std::size_t i = 0; i < s.fields.size(); ++i) {
    if (s.fields[i].size() != n) throw PreconditionError("write_snapshot: field '" + s.names[i] + "' has the wrong size");
    if (!std::all_of(s.fields[i].begin(), s.fields[i].end(), [](double v) { return std::isfinite(v); })) {
      throw PreconditionError("write_snapshot: field '" + s.names[i] + "' holds NaN or Inf");
    }
    if (s.names[i].empty() || s.names[i].find_first_of(" \t\r\n") != std::string::npos) {
      throw PreconditionError("write_snapshot: field names must be non-empty words");
    }
  }
  std::ostringstream h;
  h << kMagic << "\n";
  h << "format_version " << Snapshot::kFormatVersion << "\n";
  h << "endianness little\n";
  h << "dims " << s.dims[0] << " " << s.dims[1] << " " << s.dims[2] << "\n";
  h << "periods " << format_double(s.periods[0]) << " " << format_double(s.periods[1]) << " "
    << format_double(s.periods[2]) << "\n";
  h << "epsilon " << format_double(s.epsilon) << "\n";
  h << "nu " << format_double(s.nu) << "\n";
  h << "gamma " << format_double(s.gamma) << "\n";
  h << "scheme " << (s.scheme.empty() ? "-" : s.scheme) << "\n";
  h << "time " << format_double(s.time) << "\n";
  h << "fields";
  for (const auto& name : s.names) h << " " << name;
  h << "\n";
  h << "payload_bytes " << n * s.fields.size() * 8 << "\n";
  h << "end_header\n";
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("write_snapshot: cannot open " + path.string());
  const std::string header = h.str();
  os.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const auto& f : s.fields) put_le(os, f);
  if (!os) throw Error("write_snapshot: write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_snapshot: cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw FormatError("read_snapshot: not a rotcap snapshot");
  std::map<std::string, std::string> kv;
  bool closed = false;
  while (std::getline(is, line)) {
    if (line == "end_header") {
      closed = true;
      break;
    }
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw FormatError("read_snapshot: malformed header line '" + line + "'");
    kv[line.substr(0, sp)] = line.substr(sp + 1);
  }
  if (!closed) throw FormatError("read_snapshot: header is not terminated");
  auto need = [&](const std::string& k) -> const std::string& {
    const auto it = kv.find(k);
    if (it == kv.end()) throw FormatError("read_snapshot: header lacks '" + k + "'");
    return it->second;
  };
  if (need("format_version") != std::to_string(Snapshot::kFormatVersion)) {
    throw FormatError("read_snapshot: unsupported format version " + need("format_version"));
  }
  if (need("endianness") != "little") {
    throw FormatError("read_snapshot: unsupported format: payload endianness '" + need("endianness") + "'");
  }
  Snapshot s;
  {
    std::istringstream d(need("dims"));
    if (!(d >> s.dims[0] >> s.dims[1] >> s.dims[2]) || s.dims[0] < 1 || s.dims[1] < 1 || s.dims[2] < 1) {
      throw FormatError("read_snapshot: bad dims");
    }
    std::istringstream p(need("periods"));
    std::string a, b, c;
    if (!(p >> a >> b >> c)) throw FormatError("read_snapshot: bad periods");
    s.periods = {parse_double("periods", a), parse_double("periods", b), parse_double("periods", c)};
  }
  s.epsilon = parse_double("epsilon", need("epsilon"));
  s.nu = parse_double("nu", need("nu"));
  s.gamma = parse_double("gamma", need("gamma"));
  s.scheme = need("scheme") == "-" ? "" : need("scheme");
  s.time = parse_double("time", need("time"));
  {
    std::istringstream f(need("fields"));
    std::string name;
    while (f >> name) s.names.push_back(name);
  }
  const std::size_t n = static_cast<std::size_t>(s.dims[0]) * s.dims[1] * s.dims[2];
  const std::size_t declared = static_cast<std::size_t>(std::stoull(need("payload_bytes")));
  if (declared != n * s.names.size() * 8) throw FormatError("read_snapshot: declared payload size disagrees with dims");
  std::vector<unsigned char> payload(declared);
  is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(declared));
  if (static_cast<std::size_t>(is.gcount()) != declared) {
    throw FormatError("read_snapshot: payload size mismatch (truncated file)");
  }
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("read_snapshot: payload size mismatch (trailing bytes)");
  for (std::size_t i = 0; i < s.names.size(); ++i) s.fields.push_back(get_le(payload.data() + 8 * n * i, n));
  return s;
}

}  // namespace rotcap::io

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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "rotcap/spectral/field.hpp"

namespace rotcap::io {

/// On-disk layout: a text header of "key value" lines closed by
/// "end_header", then every field as raw little-endian float64 values in
/// the grid's physical (row-major [n3][n2][n1]) order.
struct Snapshot {
  static constexpr int kFormatVersion = 1;

  std::array<int, 3> dims{1, 1, 1};
  std::array<double, 3> periods{0.0, 0.0, 0.0};
  double epsilon = 0.0;
  double nu = 0.0;
  double gamma = 0.0;
  std::string scheme;
  double time = 0.0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> fields;

  /// Takes dims and periods from the first field added.
  void add(const std::string& name, const spectral::SpectralField& f);
  /// The named field on `grid`, which must match dims.
  spectral::SpectralField field(const std::string& name, const spectral::GridPtr& grid) const;
};

/// Throws PreconditionError on NaN/Inf values or inconsistent sizes.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot);
/// Throws FormatError on a bad tag, version, endianness or payload size.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace rotcap::io

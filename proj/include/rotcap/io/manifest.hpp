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

namespace rotcap::io {

/// Lowercase hex SHA-256 of a file's bytes / of a string.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

struct OutputEntry {
  std::string path;  ///< relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  nlohmann::json config;
  std::string code_version;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  int workers = 1;
  std::vector<OutputEntry> outputs;
  nlohmann::json summary = nlohmann::json::object();

  /// Hashes `dir / relative` and records it.
  void add_output(const std::filesystem::path& dir, const std::string& relative);
  /// SHA-256 over the sorted "path sha256" lines of the outputs. Wall
  /// times are excluded, so identical runs give identical digests.
  std::string outputs_digest() const;

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

/// Current UTC time as ISO 8601.
std::string utc_now();

}  // namespace rotcap::io

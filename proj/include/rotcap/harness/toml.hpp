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
#include <map>
#include <string>
#include <vector>

namespace rotcap::harness {

/// A scalar or flat array value of the TOML subset.
struct TomlValue {
  enum class Kind { Bool, Integer, Float, String, Array };
  Kind kind = Kind::String;
  bool boolean = false;
  std::int64_t integer = 0;
  double real = 0.0;
  std::string text;
  std::vector<TomlValue> items;
  int line = 0;  ///< 0 for values that came from overrides

  bool is_number() const { return kind == Kind::Integer || kind == Kind::Float; }
  double as_number() const { return kind == Kind::Integer ? static_cast<double>(integer) : real; }
  std::string describe() const;
};

/// Flat map from dotted keys ("grid.nx") to values.
using TomlDocument = std::map<std::string, TomlValue>;

/// Subset grammar: comments, [table] and [a.b] headers, bare or dotted
/// keys, basic and literal strings, integers, floats, booleans and
/// arrays of scalars (possibly spanning lines). Throws ConfigError naming the line.
TomlDocument parse_toml(const std::string& text);
TomlDocument load_toml(const std::filesystem::path& path);

/// Parses one value. With bare_strings, text that is not a TOML value is
/// taken as a string (for command-line overrides).
TomlValue parse_toml_value(const std::string& text, bool bare_strings = false);

/// Applies "dotted.key=value" overrides in order.
void apply_overrides(TomlDocument& doc, const std::vector<std::string>& overrides);

}  // namespace rotcap::harness

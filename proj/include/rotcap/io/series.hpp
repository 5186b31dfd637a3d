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

#include <filesystem>
#include <string>
#include <vector>

namespace rotcap::io {

/// Named columns of finite doubles; the first column is time and must not
/// decrease.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  /// Values of one column by name.
  std::vector<double> column(const std::string& name) const;

  /// Throws PreconditionError on a width mismatch, NaN/Inf or decreasing time.
  void add_row(std::vector<double> row);

  /// RFC 4180 CSV: header row, CRLF line ends, quoted where needed.
  void write_csv(const std::filesystem::path& path) const;
  static TimeSeries read_csv(const std::filesystem::path& path);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Appends one row to a CSV series, writing the header if the file is new
/// and checking it otherwise.
void append_series(const std::filesystem::path& path, const std::vector<std::string>& columns,
                   const std::vector<double>& row);

/// Quotes a CSV field when it holds a comma, quote, CR or LF.
std::string csv_field(const std::string& text);
/// Splits one CSV record (quotes honoured, no embedded line breaks).
std::vector<std::string> csv_split(const std::string& line);

}  // namespace rotcap::io

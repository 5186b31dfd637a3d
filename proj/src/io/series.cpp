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

#include "rotcap/io/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "rotcap/error.hpp"
#include "rotcap/io/format.hpp"

namespace rotcap::io {

namespace {

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\r\n";
}

std::string format_row(const std::vector<double>& row) {
  std::vector<std::string> f;
  f.reserve(row.size());
  for (double v : row) f.push_back(format_double(v));
  return join(f);
}

void check_row(const std::vector<std::string>& columns, const std::vector<double>& row) {
  if (row.size() != columns.size()) throw PreconditionError("time series: row width differs from the header");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!std::isfinite(row[i])) throw PreconditionError("time series: column '" + columns[i] + "' holds NaN or Inf");
  }
}

bool read_record(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw FormatError("csv: unterminated quoted field");
  return out;
}

TimeSeries::TimeSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw PreconditionError("time series: need at least one column");
}

std::vector<double> TimeSeries::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[c]);
    return out;
  }
  throw PreconditionError("time series: no column '" + name + "'");
}

void TimeSeries::add_row(std::vector<double> row) {
  check_row(columns_, row);
  if (!rows_.empty() && row.front() < rows_.back().front()) {
    throw PreconditionError("time series: time column must not decrease");
  }
  rows_.push_back(std::move(row));
}

void TimeSeries::write_csv(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("write_csv: cannot open " + path.string());
  os << join(columns_);
  for (const auto& r : rows_) os << format_row(r);
  if (!os) throw Error("write_csv: write failed for " + path.string());
}

TimeSeries TimeSeries::read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_csv: cannot open " + path.string());
  std::string line;
  if (!read_record(is, line)) throw FormatError("read_csv: empty file");
  TimeSeries ts(csv_split(line));
  while (read_record(is, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    std::vector<double> row;
    for (const auto& s : f) {
      double v = 0.0;
      const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
      if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw FormatError("read_csv: bad number '" + s + "'");
      row.push_back(v);
    }
    ts.add_row(std::move(row));
  }
  return ts;
}

void append_series(const std::filesystem::path& path, const std::vector<std::string>& columns,
                   const std::vector<double>& row) {
  check_row(columns, row);
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  if (!fresh) {
    std::ifstream is(path, std::ios::binary);
    std::string header;
    read_record(is, header);
    if (csv_split(header) != columns) throw FormatError("append_series: header of " + path.string() + " differs");
  }
  std::ofstream os(path, std::ios::binary | std::ios::app);
  if (!os) throw Error("append_series: cannot open " + path.string());
  if (fresh) os << join(columns);
  os << format_row(row);
}

}  // namespace rotcap::io

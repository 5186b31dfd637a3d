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

#include "rotcap/harness/toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rotcap/error.hpp"

namespace rotcap::harness {

namespace {

class Cursor {
 public:
  Cursor(const std::string& s, int line) : s_(s), line_(line) {}

  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  char take() { return s_[i_++]; }
  std::size_t pos() const { return i_; }
  const std::string& text() const { return s_; }
  void seek(std::size_t p) { i_ = p; }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    if (line_ > 0) os << "line " << line_ << ": ";
    os << what;
    throw ConfigError("", os.str());
  }

  int line() const { return line_; }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_;
};

bool bare_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::string parse_key(Cursor& c) {
  std::string key;
  for (;;) {
    c.skip_ws();
    std::string part;
    while (!c.done() && bare_key_char(c.peek())) part += c.take();
    if (part.empty()) c.fail("expected a key");
    key += part;
    c.skip_ws();
    if (c.peek() != '.') break;
    c.take();
    key += '.';
  }
  return key;
}

std::string parse_basic_string(Cursor& c) {
  c.take();  // opening quote
  std::string out;
  for (;;) {
    if (c.done()) c.fail("unterminated string");
    char ch = c.take();
    if (ch == '"') return out;
    if (ch != '\\') {
      out += ch;
      continue;
    }
    if (c.done()) c.fail("unterminated escape");
    switch (c.take()) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      default: c.fail("unsupported escape sequence");
    }
  }
}

std::string parse_literal_string(Cursor& c) {
  c.take();
  std::string out;
  while (!c.done() && c.peek() != '\'') out += c.take();
  if (c.done()) c.fail("unterminated string");
  c.take();
  return out;
}

TomlValue parse_scalar(Cursor& c) {
  TomlValue v;
  v.line = c.line();
  const char ch = c.peek();
  if (ch == '"') {
    v.kind = TomlValue::Kind::String;
    v.text = parse_basic_string(c);
    return v;
  }
  if (ch == '\'') {
    v.kind = TomlValue::Kind::String;
    v.text = parse_literal_string(c);
    return v;
  }
  std::string tok;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != ' ' && c.peek() != '\t' && c.peek() != '#') {
    tok += c.take();
  }
  if (tok == "true" || tok == "false") {
    v.kind = TomlValue::Kind::Bool;
    v.boolean = tok == "true";
    return v;
  }
  std::string digits;
  for (char d : tok) {
    if (d != '_') digits += d;
  }
  if (digits.empty()) c.fail("expected a value");
  const char* b = digits.data();
  const char* e = b + digits.size();
  if (*b == '+') ++b;
  const bool floaty = digits.find_first_of(".eE") != std::string::npos;
  if (!floaty) {
    std::int64_t iv = 0;
    const auto r = std::from_chars(b, e, iv);
    if (r.ec == std::errc() && r.ptr == e) {
      v.kind = TomlValue::Kind::Integer;
      v.integer = iv;
      return v;
    }
  } else {
    double dv = 0.0;
    const auto r = std::from_chars(b, e, dv);
    if (r.ec == std::errc() && r.ptr == e && std::isfinite(dv)) {
      v.kind = TomlValue::Kind::Float;
      v.real = dv;
      return v;
    }
  }
  c.fail("cannot parse value '" + tok + "'");
}

TomlValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.peek() != '[') return parse_scalar(c);
  TomlValue arr;
  arr.kind = TomlValue::Kind::Array;
  arr.line = c.line();
  c.take();
  for (;;) {
    c.skip_ws();
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ']') {
      c.take();
      return arr;
    }
    if (c.peek() == '[') c.fail("nested arrays are not supported");
    arr.items.push_back(parse_scalar(c));
    c.skip_ws();
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ',') {
      c.take();
    } else if (c.peek() != ']') {
      c.fail("expected ',' or ']' in array");
    }
  }
}

void expect_end(Cursor& c) {
  c.skip_ws();
  if (!c.done() && c.peek() != '#') c.fail("unexpected trailing text");
}

// Net '[' minus ']' outside strings and comments; the text after '#'
// outside strings is dropped from `line`.
int bracket_depth(std::string& line) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quote) {
      if (ch == '\\' && quote == '"') ++i;
      else if (ch == quote) quote = 0;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
    } else if (ch == '#') {
      line.resize(i);
      break;
    } else if (ch == '[') {
      ++depth;
    } else if (ch == ']') {
      --depth;
    }
  }
  return depth;
}

}  // namespace

std::string TomlValue::describe() const {
  switch (kind) {
    case Kind::Bool: return "boolean";
    case Kind::Integer: return "integer";
    case Kind::Float: return "float";
    case Kind::String: return "string";
    case Kind::Array: return "array";
  }
  return "value";
}

TomlDocument parse_toml(const std::string& text) {
  TomlDocument doc;
  std::istringstream is(text);
  std::string line;
  std::string table;
  std::map<std::string, int> tables;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Cursor c(line, n);
    c.skip_ws();
    if (c.done() || c.peek() == '#') continue;
    if (c.peek() == '[') {
      c.take();
      if (c.peek() == '[') c.fail("arrays of tables are not supported");
      table = parse_key(c);
      if (c.peek() != ']') c.fail("expected ']' after table name");
      c.take();
      expect_end(c);
      if (!tables.emplace(table, n).second) c.fail("table [" + table + "] defined twice");
      continue;
    }
    const std::string key = (table.empty() ? "" : table + ".") + parse_key(c);
    if (c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
    c.take();
    // A value whose brackets stay open continues on the following lines.
    std::string value = line.substr(c.pos());
    const int first = n;
    int depth = bracket_depth(value);
    while (depth > 0) {
      std::string more;
      if (!std::getline(is, more)) break;
      ++n;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      depth += bracket_depth(more);
      value += ' ' + more;
    }
    Cursor vc(value, first);
    TomlValue v = parse_value(vc);
    expect_end(vc);
    if (doc.count(key)) c.fail("key '" + key + "' defined twice");
    doc.emplace(key, std::move(v));
  }
  return doc;
}

TomlDocument load_toml(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return parse_toml(os.str());
}

TomlValue parse_toml_value(const std::string& text, bool bare_strings) {
  Cursor c(text, 0);
  try {
    TomlValue v = parse_value(c);
    expect_end(c);
    return v;
  } catch (const ConfigError&) {
    if (!bare_strings) throw;
    TomlValue v;
    v.kind = TomlValue::Kind::String;
    v.text = text;
    return v;
  }
}

void apply_overrides(TomlDocument& doc, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("", "override '" + o + "' is not key=value");
    std::string key = o.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    Cursor kc(key, 0);
    const std::string parsed = parse_key(kc);
    if (!kc.done()) throw ConfigError(key, "malformed override key");
    std::string value = o.substr(eq + 1);
    const auto b = value.find_first_not_of(" \t");
    const auto e = value.find_last_not_of(" \t");
    value = b == std::string::npos ? std::string() : value.substr(b, e - b + 1);
    doc[parsed] = parse_toml_value(value, true);
  }
}

}  // namespace rotcap::harness

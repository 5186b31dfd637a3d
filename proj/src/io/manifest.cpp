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

#include "rotcap/io/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>

#include "rotcap/error.hpp"

namespace rotcap::io {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256: init failed");
  }
  void update(const void* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw Error("sha256: update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1) throw Error("sha256: final failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[md[i] >> 4];
      out += kHex[md[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("sha256_file: cannot open " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (is) {
    is.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(is.gcount()));
  }
  return h.hex();
}

void RunManifest::add_output(const std::filesystem::path& dir, const std::string& relative) {
  const auto full = dir / relative;
  outputs.push_back({relative, sha256_file(full), std::filesystem::file_size(full)});
}

std::string RunManifest::outputs_digest() const {
  std::vector<std::string> lines;
  for (const auto& o : outputs) lines.push_back(o.path + " " + o.sha256 + "\n");
  std::sort(lines.begin(), lines.end());
  std::string all;
  for (const auto& l : lines) all += l;
  return sha256_hex(all);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["config"] = config;
  j["code_version"] = code_version;
  j["seed"] = seed;
  j["started"] = started;
  j["finished"] = finished;
  j["workers"] = workers;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  j["outputs"] = outs;
  j["outputs_digest"] = outputs_digest();
  j["summary"] = summary;
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("RunManifest::write: cannot open " + path.string());
  os << to_json().dump(2) << "\n";
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace rotcap::io

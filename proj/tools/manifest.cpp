// Copyright 2026 The swissrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "swissrank/csv.hpp"
#include "swissrank/error.hpp"

namespace swissrank::cli {

std::string sha256_file(const std::filesystem::path& path) {
  const std::string data = read_text_file(path);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
    throw IoError("sha256 failed for " + path.string());
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), sha256_file(path));
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "swissrank";
  doc["version"] = SWISSRANK_VERSION;
  doc["command"] = command;
  doc["argv"] = argv;
  doc["parameters"] = parameters;
  auto in = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : inputs) in.push_back({{"path", path}, {"sha256", digest}});
  doc["inputs"] = std::move(in);
  doc["outputs"] = outputs;
  return doc;
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& doc) {
  RunManifest m;
  try {
    m.command = doc.at("command").get<std::string>();
    m.argv = doc.at("argv").get<std::vector<std::string>>();
    if (doc.contains("parameters")) m.parameters = doc.at("parameters");
    for (const auto& in : doc.at("inputs")) {
      m.inputs.emplace_back(in.at("path").get<std::string>(), in.at("sha256").get<std::string>());
    }
    if (doc.contains("outputs")) m.outputs = doc.at("outputs").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

}  // namespace swissrank::cli

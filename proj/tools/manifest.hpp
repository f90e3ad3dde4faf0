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

#ifndef SWISSRANK_TOOLS_MANIFEST_HPP_
#define SWISSRANK_TOOLS_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace swissrank::cli {

// Lower-case hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

// Record of one CLI run: enough to replay it and check the inputs are the
// same bytes. Contains no timestamps or host details, so it is itself
// reproducible.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  // replayable arguments, seed made explicit
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::vector<std::string> outputs;

  void add_input(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& doc);
};

}  // namespace swissrank::cli

#endif  // SWISSRANK_TOOLS_MANIFEST_HPP_

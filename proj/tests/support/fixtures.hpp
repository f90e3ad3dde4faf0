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

#ifndef SWISSRANK_TESTS_SUPPORT_FIXTURES_HPP_
#define SWISSRANK_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "swissrank/score_table.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace swissrank::testing {

inline std::vector<ModelId> model_names(std::size_t m) {
  std::vector<ModelId> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
  return names;
}

inline std::vector<std::string> round_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("r" + std::to_string(i + 1));
  return names;
}

// Tensor from p(i, j, k) evaluated for i < j.
inline WinRateTensor make_tensor(std::size_t m, std::size_t k,
                                 const std::function<double(std::size_t, std::size_t, std::size_t)>& p) {
  auto tensor = WinRateTensor::uniform(model_names(m), round_names(k));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t r = 0; r < k; ++r) tensor.set(i, j, r, p(i, j, r));
    }
  }
  return tensor;
}

// Lower index beats higher index in every round.
inline WinRateTensor strict_order_tensor(std::size_t m, std::size_t k) {
  return make_tensor(m, k, [](auto, auto, auto) { return 1.0; });
}

// Entries drawn from {0, 0.5, 1}, or from {0, 1} when binary.
inline WinRateTensor random_tensor(std::mt19937_64& gen, std::size_t m, std::size_t k, bool binary) {
  std::uniform_int_distribution<int> pick(0, binary ? 1 : 2);
  return make_tensor(m, k, [&](auto, auto, auto) { return pick(gen) * (binary ? 1.0 : 0.5); });
}

// Multiples of 1/1024, so 1 - p is exact in binary.
inline WinRateTensor random_real_tensor(std::mt19937_64& gen, std::size_t m, std::size_t k) {
  std::uniform_int_distribution<int> steps(0, 1024);
  return make_tensor(m, k, [&](auto, auto, auto) { return steps(gen) / 1024.0; });
}

// Dense table, scores on a 0.5 grid so ties occur.
inline ScoreTable random_table(std::mt19937_64& gen, std::size_t m, std::size_t d) {
  std::uniform_int_distribution<int> half_points(0, 200);
  std::vector<DatasetId> datasets;
  for (std::size_t j = 0; j < d; ++j) datasets.push_back("d" + std::to_string(j));
  std::vector<std::optional<double>> scores;
  for (std::size_t i = 0; i < m * d; ++i) scores.push_back(half_points(gen) * 0.5);
  return ScoreTable(model_names(m), datasets, scores);
}

// Each dataset is its own round.
inline RoundSequence one_round_per_dataset(const ScoreTable& table) {
  std::vector<Round> rounds;
  for (const auto& d : table.datasets()) rounds.push_back({d, {d}});
  return RoundSequence(rounds);
}

inline std::filesystem::path data_dir() { return SWISSRANK_TEST_DATA_DIR; }

class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("swissrank-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace swissrank::testing

#endif  // SWISSRANK_TESTS_SUPPORT_FIXTURES_HPP_

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

#ifndef SWISSRANK_SCORE_TABLE_HPP_
#define SWISSRANK_SCORE_TABLE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swissrank {

using ModelId = std::string;
using DatasetId = std::string;

// Model x dataset benchmark scores on a [0, 100] scale. A cell without a value
// is a missing score and is never silently coerced.
class ScoreTable {
 public:
  static constexpr double kMinScore = 0.0;
  static constexpr double kMaxScore = 100.0;

  ScoreTable() = default;

  // Validates shape, score range and model/dataset uniqueness.
  ScoreTable(std::vector<ModelId> models, std::vector<DatasetId> datasets,
             std::vector<std::optional<double>> scores);

  std::size_t num_models() const { return models_.size(); }
  std::size_t num_datasets() const { return datasets_.size(); }
  const std::vector<ModelId>& models() const { return models_; }
  const std::vector<DatasetId>& datasets() const { return datasets_; }

  const std::optional<double>& at(std::size_t model, std::size_t dataset) const {
    return scores_[model * datasets_.size() + dataset];
  }
  void set(std::size_t model, std::size_t dataset, std::optional<double> value);

  std::optional<std::size_t> find_model(std::string_view name) const;
  std::optional<std::size_t> find_dataset(std::string_view name) const;
  std::size_t model_index(std::string_view name) const;    // UnknownModelError
  std::size_t dataset_index(std::string_view name) const;  // UnknownDatasetError

  std::size_t missing_count() const;

  friend bool operator==(const ScoreTable&, const ScoreTable&) = default;

 private:
  std::vector<ModelId> models_;
  std::vector<DatasetId> datasets_;
  std::vector<std::optional<double>> scores_;
};

enum class ScoreFormat { kCsv, kJson };

ScoreTable parse_score_table_csv(std::string_view text);
ScoreTable parse_score_table_json(std::string_view text);
ScoreTable load_score_table(const std::filesystem::path& path, ScoreFormat format);
// Format chosen from the extension (.json, anything else is CSV).
ScoreTable load_score_table(const std::filesystem::path& path);

// Scores are written in shortest round-trip form, so reloading yields
// bitwise-identical values.
std::string score_table_to_csv(const ScoreTable& table);
std::string score_table_to_json(const ScoreTable& table);

struct Round {
  std::string label;
  std::vector<DatasetId> datasets;

  friend bool operator==(const Round&, const Round&) = default;
};

// Ordered tournament rounds; round k is played on the datasets listed for it.
class RoundSequence {
 public:
  RoundSequence() = default;
  // Throws DomainError for an empty sequence or an empty round, and
  // DuplicateDatasetError when a dataset is listed twice.
  explicit RoundSequence(std::vector<Round> rounds);

  std::size_t size() const { return rounds_.size(); }
  const std::vector<Round>& rounds() const { return rounds_; }
  const Round& operator[](std::size_t k) const { return rounds_[k]; }
  std::vector<std::string> labels() const;

  friend bool operator==(const RoundSequence&, const RoundSequence&) = default;

 private:
  std::vector<Round> rounds_;
};

RoundSequence parse_round_sequence_json(std::string_view text);
RoundSequence load_round_sequence(const std::filesystem::path& path);
std::string round_sequence_to_json(const RoundSequence& sequence);

enum class MissingPolicy { kError, kTreatAsLoss };

std::string_view to_string(MissingPolicy policy);
MissingPolicy parse_missing_policy(std::string_view text);

struct MissingCell {
  std::size_t model;
  std::size_t dataset;

  friend bool operator==(const MissingCell&, const MissingCell&) = default;
};

// A score table and sequence known to be consistent with each other.
struct ValidatedInputs {
  ScoreTable table;
  RoundSequence sequence;
  MissingPolicy policy = MissingPolicy::kError;
  // Column indices into `table` for every round, in sequence order.
  std::vector<std::vector<std::size_t>> round_columns;
  // Missing cells referenced by the sequence (only under kTreatAsLoss).
  std::vector<MissingCell> flagged_missing;

  friend bool operator==(const ValidatedInputs&, const ValidatedInputs&) = default;
};

ValidatedInputs validate_inputs(const ScoreTable& table, const RoundSequence& sequence,
                                MissingPolicy policy = MissingPolicy::kError);

}  // namespace swissrank

#endif  // SWISSRANK_SCORE_TABLE_HPP_

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

#include "swissrank/score_table.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "swissrank/csv.hpp"
#include "swissrank/error.hpp"

namespace swissrank {
namespace {

using nlohmann::json;

void check_score(double value, const ModelId& model, const DatasetId& dataset) {
  if (!std::isfinite(value) || value < ScoreTable::kMinScore ||
      value > ScoreTable::kMaxScore) {
    std::ostringstream msg;
    msg << "score " << format_double(value) << " for model '" << model
        << "' on dataset '" << dataset << "' is outside [0, 100]";
    throw DomainError(msg.str());
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

ScoreTable::ScoreTable(std::vector<ModelId> models, std::vector<DatasetId> datasets,
                       std::vector<std::optional<double>> scores)
    : models_(std::move(models)),
      datasets_(std::move(datasets)),
      scores_(std::move(scores)) {
  if (scores_.size() != models_.size() * datasets_.size()) {
    throw DimensionMismatchError("score matrix has " + std::to_string(scores_.size()) +
                                 " cells, expected " +
                                 std::to_string(models_.size() * datasets_.size()));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& m : models_) {
    if (m.empty()) throw ParseError("model name must be non-empty");
    if (!seen.insert(m).second) throw DuplicateModelError("duplicate model '" + m + "'");
  }
  seen.clear();
  for (const auto& d : datasets_) {
    if (d.empty()) throw ParseError("dataset name must be non-empty");
    if (!seen.insert(d).second) {
      throw DuplicateDatasetError("duplicate dataset column '" + d + "'");
    }
  }
  for (std::size_t m = 0; m < models_.size(); ++m) {
    for (std::size_t d = 0; d < datasets_.size(); ++d) {
      if (const auto& v = at(m, d)) check_score(*v, models_[m], datasets_[d]);
    }
  }
}

void ScoreTable::set(std::size_t model, std::size_t dataset, std::optional<double> value) {
  if (value) check_score(*value, models_.at(model), datasets_.at(dataset));
  scores_.at(model * datasets_.size() + dataset) = value;
}

std::optional<std::size_t> ScoreTable::find_model(std::string_view name) const {
  const auto it = std::find(models_.begin(), models_.end(), name);
  if (it == models_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - models_.begin());
}

std::optional<std::size_t> ScoreTable::find_dataset(std::string_view name) const {
  const auto it = std::find(datasets_.begin(), datasets_.end(), name);
  if (it == datasets_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - datasets_.begin());
}

std::size_t ScoreTable::model_index(std::string_view name) const {
  if (auto i = find_model(name)) return *i;
  throw UnknownModelError("unknown model '" + std::string(name) + "'");
}

std::size_t ScoreTable::dataset_index(std::string_view name) const {
  if (auto i = find_dataset(name)) return *i;
  throw UnknownDatasetError("unknown dataset '" + std::string(name) + "'");
}

std::size_t ScoreTable::missing_count() const {
  return static_cast<std::size_t>(
      std::count_if(scores_.begin(), scores_.end(), [](const auto& v) { return !v; }));
}

ScoreTable parse_score_table_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError("score CSV is empty");
  const auto& header = rows.front();
  if (header.empty() || trim(header[0]) != "model") {
    throw ParseError("score CSV header must start with 'model'");
  }
  std::vector<DatasetId> datasets;
  for (std::size_t c = 1; c < header.size(); ++c) datasets.push_back(trim(header[c]));

  std::vector<ModelId> models;
  std::vector<std::optional<double>> scores;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError("score CSV line " + std::to_string(r + 1) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    models.push_back(trim(row[0]));
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto cell = trim(row[c]);
      if (cell.empty()) {
        scores.emplace_back();
        continue;
      }
      const double value =
          parse_double(cell, "model '" + models.back() + "', dataset '" + datasets[c - 1] + "'");
      check_score(value, models.back(), datasets[c - 1]);
      scores.emplace_back(value);
    }
  }
  return ScoreTable(std::move(models), std::move(datasets), std::move(scores));
}

ScoreTable parse_score_table_json(std::string_view text) {
  const json doc = parse_json(text, "score JSON");
  try {
    const auto models = doc.at("models").get<std::vector<ModelId>>();
    const auto datasets = doc.at("datasets").get<std::vector<DatasetId>>();
    const auto& rows = doc.at("scores");
    if (!rows.is_array() || rows.size() != models.size()) {
      throw ParseError("score JSON: 'scores' must have one row per model");
    }
    std::vector<std::optional<double>> scores;
    for (std::size_t m = 0; m < rows.size(); ++m) {
      const auto& row = rows[m];
      if (!row.is_array() || row.size() != datasets.size()) {
        throw ParseError("score JSON: row " + std::to_string(m) +
                         " must have one entry per dataset");
      }
      for (std::size_t d = 0; d < row.size(); ++d) {
        if (row[d].is_null()) {
          scores.emplace_back();
        } else if (row[d].is_number()) {
          const double value = row[d].get<double>();
          check_score(value, models[m], datasets[d]);
          scores.emplace_back(value);
        } else {
          throw ParseError("score JSON: non-numeric cell for model '" + models[m] + "'");
        }
      }
    }
    return ScoreTable(models, datasets, std::move(scores));
  } catch (const json::exception& e) {
    throw ParseError(std::string("score JSON: ") + e.what());
  }
}

ScoreTable load_score_table(const std::filesystem::path& path, ScoreFormat format) {
  const auto text = read_text_file(path);
  return format == ScoreFormat::kJson ? parse_score_table_json(text)
                                      : parse_score_table_csv(text);
}

ScoreTable load_score_table(const std::filesystem::path& path) {
  return load_score_table(path, path.extension() == ".json" ? ScoreFormat::kJson
                                                            : ScoreFormat::kCsv);
}

std::string score_table_to_csv(const ScoreTable& table) {
  std::vector<std::string> fields{"model"};
  fields.insert(fields.end(), table.datasets().begin(), table.datasets().end());
  std::string out = csv_line(fields);
  for (std::size_t m = 0; m < table.num_models(); ++m) {
    fields.assign(1, table.models()[m]);
    for (std::size_t d = 0; d < table.num_datasets(); ++d) {
      const auto& v = table.at(m, d);
      fields.push_back(v ? format_double(*v) : std::string());
    }
    out += csv_line(fields);
  }
  return out;
}

std::string score_table_to_json(const ScoreTable& table) {
  json rows = json::array();
  for (std::size_t m = 0; m < table.num_models(); ++m) {
    json row = json::array();
    for (std::size_t d = 0; d < table.num_datasets(); ++d) {
      const auto& v = table.at(m, d);
      row.push_back(v ? json(*v) : json(nullptr));
    }
    rows.push_back(std::move(row));
  }
  const json doc = {{"models", table.models()}, {"datasets", table.datasets()}, {"scores", rows}};
  return doc.dump(2) + "\n";
}

RoundSequence::RoundSequence(std::vector<Round> rounds) : rounds_(std::move(rounds)) {
  if (rounds_.empty()) throw DomainError("round sequence must contain at least one round");
  std::set<std::string_view> seen;
  for (std::size_t k = 0; k < rounds_.size(); ++k) {
    if (rounds_[k].datasets.empty()) {
      throw DomainError("round " + std::to_string(k + 1) + " ('" + rounds_[k].label +
                        "') lists no datasets");
    }
    for (const auto& d : rounds_[k].datasets) {
      if (!seen.insert(d).second) {
        throw DuplicateDatasetError("dataset '" + d + "' appears in more than one round (again in round " +
                                    std::to_string(k + 1) + ")");
      }
    }
  }
}

std::vector<std::string> RoundSequence::labels() const {
  std::vector<std::string> out;
  out.reserve(rounds_.size());
  for (const auto& r : rounds_) out.push_back(r.label);
  return out;
}

RoundSequence parse_round_sequence_json(std::string_view text) {
  const json doc = parse_json(text, "round sequence");
  if (!doc.is_array()) throw ParseError("round sequence must be a JSON array");
  std::vector<Round> rounds;
  try {
    for (const auto& entry : doc) {
      Round round;
      round.label = entry.at("label").get<std::string>();
      round.datasets = entry.at("datasets").get<std::vector<DatasetId>>();
      rounds.push_back(std::move(round));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("round sequence: ") + e.what());
  }
  return RoundSequence(std::move(rounds));
}

RoundSequence load_round_sequence(const std::filesystem::path& path) {
  return parse_round_sequence_json(read_text_file(path));
}

std::string round_sequence_to_json(const RoundSequence& sequence) {
  json doc = json::array();
  for (const auto& r : sequence.rounds()) {
    doc.push_back({{"label", r.label}, {"datasets", r.datasets}});
  }
  return doc.dump(2) + "\n";
}

std::string_view to_string(MissingPolicy policy) {
  return policy == MissingPolicy::kError ? "error" : "loss";
}

MissingPolicy parse_missing_policy(std::string_view text) {
  if (text == "error") return MissingPolicy::kError;
  if (text == "loss" || text == "treat_as_loss") return MissingPolicy::kTreatAsLoss;
  throw ParseError("unknown missing-score policy '" + std::string(text) + "'");
}

ValidatedInputs validate_inputs(const ScoreTable& table, const RoundSequence& sequence,
                                MissingPolicy policy) {
  ValidatedInputs out{table, sequence, policy, {}, {}};
  out.round_columns.reserve(sequence.size());
  for (const auto& round : sequence.rounds()) {
    std::vector<std::size_t> columns;
    for (const auto& name : round.datasets) {
      const auto column = table.find_dataset(name);
      if (!column) {
        throw UnknownDatasetError("round '" + round.label + "' references dataset '" + name +
                                  "', which is not in the score table");
      }
      columns.push_back(*column);
    }
    out.round_columns.push_back(std::move(columns));
  }
  for (const auto& columns : out.round_columns) {
    for (std::size_t m = 0; m < table.num_models(); ++m) {
      for (const auto d : columns) {
        if (table.at(m, d)) continue;
        if (policy == MissingPolicy::kError) {
          throw MissingScoreError("missing score for model '" + table.models()[m] +
                                  "' on dataset '" + table.datasets()[d] + "'");
        }
        out.flagged_missing.push_back({m, d});
      }
    }
  }
  return out;
}

}  // namespace swissrank

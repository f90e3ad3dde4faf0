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

#include "swissrank/winrate_tensor.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "swissrank/csv.hpp"
#include "swissrank/error.hpp"

namespace swissrank {
namespace {

using nlohmann::json;

// Per-dataset contribution of row model `a` against `b`, in half points:
// 2 = win, 1 = tie, 0 = loss.
int dataset_half_points(const std::optional<double>& a, const std::optional<double>& b) {
  if (a && b) {
    if (*a > *b) return 2;
    if (*a < *b) return 0;
    return 1;
  }
  if (a) return 2;
  if (b) return 0;
  return 1;
}

}  // namespace

WinRateTensor::WinRateTensor(std::vector<ModelId> models, std::vector<std::string> round_labels,
                             std::vector<double> entries)
    : models_(std::move(models)),
      round_labels_(std::move(round_labels)),
      entries_(std::move(entries)) {
  const std::size_t m = models_.size();
  const std::size_t k = round_labels_.size();
  if (entries_.size() != m * m * k) {
    throw DimensionMismatchError("tensor has " + std::to_string(entries_.size()) +
                                 " entries, expected M*M*K = " + std::to_string(m * m * k));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < k; ++r) entries_[index(i, i, r)] = 0.5;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = 0; r < k; ++r) {
        const double p = entries_[index(i, j, r)];
        if (!(p >= 0.0 && p <= 1.0)) {
          throw DomainError("tensor entry (" + models_[i] + ", " + models_[j] + ", round " +
                            std::to_string(r + 1) + ") = " + format_double(p) +
                            " is outside [0, 1]");
        }
        if (i < j && std::abs(p + entries_[index(j, i, r)] - 1.0) > kAntisymmetryTolerance) {
          throw DomainError("tensor entries for (" + models_[i] + ", " + models_[j] +
                            ", round " + std::to_string(r + 1) + ") do not sum to 1");
        }
      }
    }
  }
}

WinRateTensor WinRateTensor::uniform(std::vector<ModelId> models,
                                     std::vector<std::string> round_labels) {
  const std::size_t n = models.size() * models.size() * round_labels.size();
  return WinRateTensor(std::move(models), std::move(round_labels), std::vector<double>(n, 0.5));
}

void WinRateTensor::set(ModelIndex i, ModelIndex j, RoundIndex k, double p) {
  if (i >= num_models() || j >= num_models() || k >= num_rounds()) {
    throw DimensionMismatchError("tensor index out of range");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("win probability outside [0, 1]");
  if (i == j) return;
  entries_[index(i, j, k)] = p;
  entries_[index(j, i, k)] = 1.0 - p;
}

WinRateTensor build_tensor(const ValidatedInputs& inputs) {
  const auto& table = inputs.table;
  const std::size_t m = table.num_models();
  const std::size_t k = inputs.round_columns.size();
  std::vector<double> entries(m * m * k, 0.5);
  for (std::size_t r = 0; r < k; ++r) {
    const auto& columns = inputs.round_columns[r];
    // Compare 2(d + e/2) against n, all in integers.
    const int n = static_cast<int>(columns.size());
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        int half_points = 0;
        for (const auto d : columns) half_points += dataset_half_points(table.at(i, d), table.at(j, d));
        double p = 0.5;
        if (half_points > n) p = 1.0;
        else if (half_points < n) p = 0.0;
        entries[(i * m + j) * k + r] = p;
        entries[(j * m + i) * k + r] = 1.0 - p;
      }
    }
  }
  return WinRateTensor(table.models(), inputs.sequence.labels(), std::move(entries));
}

WinRateTensor build_per_dataset_tensor(const ScoreTable& table, MissingPolicy policy) {
  std::vector<Round> rounds;
  for (const auto& d : table.datasets()) rounds.push_back({d, {d}});
  return build_tensor(validate_inputs(table, RoundSequence(std::move(rounds)), policy));
}

ScoreTable perturb_scores(const ScoreTable& table, std::span<const ScorePerturbation> targets) {
  ScoreTable out = table;
  for (const auto& t : targets) {
    const auto m = table.model_index(t.model);
    const auto d = table.dataset_index(t.dataset);
    out.set(m, d, t.new_score);
  }
  return out;
}

std::vector<ScorePerturbation> parse_perturbations_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  std::vector<ScorePerturbation> out;
  if (rows.empty()) return out;
  const auto& header = rows.front();
  if (header.size() != 3 || header[0] != "model" || header[1] != "dataset" || header[2] != "score") {
    throw ParseError("perturbation CSV header must be 'model,dataset,score'");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3) {
      throw ParseError("perturbation CSV line " + std::to_string(r + 1) + " must have 3 fields");
    }
    out.push_back({row[0], row[1], parse_double(row[2], "perturbation line " + std::to_string(r + 1))});
  }
  return out;
}

std::string tensor_to_json(const WinRateTensor& tensor) {
  const std::size_t m = tensor.num_models();
  const std::size_t k = tensor.num_rounds();
  json w = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      json cell = json::array();
      for (std::size_t r = 0; r < k; ++r) cell.push_back(tensor.at(i, j, r));
      row.push_back(std::move(cell));
    }
    w.push_back(std::move(row));
  }
  json doc = {{"layout", "ijk"},
              {"models", tensor.models()},
              {"rounds", tensor.round_labels()},
              {"w", std::move(w)}};
  return doc.dump() + "\n";
}

WinRateTensor parse_tensor_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tensor JSON: ") + e.what());
  }
  try {
    if (doc.contains("layout") && doc.at("layout") != "ijk") {
      throw ParseError("tensor JSON: unsupported layout '" + doc.at("layout").dump() + "'");
    }
    auto models = doc.at("models").get<std::vector<ModelId>>();
    auto rounds = doc.at("rounds").get<std::vector<std::string>>();
    const auto& w = doc.at("w");
    const std::size_t m = models.size();
    const std::size_t k = rounds.size();
    if (w.size() != m) throw DimensionMismatchError("tensor JSON: 'w' must have M rows");
    std::vector<double> entries;
    entries.reserve(m * m * k);
    for (const auto& row : w) {
      if (row.size() != m) throw DimensionMismatchError("tensor JSON: each row must have M cells");
      for (const auto& cell : row) {
        if (cell.size() != k) throw DimensionMismatchError("tensor JSON: each cell must have K entries");
        for (const auto& v : cell) entries.push_back(v.get<double>());
      }
    }
    return WinRateTensor(std::move(models), std::move(rounds), std::move(entries));
  } catch (const json::exception& e) {
    throw ParseError(std::string("tensor JSON: ") + e.what());
  }
}

WinRateTensor load_tensor(const std::filesystem::path& path) {
  return parse_tensor_json(read_text_file(path));
}

}  // namespace swissrank

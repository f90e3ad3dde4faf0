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

#ifndef SWISSRANK_WINRATE_TENSOR_HPP_
#define SWISSRANK_WINRATE_TENSOR_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swissrank/score_table.hpp"

namespace swissrank {

using ModelIndex = std::size_t;
using RoundIndex = std::size_t;

// M x M x K pairwise win probabilities. at(i, j, k) is the probability that
// model i beats model j in round k (0-based). Entries satisfy
// at(i, j, k) + at(j, i, k) == 1 off the diagonal; the diagonal holds 0.5 and is
// never consulted by the engine.
class WinRateTensor {
 public:
  // Absolute slack accepted when checking antisymmetry of imported tensors.
  static constexpr double kAntisymmetryTolerance = 1e-9;

  WinRateTensor() = default;

  // `entries` uses the ijk layout: index (i * M + j) * K + k.
  // Throws DimensionMismatchError or DomainError (range, antisymmetry).
  WinRateTensor(std::vector<ModelId> models, std::vector<std::string> round_labels,
                std::vector<double> entries);

  // All-0.5 tensor; convenient starting point for fixtures.
  static WinRateTensor uniform(std::vector<ModelId> models,
                               std::vector<std::string> round_labels);

  std::size_t num_models() const { return models_.size(); }
  std::size_t num_rounds() const { return round_labels_.size(); }
  const std::vector<ModelId>& models() const { return models_; }
  const std::vector<std::string>& round_labels() const { return round_labels_; }
  std::span<const double> entries() const { return entries_; }

  double at(ModelIndex i, ModelIndex j, RoundIndex k) const {
    return entries_[(i * models_.size() + j) * round_labels_.size() + k];
  }

  // Sets at(i, j, k) = p and at(j, i, k) = 1 - p.
  void set(ModelIndex i, ModelIndex j, RoundIndex k, double p);

  friend bool operator==(const WinRateTensor&, const WinRateTensor&) = default;

 private:
  std::size_t index(ModelIndex i, ModelIndex j, RoundIndex k) const {
    return (i * models_.size() + j) * round_labels_.size() + k;
  }

  std::vector<ModelId> models_;
  std::vector<std::string> round_labels_;
  std::vector<double> entries_;
};

// Round-level pairwise outcome from per-dataset comparisons. For a round with
// n datasets, i wins d of them and ties e of them: f = (d + e/2) / n, and the
// entry is 1 if f > 1/2, 0 if f < 1/2, and 1/2 on an exact split. Missing
// cells (flagged under MissingPolicy::kTreatAsLoss) lose to any present score
// and tie with each other.
WinRateTensor build_tensor(const ValidatedInputs& inputs);

// One round per dataset of `table`, in column order. Used when the round
// order is itself random (weighted suites).
WinRateTensor build_per_dataset_tensor(const ScoreTable& table, MissingPolicy policy);

struct ScorePerturbation {
  ModelId model;
  DatasetId dataset;
  double new_score = 0.0;
};

// Copy of `table` with exactly the targeted cells overwritten.
ScoreTable perturb_scores(const ScoreTable& table, std::span<const ScorePerturbation> targets);

// CSV with header `model,dataset,score`.
std::vector<ScorePerturbation> parse_perturbations_csv(std::string_view text);

// {"layout":"ijk","models":[...],"rounds":[...],"w":[[[...]]]}
std::string tensor_to_json(const WinRateTensor& tensor);
WinRateTensor parse_tensor_json(std::string_view text);
WinRateTensor load_tensor(const std::filesystem::path& path);

}  // namespace swissrank

#endif  // SWISSRANK_WINRATE_TENSOR_HPP_

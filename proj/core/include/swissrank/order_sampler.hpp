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

#ifndef SWISSRANK_ORDER_SAMPLER_HPP_
#define SWISSRANK_ORDER_SAMPLER_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "swissrank/monte_carlo.hpp"
#include "swissrank/random.hpp"
#include "swissrank/score_table.hpp"

namespace swissrank {

// Datasets with importance weights but no prescribed order.
class WeightedSuite {
 public:
  WeightedSuite() = default;
  // Throws DomainError for a non-positive (or non-finite) weight, mismatched
  // lengths or an empty suite; DuplicateDatasetError for repeated names.
  WeightedSuite(std::vector<DatasetId> datasets, std::vector<double> weights);

  std::size_t size() const { return datasets_.size(); }
  const std::vector<DatasetId>& datasets() const { return datasets_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<DatasetId> datasets_;
  std::vector<double> weights_;
};

// [{"dataset": "...", "weight": 1.5}, ...]
WeightedSuite parse_weighted_suite_json(std::string_view text);
WeightedSuite load_weighted_suite(const std::filesystem::path& path);

struct SampledOrder {
  std::vector<std::size_t> order;  // suite indices, first round first
  std::vector<double> keys;        // keys[i] belongs to order[i]; decreasing
};

// Efraimidis-Spirakis weighted permutation: key_i = u_i^(1 / w_i) with u_i
// uniform on (0, 1), sorted descending. Draws one uniform per dataset, in
// suite order. The first position is dataset i with probability w_i / sum w.
SampledOrder sample_order(const WeightedSuite& suite, RandomStream& rng);

// Each dataset of the suite is one round; every Monte Carlo instance samples
// a fresh order before playing. Precomputes one per-dataset win matrix set and
// permutes slices rather than rebuilding the tensor.
SimulationResult estimate_weighted(const WeightedSuite& suite, const ScoreTable& table,
                                   const SimulationConfig& config,
                                   MissingPolicy policy = MissingPolicy::kError);

// ---------------------------------------------------------------------------
// Difficulty tiers
// ---------------------------------------------------------------------------

enum class Outcome : unsigned char { kMissing, kIncorrect, kCorrect };

// Model x question grading matrix.
struct QuestionOutcomes {
  std::vector<ModelId> models;
  std::vector<std::string> questions;
  std::vector<Outcome> cells;  // row-major, models x questions

  Outcome at(std::size_t model, std::size_t question) const {
    return cells[model * questions.size() + question];
  }
};

// CSV `model,question_id,outcome` with outcome 1 or 0. Models and questions
// are indexed in first-appearance order; absent rows are missing outcomes.
QuestionOutcomes parse_question_outcomes_csv(std::string_view text);
QuestionOutcomes load_question_outcomes(const std::filesystem::path& path);

// Accuracy interval in percent: [lower, upper), or [lower, upper] when
// includes_upper is set (the topmost band).
struct AccuracyBand {
  double lower = 0.0;
  double upper = 100.0;
  bool includes_upper = false;

  bool contains(double accuracy) const {
    return accuracy >= lower && (accuracy < upper || (includes_upper && accuracy == upper));
  }
  std::string label() const;
};

// [90,100], [80,90), ..., [0,10): highest band first.
std::vector<AccuracyBand> default_decile_bands();

// Bands from ascending cut points, e.g. {0, 50, 100} -> [50,100], [0,50).
// Throws DomainError unless the cuts start at 0, end at 100 and increase.
std::vector<AccuracyBand> bands_from_cuts(std::vector<double> cuts);

struct Tier {
  AccuracyBand band;
  std::vector<std::size_t> questions;  // indices into QuestionOutcomes::questions
};

struct TierPartition {
  std::vector<Tier> tiers;         // easiest (highest band) first; may be empty
  std::vector<double> accuracy;    // per question, percent of observed outcomes
};

// Assigns each question to the band holding its mean accuracy over non-missing
// outcomes. Throws EmptyQuestionError for a question nobody attempted and
// DomainError when the bands do not partition [0, 100].
TierPartition build_tiers(const QuestionOutcomes& outcomes,
                          std::vector<AccuracyBand> bands = default_decile_bands());

struct TierRounds {
  ScoreTable table;
  RoundSequence sequence;
  std::vector<std::string> warnings;  // one per dropped empty tier
};

// One synthetic dataset per non-empty tier, scored as each model's accuracy
// (percent) on that tier's questions; tiers keep their easiest-first order.
// A model with no observed outcome in a tier scores 0 for that tier.
TierRounds tier_sequence_to_rounds(const TierPartition& partition,
                                   const QuestionOutcomes& outcomes);

}  // namespace swissrank

#endif  // SWISSRANK_ORDER_SAMPLER_HPP_

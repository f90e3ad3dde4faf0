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

#include "swissrank/order_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "swissrank/csv.hpp"
#include "swissrank/error.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace swissrank {

WeightedSuite::WeightedSuite(std::vector<DatasetId> datasets, std::vector<double> weights)
    : datasets_(std::move(datasets)), weights_(std::move(weights)) {
  if (datasets_.empty()) throw DomainError("weighted suite is empty");
  if (datasets_.size() != weights_.size()) {
    throw DomainError("weighted suite needs one weight per dataset");
  }
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < datasets_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw DomainError("weight for dataset '" + datasets_[i] + "' must be positive, got " +
                        format_double(weights_[i]));
    }
    if (!seen.insert(datasets_[i]).second) {
      throw DuplicateDatasetError("dataset '" + datasets_[i] + "' listed twice in the suite");
    }
  }
}

WeightedSuite parse_weighted_suite_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("weighted suite: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("weighted suite must be a JSON array");
  std::vector<DatasetId> datasets;
  std::vector<double> weights;
  try {
    for (const auto& entry : doc) {
      datasets.push_back(entry.at("dataset").get<std::string>());
      weights.push_back(entry.at("weight").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("weighted suite: ") + e.what());
  }
  return WeightedSuite(std::move(datasets), std::move(weights));
}

WeightedSuite load_weighted_suite(const std::filesystem::path& path) {
  return parse_weighted_suite_json(read_text_file(path));
}

SampledOrder sample_order(const WeightedSuite& suite, RandomStream& rng) {
  const std::size_t n = suite.size();
  std::vector<double> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = std::pow(rng.uniform_open(), 1.0 / suite.weights()[i]);
  }
  SampledOrder out;
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  for (const auto i : out.order) out.keys.push_back(keys[i]);
  return out;
}

SimulationResult estimate_weighted(const WeightedSuite& suite, const ScoreTable& table,
                                   const SimulationConfig& config, MissingPolicy policy) {
  std::vector<std::size_t> columns;
  for (const auto& d : suite.datasets()) columns.push_back(table.dataset_index(d));
  std::vector<std::optional<double>> cells;
  for (std::size_t m = 0; m < table.num_models(); ++m) {
    for (const auto c : columns) cells.push_back(table.at(m, c));
  }
  // Tensor slice i is suite dataset i.
  const ScoreTable suite_table(table.models(), suite.datasets(), std::move(cells));
  const WinRateTensor tensor = build_per_dataset_tensor(suite_table, policy);

  const RoundOrderSampler sampler = [&suite](RandomStream& rng, std::vector<RoundIndex>& order) {
    const auto sampled = sample_order(suite, rng);
    std::copy(sampled.order.begin(), sampled.order.end(), order.begin());
  };
  return estimate_with_round_orders(tensor, config, sampler);
}

QuestionOutcomes parse_question_outcomes_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ParseError("outcome CSV is empty");
  const auto& header = rows.front();
  if (header.size() != 3 || header[0] != "model" || header[1] != "question_id" ||
      header[2] != "outcome") {
    throw ParseError("outcome CSV header must be 'model,question_id,outcome'");
  }
  QuestionOutcomes out;
  std::map<std::string, std::size_t> model_index;
  std::map<std::string, std::size_t> question_index;
  struct Entry {
    std::size_t model;
    std::size_t question;
    Outcome outcome;
  };
  std::vector<Entry> entries;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3) {
      throw ParseError("outcome CSV line " + std::to_string(r + 1) + " must have 3 fields");
    }
    Outcome outcome;
    if (row[2] == "1") {
      outcome = Outcome::kCorrect;
    } else if (row[2] == "0") {
      outcome = Outcome::kIncorrect;
    } else {
      throw ParseError("outcome CSV line " + std::to_string(r + 1) + ": outcome must be 1 or 0");
    }
    if (row[0].empty() || row[1].empty()) {
      throw ParseError("outcome CSV line " + std::to_string(r + 1) + ": empty model or question");
    }
    auto [mit, new_model] = model_index.try_emplace(row[0], out.models.size());
    if (new_model) out.models.push_back(row[0]);
    auto [qit, new_question] = question_index.try_emplace(row[1], out.questions.size());
    if (new_question) out.questions.push_back(row[1]);
    entries.push_back({mit->second, qit->second, outcome});
  }
  out.cells.assign(out.models.size() * out.questions.size(), Outcome::kMissing);
  for (const auto& e : entries) {
    auto& cell = out.cells[e.model * out.questions.size() + e.question];
    if (cell != Outcome::kMissing) {
      throw ParseError("duplicate outcome for model '" + out.models[e.model] + "' on question '" +
                       out.questions[e.question] + "'");
    }
    cell = e.outcome;
  }
  return out;
}

QuestionOutcomes load_question_outcomes(const std::filesystem::path& path) {
  return parse_question_outcomes_csv(read_text_file(path));
}

std::string AccuracyBand::label() const {
  return "[" + format_double(lower) + "," + format_double(upper) + (includes_upper ? "]" : ")");
}

std::vector<AccuracyBand> default_decile_bands() {
  std::vector<double> cuts;
  for (int c = 0; c <= 100; c += 10) cuts.push_back(c);
  return bands_from_cuts(std::move(cuts));
}

std::vector<AccuracyBand> bands_from_cuts(std::vector<double> cuts) {
  if (cuts.size() < 2 || cuts.front() != 0.0 || cuts.back() != 100.0) {
    throw DomainError("band cut points must start at 0 and end at 100");
  }
  std::vector<AccuracyBand> bands;
  for (std::size_t i = cuts.size() - 1; i > 0; --i) {
    if (!(cuts[i] > cuts[i - 1])) throw DomainError("band cut points must increase strictly");
    bands.push_back({cuts[i - 1], cuts[i], i == cuts.size() - 1});
  }
  return bands;
}

TierPartition build_tiers(const QuestionOutcomes& outcomes, std::vector<AccuracyBand> bands) {
  if (bands.empty()) throw DomainError("at least one accuracy band is required");
  std::sort(bands.begin(), bands.end(),
            [](const AccuracyBand& a, const AccuracyBand& b) { return a.lower > b.lower; });
  if (bands.front().upper != 100.0 || !bands.front().includes_upper || bands.back().lower != 0.0) {
    throw DomainError("accuracy bands must cover [0, 100] with the top band closed at 100");
  }
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    if (bands[i + 1].upper != bands[i].lower || bands[i + 1].includes_upper) {
      throw DomainError("accuracy bands must be contiguous and non-overlapping");
    }
  }

  TierPartition out;
  for (const auto& b : bands) out.tiers.push_back({b, {}});
  const std::size_t q_count = outcomes.questions.size();
  for (std::size_t q = 0; q < q_count; ++q) {
    std::size_t observed = 0;
    std::size_t correct = 0;
    for (std::size_t m = 0; m < outcomes.models.size(); ++m) {
      const auto o = outcomes.at(m, q);
      if (o == Outcome::kMissing) continue;
      ++observed;
      if (o == Outcome::kCorrect) ++correct;
    }
    if (observed == 0) {
      throw EmptyQuestionError("question '" + outcomes.questions[q] + "' has no recorded outcome");
    }
    const double accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(observed);
    out.accuracy.push_back(accuracy);
    for (auto& tier : out.tiers) {
      if (tier.band.contains(accuracy)) {
        tier.questions.push_back(q);
        break;
      }
    }
  }
  return out;
}

TierRounds tier_sequence_to_rounds(const TierPartition& partition,
                                   const QuestionOutcomes& outcomes) {
  std::vector<DatasetId> datasets;
  std::vector<Round> rounds;
  std::vector<std::string> warnings;
  std::vector<const Tier*> kept;
  for (std::size_t t = 0; t < partition.tiers.size(); ++t) {
    const auto& tier = partition.tiers[t];
    const std::string name = "B" + std::to_string(t + 1);
    if (tier.questions.empty()) {
      warnings.push_back("tier " + name + " " + tier.band.label() + " has no questions; dropped");
      continue;
    }
    datasets.push_back(name);
    rounds.push_back({name + " " + tier.band.label(), {name}});
    kept.push_back(&tier);
  }
  if (kept.empty()) throw DomainError("every tier is empty");

  std::vector<std::optional<double>> cells;
  for (std::size_t m = 0; m < outcomes.models.size(); ++m) {
    for (const auto* tier : kept) {
      std::size_t observed = 0;
      std::size_t correct = 0;
      for (const auto q : tier->questions) {
        const auto o = outcomes.at(m, q);
        if (o == Outcome::kMissing) continue;
        ++observed;
        if (o == Outcome::kCorrect) ++correct;
      }
      // A model with no attempt in a tier scores 0 there.
      cells.emplace_back(observed == 0 ? 0.0
                                       : 100.0 * static_cast<double>(correct) /
                                             static_cast<double>(observed));
    }
  }
  return {ScoreTable(outcomes.models, std::move(datasets), std::move(cells)),
          RoundSequence(std::move(rounds)), std::move(warnings)};
}

}  // namespace swissrank

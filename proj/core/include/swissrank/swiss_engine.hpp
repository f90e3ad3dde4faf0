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

#ifndef SWISSRANK_SWISS_ENGINE_HPP_
#define SWISSRANK_SWISS_ENGINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swissrank/random.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace swissrank {

// Cumulative match wins. Every match awards exactly one whole point and a bye
// awards none, so scores are integers and score-group equality is exact.
using Score = int;

// Active models and cumulative scores at a round boundary. `round` is the
// number of rounds already played, i.e. the 0-based index of the next round.
// Eliminated models keep their score frozen at the elimination-time value.
struct ContestState {
  std::vector<bool> active;
  std::vector<Score> scores;
  RoundIndex round = 0;

  static ContestState initial(std::size_t num_models);

  std::size_t num_models() const { return scores.size(); }
  std::size_t active_count() const;
  std::vector<ModelIndex> active_models() const;

  friend bool operator==(const ContestState&, const ContestState&) = default;
};

// Number of models removed from the minimum score group after each round.
class EliminationSchedule {
 public:
  EliminationSchedule() = default;  // no elimination

  static EliminationSchedule constant(unsigned count);
  // One count per round; at(k) beyond the list throws DimensionMismatchError.
  static EliminationSchedule per_round(std::vector<unsigned> counts);

  unsigned at(RoundIndex k) const;
  bool is_constant() const { return constant_; }
  unsigned constant_count() const { return constant_value_; }
  const std::vector<unsigned>& counts() const { return counts_; }

  friend bool operator==(const EliminationSchedule&, const EliminationSchedule&) = default;

 private:
  bool constant_ = true;
  unsigned constant_value_ = 0;
  std::vector<unsigned> counts_;
};

struct ScoreGroup {
  Score score = 0;
  std::vector<ModelIndex> members;  // ascending model index

  friend bool operator==(const ScoreGroup&, const ScoreGroup&) = default;
};

// Active models partitioned by exact cumulative score, highest score first.
std::vector<ScoreGroup> group_by_score(const ContestState& state);

struct MatchPair {
  ModelIndex first = 0;
  ModelIndex second = 0;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct GroupPairing {
  std::vector<MatchPair> pairs;
  std::optional<ModelIndex> bye;
};

// Uniformly random perfect matching of `group`: shuffle, then pair adjacent
// members. With an odd group the member left over after the shuffle draws the
// bye, so each member's bye probability is 1/n.
GroupPairing pair_group(std::span<const ModelIndex> group, RandomStream& rng);

// Everything that happened in one round of one contest.
struct RoundOutcome {
  RoundIndex round = 0;
  std::vector<MatchPair> pairs;
  std::vector<ModelIndex> winners;  // parallel to pairs
  std::vector<ModelIndex> byes;
  std::vector<ModelIndex> eliminated;
  std::vector<Score> scores_before;
  std::vector<Score> scores_after;  // after the round's points, before elimination

  friend bool operator==(const RoundOutcome&, const RoundOutcome&) = default;
};

struct PlayedRound {
  ContestState state;    // scores updated, round advanced, nobody eliminated yet
  RoundOutcome outcome;  // eliminated is left empty
};

// Groups, pairs and plays round `state.round` using tensor slice `tensor_round`.
// In each pair (a, b) model a wins with probability at(a, b, k); entries
// strictly between 0 and 1 consume one uniform draw, in pair order. Byes
// score 0. Throws DimensionMismatchError when the tensor does not fit.
PlayedRound play_round(const ContestState& state, const WinRateTensor& tensor,
                       RandomStream& rng, RoundIndex tensor_round);
PlayedRound play_round(const ContestState& state, const WinRateTensor& tensor,
                       RandomStream& rng);

struct EliminationStep {
  ContestState state;
  std::vector<ModelIndex> eliminated;  // ascending model index
};

// Removes a uniformly random subset of min(count, |G_min|) models from the
// active models sharing the minimum cumulative score. Each member of G_min is
// removed with probability count / max(count, |G_min|).
EliminationStep apply_elimination(const ContestState& state, unsigned count, RandomStream& rng);

struct InstanceResult {
  std::vector<Score> final_scores;  // all M models, eliminated ones frozen
  std::vector<RoundOutcome> trace;
};

// Runs rounds 0..K-1 (group, pair, play, update, eliminate), stopping early
// once fewer than two models remain active.
InstanceResult run_single_instance(const WinRateTensor& tensor,
                                   const EliminationSchedule& schedule, RandomStream& rng);

// Compact per-instance statistics used by the Monte Carlo driver.
struct InstanceSummary {
  std::vector<Score> final_scores;
  std::vector<int> eliminated_round;  // -1 when never eliminated
  std::size_t matches_played = 0;
};

// Allocation-free repeated execution of single contests. Consumes random
// numbers in exactly the same order as run_single_instance, so both produce
// identical contests from identical streams. Not thread-safe; use one runner
// per worker.
class ContestRunner {
 public:
  ContestRunner(const WinRateTensor& tensor, const EliminationSchedule& schedule);

  // round_order[k] selects the tensor slice played in round k; an empty span
  // plays slice k in round k. When `trace` is non-null it receives one entry
  // per round played.
  const InstanceSummary& run(RandomStream& rng, std::span<const RoundIndex> round_order = {},
                             std::vector<RoundOutcome>* trace = nullptr);

 private:
  const WinRateTensor& tensor_;
  const EliminationSchedule& schedule_;
  std::vector<char> active_;
  std::vector<ModelIndex> order_;
  std::vector<std::size_t> group_bounds_;
  std::vector<ModelIndex> minimum_group_;
  InstanceSummary summary_;
};

}  // namespace swissrank

#endif  // SWISSRANK_SWISS_ENGINE_HPP_

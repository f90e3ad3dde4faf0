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

#include "swissrank/swiss_engine.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "swissrank/error.hpp"

namespace swissrank {
namespace {

// Sorts active models by (score desc, index asc) into `order`; `bounds` gets
// the start offset of every score group followed by order.size().
template <typename IsActive>
void sort_into_groups(std::span<const Score> scores, IsActive is_active,
                      std::vector<ModelIndex>& order, std::vector<std::size_t>& bounds) {
  order.clear();
  bounds.clear();
  for (ModelIndex m = 0; m < scores.size(); ++m) {
    if (is_active(m)) order.push_back(m);
  }
  std::sort(order.begin(), order.end(), [&](ModelIndex a, ModelIndex b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || scores[order[i]] != scores[order[i - 1]]) bounds.push_back(i);
  }
  bounds.push_back(order.size());
}

void shuffle_groups(std::vector<ModelIndex>& order, const std::vector<std::size_t>& bounds,
                    RandomStream& rng) {
  for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
    rng.shuffle(std::span<ModelIndex>(order.data() + bounds[g], bounds[g + 1] - bounds[g]));
  }
}

// Calls on_pair(a, b) for every pair and on_bye(m) for every bye, group by group.
template <typename OnPair, typename OnBye>
void for_each_pairing(const std::vector<ModelIndex>& order, const std::vector<std::size_t>& bounds,
                      OnPair on_pair, OnBye on_bye) {
  for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
    std::size_t i = bounds[g];
    for (; i + 1 < bounds[g + 1]; i += 2) on_pair(order[i], order[i + 1]);
    if (i < bounds[g + 1]) on_bye(order[i]);
  }
}

inline ModelIndex decide_match(ModelIndex a, ModelIndex b, double p, RandomStream& rng) {
  if (p >= 1.0) return a;
  if (p <= 0.0) return b;
  return rng.bernoulli(p) ? a : b;
}

// `members` holds G_min in ascending index order. On return its first r
// entries (sorted ascending) are the eliminated models; returns r.
std::size_t choose_eliminated(std::vector<ModelIndex>& members, unsigned count,
                              RandomStream& rng) {
  const std::size_t r = std::min<std::size_t>(count, members.size());
  if (r > 0 && r < members.size()) {
    rng.partial_shuffle(std::span<ModelIndex>(members), r);
    std::sort(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(r));
  }
  return r;
}

template <typename IsActive>
void collect_minimum_group(std::span<const Score> scores, IsActive is_active,
                           std::vector<ModelIndex>& members) {
  members.clear();
  Score minimum = std::numeric_limits<Score>::max();
  for (ModelIndex m = 0; m < scores.size(); ++m) {
    if (is_active(m)) minimum = std::min(minimum, scores[m]);
  }
  for (ModelIndex m = 0; m < scores.size(); ++m) {
    if (is_active(m) && scores[m] == minimum) members.push_back(m);
  }
}

void check_fits(const ContestState& state, const WinRateTensor& tensor, RoundIndex slice) {
  if (state.num_models() != tensor.num_models() || state.active.size() != state.num_models()) {
    throw DimensionMismatchError("contest state has " + std::to_string(state.num_models()) +
                                 " models but the tensor has " +
                                 std::to_string(tensor.num_models()));
  }
  if (slice >= tensor.num_rounds()) {
    throw DimensionMismatchError("round " + std::to_string(slice + 1) +
                                 " is beyond the tensor's " +
                                 std::to_string(tensor.num_rounds()) + " rounds");
  }
}

}  // namespace

ContestState ContestState::initial(std::size_t num_models) {
  return ContestState{std::vector<bool>(num_models, true), std::vector<Score>(num_models, 0), 0};
}

std::size_t ContestState::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

std::vector<ModelIndex> ContestState::active_models() const {
  std::vector<ModelIndex> out;
  for (ModelIndex m = 0; m < active.size(); ++m) {
    if (active[m]) out.push_back(m);
  }
  return out;
}

EliminationSchedule EliminationSchedule::constant(unsigned count) {
  EliminationSchedule s;
  s.constant_value_ = count;
  return s;
}

EliminationSchedule EliminationSchedule::per_round(std::vector<unsigned> counts) {
  EliminationSchedule s;
  s.constant_ = false;
  s.counts_ = std::move(counts);
  return s;
}

unsigned EliminationSchedule::at(RoundIndex k) const {
  if (constant_) return constant_value_;
  if (k >= counts_.size()) {
    throw DimensionMismatchError("elimination schedule has no entry for round " +
                                 std::to_string(k + 1));
  }
  return counts_[k];
}

std::vector<ScoreGroup> group_by_score(const ContestState& state) {
  std::vector<ModelIndex> order;
  std::vector<std::size_t> bounds;
  sort_into_groups(state.scores, [&](ModelIndex m) { return state.active[m]; }, order, bounds);
  std::vector<ScoreGroup> groups;
  for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
    ScoreGroup group;
    group.score = state.scores[order[bounds[g]]];
    group.members.assign(order.begin() + static_cast<std::ptrdiff_t>(bounds[g]),
                         order.begin() + static_cast<std::ptrdiff_t>(bounds[g + 1]));
    groups.push_back(std::move(group));
  }
  return groups;
}

GroupPairing pair_group(std::span<const ModelIndex> group, RandomStream& rng) {
  std::vector<ModelIndex> order(group.begin(), group.end());
  rng.shuffle(std::span<ModelIndex>(order));
  GroupPairing out;
  const std::vector<std::size_t> bounds{0, order.size()};
  for_each_pairing(
      order, bounds, [&](ModelIndex a, ModelIndex b) { out.pairs.push_back({a, b}); },
      [&](ModelIndex m) { out.bye = m; });
  return out;
}

PlayedRound play_round(const ContestState& state, const WinRateTensor& tensor, RandomStream& rng,
                       RoundIndex tensor_round) {
  check_fits(state, tensor, tensor_round);
  PlayedRound out{state, {}};
  auto& outcome = out.outcome;
  outcome.round = state.round;
  outcome.scores_before = state.scores;

  std::vector<ModelIndex> order;
  std::vector<std::size_t> bounds;
  sort_into_groups(state.scores, [&](ModelIndex m) { return state.active[m]; }, order, bounds);
  shuffle_groups(order, bounds, rng);
  for_each_pairing(
      order, bounds, [&](ModelIndex a, ModelIndex b) { outcome.pairs.push_back({a, b}); },
      [&](ModelIndex m) { outcome.byes.push_back(m); });
  for (const auto& pair : outcome.pairs) {
    const auto winner =
        decide_match(pair.first, pair.second, tensor.at(pair.first, pair.second, tensor_round), rng);
    outcome.winners.push_back(winner);
    ++out.state.scores[winner];
  }
  out.state.round = state.round + 1;
  outcome.scores_after = out.state.scores;
  return out;
}

PlayedRound play_round(const ContestState& state, const WinRateTensor& tensor, RandomStream& rng) {
  return play_round(state, tensor, rng, state.round);
}

EliminationStep apply_elimination(const ContestState& state, unsigned count, RandomStream& rng) {
  EliminationStep out{state, {}};
  std::vector<ModelIndex> members;
  collect_minimum_group(state.scores, [&](ModelIndex m) { return state.active[m]; }, members);
  const std::size_t r = choose_eliminated(members, count, rng);
  out.eliminated.assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(r));
  for (const auto m : out.eliminated) out.state.active[m] = false;
  return out;
}

InstanceResult run_single_instance(const WinRateTensor& tensor,
                                   const EliminationSchedule& schedule, RandomStream& rng) {
  ContestRunner runner(tensor, schedule);
  InstanceResult out;
  out.final_scores = runner.run(rng, {}, &out.trace).final_scores;
  return out;
}

ContestRunner::ContestRunner(const WinRateTensor& tensor, const EliminationSchedule& schedule)
    : tensor_(tensor), schedule_(schedule) {
  const std::size_t m = tensor.num_models();
  active_.resize(m);
  order_.reserve(m);
  group_bounds_.reserve(m + 1);
  minimum_group_.reserve(m);
  summary_.final_scores.resize(m);
  summary_.eliminated_round.resize(m);
}

const InstanceSummary& ContestRunner::run(RandomStream& rng, std::span<const RoundIndex> round_order,
                                          std::vector<RoundOutcome>* trace) {
  const std::size_t num_rounds = tensor_.num_rounds();
  if (!round_order.empty() && round_order.size() != num_rounds) {
    throw DimensionMismatchError("round order must list one tensor slice per round");
  }
  auto& scores = summary_.final_scores;
  std::fill(active_.begin(), active_.end(), 1);
  std::fill(scores.begin(), scores.end(), 0);
  std::fill(summary_.eliminated_round.begin(), summary_.eliminated_round.end(), -1);
  summary_.matches_played = 0;
  if (trace) trace->clear();
  const auto is_active = [this](ModelIndex m) { return active_[m] != 0; };

  for (RoundIndex k = 0; k < num_rounds; ++k) {
    const RoundIndex slice = round_order.empty() ? k : round_order[k];
    if (slice >= num_rounds) throw DimensionMismatchError("round order names a missing slice");
    RoundOutcome* outcome = nullptr;
    if (trace) {
      outcome = &trace->emplace_back();
      outcome->round = k;
      outcome->scores_before = scores;
    }

    sort_into_groups(scores, is_active, order_, group_bounds_);
    shuffle_groups(order_, group_bounds_, rng);
    for_each_pairing(
        order_, group_bounds_,
        [&](ModelIndex a, ModelIndex b) {
          const auto winner = decide_match(a, b, tensor_.at(a, b, slice), rng);
          ++scores[winner];
          ++summary_.matches_played;
          if (outcome) {
            outcome->pairs.push_back({a, b});
            outcome->winners.push_back(winner);
          }
        },
        [&](ModelIndex m) {
          if (outcome) outcome->byes.push_back(m);
        });
    if (outcome) outcome->scores_after = scores;

    collect_minimum_group(scores, is_active, minimum_group_);
    const std::size_t removed = choose_eliminated(minimum_group_, schedule_.at(k), rng);
    for (std::size_t i = 0; i < removed; ++i) {
      active_[minimum_group_[i]] = 0;
      summary_.eliminated_round[minimum_group_[i]] = static_cast<int>(k);
      if (outcome) outcome->eliminated.push_back(minimum_group_[i]);
    }

    if (std::count(active_.begin(), active_.end(), 1) < 2) break;
  }
  return summary_;
}

}  // namespace swissrank

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
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "swissrank/error.hpp"

namespace swissrank {
namespace {

using testing::make_tensor;
using testing::strict_order_tensor;

ContestState state_with(std::vector<Score> scores, std::vector<bool> active = {}) {
  ContestState s = ContestState::initial(scores.size());
  s.scores = std::move(scores);
  if (!active.empty()) s.active = std::move(active);
  return s;
}

TEST(GroupByScore, PartitionsByDescendingScore) {
  const auto groups = group_by_score(state_with({2, 2, 1, 0}));
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0], (ScoreGroup{2, {0, 1}}));
  EXPECT_EQ(groups[1], (ScoreGroup{1, {2}}));
  EXPECT_EQ(groups[2], (ScoreGroup{0, {3}}));
}

TEST(GroupByScore, AllEqualIsOneGroup) {
  const auto groups = group_by_score(state_with({1, 1, 1, 1, 1}));
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].members.size(), 5u);
}

TEST(GroupByScore, InactiveModelsExcluded) {
  EXPECT_TRUE(group_by_score(state_with({1, 2}, {false, false})).empty());
  const auto groups = group_by_score(state_with({3, 1, 3}, {true, true, false}));
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].members, std::vector<ModelIndex>{0});
}

TEST(PairGroup, SingletonGetsBye) {
  RandomStream rng(1, 0);
  const std::vector<ModelIndex> group{4};
  const auto p = pair_group(group, rng);
  EXPECT_TRUE(p.pairs.empty());
  EXPECT_EQ(p.bye, 4u);
}

TEST(PairGroup, TwoMembersOnePair) {
  RandomStream rng(1, 0);
  const std::vector<ModelIndex> group{2, 5};
  const auto p = pair_group(group, rng);
  ASSERT_EQ(p.pairs.size(), 1u);
  EXPECT_FALSE(p.bye.has_value());
  std::set<ModelIndex> seen{p.pairs[0].first, p.pairs[0].second};
  EXPECT_EQ(seen, (std::set<ModelIndex>{2, 5}));
}

TEST(PairGroup, ByeIsUniformInGroupOfThree) {
  constexpr int kTrials = 300000;
  RandomStream rng(77, 0);
  const std::vector<ModelIndex> group{0, 1, 2};
  std::array<int, 3> byes{};
  for (int i = 0; i < kTrials; ++i) ++byes[*pair_group(group, rng).bye];
  for (int b : byes) EXPECT_NEAR(static_cast<double>(b) / kTrials, 1.0 / 3.0, 0.01);
}

TEST(PairGroup, MatchingsAreUniformInGroupOfFour) {
  // Three perfect matchings of {0,1,2,3}; identify each by 0's partner.
  constexpr int kTrials = 90000;
  RandomStream rng(78, 0);
  const std::vector<ModelIndex> group{0, 1, 2, 3};
  std::array<int, 4> partner{};
  for (int i = 0; i < kTrials; ++i) {
    for (const auto& pr : pair_group(group, rng).pairs) {
      if (pr.first == 0) ++partner[pr.second];
      if (pr.second == 0) ++partner[pr.first];
    }
  }
  EXPECT_EQ(partner[0], 0);
  for (int j = 1; j < 4; ++j) EXPECT_NEAR(static_cast<double>(partner[j]) / kTrials, 1.0 / 3.0, 0.01);
}

TEST(PlayRound, DeterministicWinAndZeroPointBye) {
  const auto w = strict_order_tensor(3, 1);
  RandomStream rng(3, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto played = play_round(ContestState::initial(3), w, rng);
    ASSERT_EQ(played.outcome.byes.size(), 1u);
    ASSERT_EQ(played.outcome.pairs.size(), 1u);
    const auto bye = played.outcome.byes[0];
    EXPECT_EQ(played.state.scores[bye], 0);
    const auto& pr = played.outcome.pairs[0];
    EXPECT_EQ(played.outcome.winners[0], std::min(pr.first, pr.second));
    EXPECT_EQ(played.state.round, 1u);
  }
}

TEST(PlayRound, HalfEntryIsFairCoin) {
  const auto w = WinRateTensor::uniform(testing::model_names(2), {"r"});
  RandomStream rng(4, 0);
  constexpr int kTrials = 100000;
  int first_wins = 0;
  for (int i = 0; i < kTrials; ++i) {
    const auto played = play_round(ContestState::initial(2), w, rng);
    first_wins += played.state.scores[0];
  }
  EXPECT_NEAR(static_cast<double>(first_wins) / kTrials, 0.5, 0.01);
}

TEST(PlayRound, InactiveModelsUntouched) {
  const auto w = strict_order_tensor(4, 1);
  RandomStream rng(5, 0);
  const auto played = play_round(state_with({0, 0, 0, 0}, {true, false, true, false}), w, rng);
  EXPECT_EQ(played.state.scores, (std::vector<Score>{1, 0, 0, 0}));
  EXPECT_TRUE(played.outcome.byes.empty());
}

TEST(PlayRound, DimensionMismatch) {
  const auto w = strict_order_tensor(3, 1);
  RandomStream rng(5, 0);
  EXPECT_THROW(play_round(ContestState::initial(4), w, rng), DimensionMismatchError);
  auto late = ContestState::initial(3);
  late.round = 1;
  EXPECT_THROW(play_round(late, w, rng), DimensionMismatchError);
}

TEST(ApplyElimination, ZeroCountRemovesNobody) {
  RandomStream rng(6, 0);
  const auto step = apply_elimination(state_with({0, 0, 1}), 0, rng);
  EXPECT_TRUE(step.eliminated.empty());
  EXPECT_EQ(step.state.active_count(), 3u);
}

TEST(ApplyElimination, CountAboveGroupRemovesWholeGroup) {
  RandomStream rng(6, 0);
  const auto step = apply_elimination(state_with({1, 0, 0, 2}), 3, rng);
  EXPECT_EQ(step.eliminated, (std::vector<ModelIndex>{1, 2}));
  EXPECT_EQ(step.state.active, (std::vector<bool>{true, false, false, true}));
}

TEST(ApplyElimination, OnlyMinimumGroupIsTargeted) {
  RandomStream rng(8, 0);
  const auto base = state_with({0, 0, 0, 0, 0, 1, 1}, {true, true, true, true, true, true, true});
  std::array<int, 7> hits{};
  constexpr int kTrials = 50000;
  for (int i = 0; i < kTrials; ++i) {
    const auto step = apply_elimination(base, 2, rng);
    ASSERT_EQ(step.eliminated.size(), 2u);
    for (auto m : step.eliminated) ++hits[m];
  }
  for (int m = 0; m < 5; ++m) EXPECT_NEAR(static_cast<double>(hits[m]) / kTrials, 0.4, 0.01);
  EXPECT_EQ(hits[5] + hits[6], 0);
}

TEST(ApplyElimination, IgnoresInactiveLowScores) {
  RandomStream rng(9, 0);
  const auto step = apply_elimination(state_with({0, 2, 2}, {false, true, true}), 1, rng);
  ASSERT_EQ(step.eliminated.size(), 1u);
  EXPECT_NE(step.eliminated[0], 0u);
}

TEST(RunSingleInstance, TwoModelsOneRound) {
  RandomStream rng(1, 0);
  const auto r = run_single_instance(strict_order_tensor(2, 1), EliminationSchedule::constant(0), rng);
  EXPECT_EQ(r.final_scores, (std::vector<Score>{1, 0}));
  ASSERT_EQ(r.trace.size(), 1u);
}

TEST(RunSingleInstance, SplitGroupsNeverMeetAgain) {
  // After round one the two models sit in different score groups, so both
  // draw zero-point byes for the rest of the contest.
  RandomStream rng(1, 0);
  const auto r = run_single_instance(strict_order_tensor(2, 3), EliminationSchedule::constant(0), rng);
  EXPECT_EQ(r.final_scores, (std::vector<Score>{1, 0}));
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[1].byes, (std::vector<ModelIndex>{0, 1}));
}

TEST(RunSingleInstance, ThreeModelOutcomesAreTheEnumeratedOnes) {
  const auto w = strict_order_tensor(3, 1);
  std::map<std::vector<Score>, int> seen;
  for (std::uint64_t i = 0; i < 30000; ++i) {
    RandomStream rng(0, i);
    ++seen[run_single_instance(w, EliminationSchedule::constant(0), rng).final_scores];
  }
  // (A bye) -> B wins; (B bye) or (C bye) -> A wins.
  ASSERT_EQ(seen.size(), 2u);
  const double a_wins = seen[{1, 0, 0}] / 30000.0;
  const double b_wins = seen[{0, 1, 0}] / 30000.0;
  EXPECT_NEAR(a_wins, 2.0 / 3.0, 0.015);
  EXPECT_NEAR(b_wins, 1.0 / 3.0, 0.015);
}

TEST(RunSingleInstance, StopsWhenFewerThanTwoRemain) {
  // M = 3, t = 2: after round 1 the bottom group loses up to two members.
  const auto w = strict_order_tensor(3, 4);
  for (std::uint64_t i = 0; i < 500; ++i) {
    RandomStream rng(2, i);
    const auto r = run_single_instance(w, EliminationSchedule::constant(2), rng);
    const auto& last = r.trace.back();
    std::size_t active = 3;
    for (const auto& round : r.trace) active -= round.eliminated.size();
    if (r.trace.size() < 4) {
      EXPECT_LT(active, 2u);
    }
    EXPECT_LE(last.round, 3u);
  }
}

TEST(RunSingleInstance, PerRoundScheduleIsHonoured) {
  // Strict order over 8 models: bottom groups have sizes 4, 2, 2 after rounds 1-3.
  const auto w = strict_order_tensor(8, 3);
  RandomStream rng(3, 0);
  const auto r = run_single_instance(w, EliminationSchedule::per_round({0, 2, 1}), rng);
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_TRUE(r.trace[0].eliminated.empty());
  EXPECT_EQ(r.trace[1].eliminated.size(), 2u);
  EXPECT_EQ(r.trace[2].eliminated.size(), 1u);
  EXPECT_THROW(EliminationSchedule::per_round({1}).at(1), DimensionMismatchError);
}

TEST(RunSingleInstance, MatchesStepwiseComposition) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 7;
    const std::size_t k = 1 + trial % 4;
    const auto w = testing::random_real_tensor(gen, m, k);
    const auto schedule = EliminationSchedule::constant(trial % 3);
    RandomStream a(trial, 1), b(trial, 1);
    const auto whole = run_single_instance(w, schedule, a);

    ContestState state = ContestState::initial(m);
    std::vector<RoundOutcome> trace;
    for (RoundIndex r = 0; r < k; ++r) {
      auto played = play_round(state, w, b);
      auto step = apply_elimination(played.state, schedule.at(r), b);
      played.outcome.eliminated = step.eliminated;
      trace.push_back(played.outcome);
      state = step.state;
      if (state.active_count() < 2) break;
    }
    ASSERT_EQ(whole.trace, trace);
    ASSERT_EQ(whole.final_scores, state.scores);
  }
}

TEST(ContestRunner, SummaryMatchesTrace) {
  const auto w = strict_order_tensor(7, 5);
  const auto schedule = EliminationSchedule::constant(1);
  ContestRunner runner(w, schedule);
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomStream rng(4, i);
    std::vector<RoundOutcome> trace;
    const auto summary = runner.run(rng, {}, &trace);
    std::size_t pairs = 0;
    for (const auto& round : trace) {
      pairs += round.pairs.size();
      for (auto e : round.eliminated) EXPECT_EQ(summary.eliminated_round[e], static_cast<int>(round.round));
    }
    EXPECT_EQ(summary.matches_played, pairs);
    const auto total = std::accumulate(summary.final_scores.begin(), summary.final_scores.end(), 0);
    EXPECT_EQ(static_cast<std::size_t>(total), pairs);
  }
}

TEST(ContestRunner, RoundOrderSelectsSlices) {
  // Round slice 0: A beats B. Slice 1: B beats A.
  const auto w = make_tensor(2, 2, [](auto, auto, auto k) { return k == 0 ? 1.0 : 0.0; });
  const auto schedule = EliminationSchedule::constant(0);
  ContestRunner runner(w, schedule);
  RandomStream rng(1, 0);
  const std::vector<RoundIndex> swapped{1, 0};
  EXPECT_EQ(runner.run(rng, swapped).final_scores, (std::vector<Score>{0, 1}));
  const std::vector<RoundIndex> natural{0, 1};
  EXPECT_EQ(runner.run(rng, natural).final_scores, (std::vector<Score>{1, 0}));
  const std::vector<RoundIndex> short_order{0};
  EXPECT_THROW(runner.run(rng, short_order), DimensionMismatchError);
}

}  // namespace
}  // namespace swissrank

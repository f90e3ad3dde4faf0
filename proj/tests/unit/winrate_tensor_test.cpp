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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "swissrank/error.hpp"

namespace swissrank {
namespace {

WinRateTensor tensor_from_csv(const std::string& csv, const std::vector<Round>& rounds,
                              MissingPolicy policy = MissingPolicy::kError) {
  return build_tensor(validate_inputs(parse_score_table_csv(csv), RoundSequence(rounds), policy));
}

TEST(BuildTensor, StrictDominanceSingleDataset) {
  const auto w = tensor_from_csv("model,d\ni,80\nj,70\n", {{"r", {"d"}}});
  EXPECT_EQ(w.at(0, 1, 0), 1.0);
  EXPECT_EQ(w.at(1, 0, 0), 0.0);
  EXPECT_EQ(w.at(0, 0, 0), 0.5);
}

TEST(BuildTensor, SplitRoundIsHalf) {
  const auto w = tensor_from_csv("model,a,b\ni,80,10\nj,70,20\n", {{"r", {"a", "b"}}});
  EXPECT_EQ(w.at(0, 1, 0), 0.5);
  EXPECT_EQ(w.at(1, 0, 0), 0.5);
}

TEST(BuildTensor, MinorityOfDatasetsLoses) {
  const auto w =
      tensor_from_csv("model,a,b,c\ni,90,40,40\nj,10,50,50\n", {{"r", {"a", "b", "c"}}});
  EXPECT_EQ(w.at(0, 1, 0), 0.0);
  EXPECT_EQ(w.at(1, 0, 0), 1.0);
}

TEST(BuildTensor, EqualScoresTie) {
  const auto w = tensor_from_csv("model,a\ni,50\nj,50\n", {{"r", {"a"}}});
  EXPECT_EQ(w.at(0, 1, 0), 0.5);
}

TEST(BuildTensor, TieCountsHalfTowardMajority) {
  // i: win, tie, loss, win -> d = 2, e = 1, f = 2.5 / 4 > 0.5
  const auto w = tensor_from_csv("model,a,b,c,d\ni,9,5,1,9\nj,1,5,9,1\n",
                                 {{"r", {"a", "b", "c", "d"}}});
  EXPECT_EQ(w.at(0, 1, 0), 1.0);
}

TEST(BuildTensor, MissingLosesUnderLossPolicy) {
  const auto w = tensor_from_csv("model,a\ni,\nj,0\nk,\n", {{"r", {"a"}}},
                                 MissingPolicy::kTreatAsLoss);
  EXPECT_EQ(w.at(0, 1, 0), 0.0);
  EXPECT_EQ(w.at(1, 2, 0), 1.0);
  EXPECT_EQ(w.at(0, 2, 0), 0.5);
}

TEST(BuildTensor, RoundsFollowSequenceOrder) {
  const auto w = tensor_from_csv("model,a,b\ni,9,1\nj,1,9\n", {{"second", {"b"}}, {"first", {"a"}}});
  EXPECT_EQ(w.round_labels(), (std::vector<std::string>{"second", "first"}));
  EXPECT_EQ(w.at(0, 1, 0), 0.0);
  EXPECT_EQ(w.at(0, 1, 1), 1.0);
}

TEST(BuildTensor, MatchesHandTally) {
  // Oracle: f = (d + e/2) / n thresholded at 1/2, tallied directly.
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + trial % 5;
    const std::size_t d = 1 + trial % 7;
    const auto table = testing::random_table(gen, m, d);
    std::vector<Round> rounds;
    for (std::size_t c = 0; c < d; c += 3) {
      Round r{"r" + std::to_string(c), {}};
      for (std::size_t x = c; x < std::min(d, c + 3); ++x) r.datasets.push_back(table.datasets()[x]);
      rounds.push_back(r);
    }
    const auto w = build_tensor(validate_inputs(table, RoundSequence(rounds)));
    for (std::size_t r = 0; r < rounds.size(); ++r) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (i == j) continue;
          double wins = 0, ties = 0;
          for (const auto& name : rounds[r].datasets) {
            const auto c = table.dataset_index(name);
            if (*table.at(i, c) > *table.at(j, c)) wins += 1;
            if (*table.at(i, c) == *table.at(j, c)) ties += 1;
          }
          const double f = (wins + 0.5 * ties) / rounds[r].datasets.size();
          const double expected = f > 0.5 ? 1.0 : (f < 0.5 ? 0.0 : 0.5);
          ASSERT_EQ(w.at(i, j, r), expected);
        }
      }
    }
  }
}

TEST(WinRateTensor, RejectsInvalidEntries) {
  const auto names = testing::model_names(2);
  EXPECT_THROW(WinRateTensor(names, {"r"}, {0.5, 0.7, 0.7, 0.5}), DomainError);
  EXPECT_THROW(WinRateTensor(names, {"r"}, {0.5, 1.5, -0.5, 0.5}), DomainError);
  EXPECT_THROW(WinRateTensor(names, {"r"}, {0.5, 1.0, 0.0}), DimensionMismatchError);
  EXPECT_NO_THROW(WinRateTensor(names, {"r"}, {0.0, 0.3, 0.7, 0.9}));
}

TEST(WinRateTensor, DiagonalIsForcedToHalf) {
  const WinRateTensor w(testing::model_names(2), {"r"}, {0.0, 0.3, 0.7, 0.9});
  EXPECT_EQ(w.at(0, 0, 0), 0.5);
  EXPECT_EQ(w.at(1, 1, 0), 0.5);
}

TEST(WinRateTensor, SetKeepsAntisymmetry) {
  auto w = WinRateTensor::uniform(testing::model_names(3), {"r1", "r2"});
  w.set(2, 0, 1, 0.25);
  EXPECT_EQ(w.at(0, 2, 1), 0.75);
  EXPECT_THROW(w.set(0, 1, 0, 1.5), DomainError);
  EXPECT_THROW(w.set(0, 3, 0, 0.5), DimensionMismatchError);
}

TEST(TensorJson, RoundTrips) {
  std::mt19937_64 gen(5);
  const auto w = testing::random_real_tensor(gen, 4, 3);
  EXPECT_EQ(parse_tensor_json(tensor_to_json(w)), w);
}

TEST(TensorJson, RejectsBadDocuments) {
  EXPECT_THROW(parse_tensor_json("[]"), ParseError);
  EXPECT_THROW(parse_tensor_json(R"({"layout":"kij","models":["a"],"rounds":["r"],"w":[[[0.5]]]})"),
               ParseError);
  EXPECT_THROW(parse_tensor_json(R"({"layout":"ijk","models":["a","b"],"rounds":["r"],"w":[[[0.5]]]})"),
               DimensionMismatchError);
  EXPECT_THROW(
      parse_tensor_json(
          R"({"layout":"ijk","models":["a","b"],"rounds":["r"],"w":[[[0.5],[0.9]],[[0.9],[0.5]]]})"),
      DomainError);
}

TEST(PerturbScores, OverwritesExactlyTargets) {
  const auto base = parse_score_table_csv("model,a,b,c,d\nx,10,20,30,40\ny,50,60,70,80\n");
  const std::vector<ScorePerturbation> two{{"x", "a", 0.0}, {"x", "c", 0.0}};
  const std::vector<ScorePerturbation> four{
      {"y", "a", 0.0}, {"y", "b", 0.0}, {"y", "c", 0.0}, {"y", "d", 0.0}};
  auto differing = [&](const ScoreTable& t) {
    int n = 0;
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t d = 0; d < 4; ++d) n += t.at(m, d) != base.at(m, d);
    return n;
  };
  EXPECT_EQ(differing(perturb_scores(base, two)), 2);
  EXPECT_EQ(differing(perturb_scores(base, four)), 4);
  EXPECT_EQ(perturb_scores(base, {}), base);
  EXPECT_DOUBLE_EQ(*base.at(0, 0), 10.0);
}

TEST(PerturbScores, RejectsBadTargets) {
  const auto base = parse_score_table_csv("model,a\nx,10\n");
  const std::vector<ScorePerturbation> unknown_model{{"z", "a", 0.0}};
  const std::vector<ScorePerturbation> unknown_dataset{{"x", "q", 0.0}};
  const std::vector<ScorePerturbation> out_of_range{{"x", "a", 101.0}};
  EXPECT_THROW(perturb_scores(base, unknown_model), UnknownModelError);
  EXPECT_THROW(perturb_scores(base, unknown_dataset), UnknownDatasetError);
  EXPECT_THROW(perturb_scores(base, out_of_range), DomainError);
}

TEST(PerturbationsCsv, Parses) {
  const auto p = parse_perturbations_csv("model,dataset,score\nx,a,0\ny,b,12.5\n");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1].model, "y");
  EXPECT_EQ(p[1].dataset, "b");
  EXPECT_DOUBLE_EQ(p[1].new_score, 12.5);
  EXPECT_TRUE(parse_perturbations_csv("model,dataset,score\n").empty());
  EXPECT_THROW(parse_perturbations_csv("m,d,s\n"), ParseError);
  EXPECT_THROW(parse_perturbations_csv("model,dataset,score\nx,a\n"), ParseError);
}

}  // namespace
}  // namespace swissrank

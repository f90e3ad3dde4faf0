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

#include "swissrank/monte_carlo.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "swissrank/analysis.hpp"
#include "swissrank/error.hpp"

namespace swissrank {
namespace {

using testing::make_tensor;
using testing::strict_order_tensor;

SimulationConfig config(std::uint64_t n, std::uint64_t seed, unsigned t, unsigned workers = 0) {
  SimulationConfig c;
  c.iterations = n;
  c.seed = seed;
  c.schedule = EliminationSchedule::constant(t);
  c.workers = workers;
  return c;
}

TEST(Estimate, DeterministicWinnerHasZeroVariance) {
  const auto r = estimate(strict_order_tensor(2, 1), config(1000, 3, 0));
  EXPECT_EQ(r.expected_scores, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(r.std_error, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(r.iterations, 1000u);
  EXPECT_EQ(r.seed, 3u);
}

TEST(Estimate, CanonicalThreeModelFixture) {
  const auto r = estimate(strict_order_tensor(3, 1), config(100000, 0, 0));
  EXPECT_NEAR(r.expected_scores[0], 2.0 / 3.0, 0.01);
  EXPECT_NEAR(r.expected_scores[1], 1.0 / 3.0, 0.01);
  EXPECT_EQ(r.expected_scores[2], 0.0);
}

TEST(Estimate, EqualsSequentialReference) {
  std::mt19937_64 gen(12);
  const auto w = testing::random_real_tensor(gen, 6, 3);
  const auto c = config(3000, 99, 1);
  std::vector<long> sums(6, 0);
  for (std::uint64_t i = 0; i < c.iterations; ++i) {
    RandomStream rng(c.seed, i);
    const auto r = run_single_instance(w, c.schedule, rng);
    for (std::size_t m = 0; m < 6; ++m) sums[m] += r.final_scores[m];
  }
  const auto r = estimate(w, c);
  for (std::size_t m = 0; m < 6; ++m) {
    EXPECT_EQ(r.expected_scores[m], static_cast<double>(sums[m]) / c.iterations);
  }
}

TEST(Estimate, BitwiseIdenticalAcrossWorkerCounts) {
  std::mt19937_64 gen(13);
  const auto w = testing::random_real_tensor(gen, 9, 4);
  const auto reference = estimate(w, config(5000, 17, 2, 1));
  for (unsigned workers : {2u, 3u, 8u, 0u}) {
    EXPECT_EQ(estimate(w, config(5000, 17, 2, workers)), reference) << workers;
  }
}

TEST(Estimate, DifferentSeedsAgreeStatistically) {
  std::mt19937_64 gen(14);
  const auto w = testing::random_real_tensor(gen, 5, 3);
  const auto a = estimate(w, config(20000, 1, 1));
  const auto b = estimate(w, config(20000, 2, 1));
  EXPECT_NE(a.expected_scores, b.expected_scores);
  for (std::size_t m = 0; m < 5; ++m) {
    const double combined = std::hypot(a.std_error[m], b.std_error[m]);
    EXPECT_LE(std::abs(a.expected_scores[m] - b.expected_scores[m]), 3 * combined + 1e-12);
  }
}

TEST(Estimate, TotalScoreEqualsMatchesPlayed) {
  std::mt19937_64 gen(15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = testing::random_tensor(gen, 3 + trial, 4, false);
    const auto r = estimate(w, config(2000, trial, trial % 3));
    const double total = std::accumulate(r.expected_scores.begin(), r.expected_scores.end(), 0.0);
    EXPECT_NEAR(total, r.mean_matches_played, 1e-9);
  }
}

TEST(Estimate, SurvivalAndHistogramAreConsistent) {
  const auto w = strict_order_tensor(6, 4);
  const auto r = estimate(w, config(4000, 5, 1));
  for (std::size_t m = 0; m < 6; ++m) {
    const auto eliminated = std::accumulate(r.elim_histogram[m].begin(), r.elim_histogram[m].end(),
                                            std::uint64_t{0});
    EXPECT_EQ(r.elim_histogram[m].size(), 4u);
    EXPECT_DOUBLE_EQ(r.survival_prob[m], 1.0 - static_cast<double>(eliminated) / 4000);
    EXPECT_GE(r.expected_scores[m], 0.0);
    EXPECT_LE(r.expected_scores[m], 4.0);
  }
}

TEST(Estimate, RejectsBadConfig) {
  const auto w = strict_order_tensor(2, 2);
  EXPECT_THROW(estimate(w, config(0, 0, 0)), DomainError);
  auto c = config(10, 0, 0);
  c.schedule = EliminationSchedule::per_round({0});
  EXPECT_THROW(estimate(w, c), DimensionMismatchError);
}

TEST(EstimateSweep, SingletonEqualsPlainEstimate) {
  std::mt19937_64 gen(16);
  const auto w = testing::random_real_tensor(gen, 4, 2);
  const std::vector<unsigned> grid{0};
  const auto sweep = estimate_sweep(w, config(3000, 21, 5), grid);
  ASSERT_EQ(sweep.size(), 1u);
  EXPECT_EQ(sweep[0].t, 0u);
  EXPECT_EQ(sweep[0].result, estimate(w, config(3000, 21, 0)));
}

TEST(EstimateSweep, RepeatedTAgreesStatistically) {
  std::mt19937_64 gen(17);
  const auto w = testing::random_real_tensor(gen, 5, 3);
  const std::vector<unsigned> grid{0, 0};
  const auto sweep = estimate_sweep(w, config(20000, 4, 0), grid);
  ASSERT_EQ(sweep.size(), 2u);
  for (std::size_t m = 0; m < 5; ++m) {
    const double se = std::hypot(sweep[0].result.std_error[m], sweep[1].result.std_error[m]);
    EXPECT_LE(std::abs(sweep[0].result.expected_scores[m] - sweep[1].result.expected_scores[m]),
              3 * se + 1e-12);
  }
  EXPECT_NE(sweep[0].result.seed, sweep[1].result.seed);
}

TEST(EstimateSweep, RoundOneLoserDeclinesWithPressure) {
  // Model E loses every round-1 match; all other entries are coin flips.
  const auto w = make_tensor(5, 3, [](auto, auto j, auto k) {
    return (k == 0 && j == 4) ? 1.0 : 0.5;
  });
  const std::vector<unsigned> grid{0, 1, 2};
  const auto sweep = estimate_sweep(w, config(100000, 8, 0), grid);
  // Oracle values from exhaustive enumeration.
  std::vector<double> exact;
  for (unsigned t : grid) {
    exact.push_back(exact_expected_scores(w, EliminationSchedule::constant(t)).values[4]);
  }
  EXPECT_GT(exact[0], exact[1]);
  EXPECT_GT(exact[1], exact[2]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(std::abs(sweep[i].result.expected_scores[4] - exact[i]),
              3 * sweep[i].result.std_error[4] + 1e-12);
  }
  EXPECT_THROW(estimate_sweep(w, config(10, 0, 0), {}), DomainError);
}

TEST(ResultJson, HasDocumentedFields) {
  const auto r = estimate(strict_order_tensor(3, 2), config(100, 7, 1));
  const auto doc = nlohmann::json::parse(simulation_result_to_json(r));
  EXPECT_EQ(doc.at("seed"), 7);
  EXPECT_EQ(doc.at("iterations"), 100);
  EXPECT_EQ(doc.at("t"), 1);
  EXPECT_EQ(doc.at("models").size(), 3u);
  EXPECT_EQ(doc.at("e_score").size(), 3u);
  EXPECT_EQ(doc.at("std_err").size(), 3u);
  EXPECT_EQ(doc.at("survival").size(), 3u);
  EXPECT_EQ(doc.at("elim_hist").size(), 3u);
}

}  // namespace
}  // namespace swissrank

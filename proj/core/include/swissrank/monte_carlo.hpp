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

#ifndef SWISSRANK_MONTE_CARLO_HPP_
#define SWISSRANK_MONTE_CARLO_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "swissrank/random.hpp"
#include "swissrank/swiss_engine.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace swissrank {

struct SimulationConfig {
  static constexpr std::uint64_t kDefaultIterations = 10000;

  std::uint64_t iterations = kDefaultIterations;
  std::uint64_t seed = 0;
  EliminationSchedule schedule;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct SimulationResult {
  std::vector<ModelId> models;
  std::vector<double> expected_scores;
  std::vector<double> std_error;       // sample std. deviation / sqrt(N)
  std::vector<double> survival_prob;   // fraction of instances never eliminated
  // elim_histogram[m][k]: instances in which m was eliminated after round k.
  std::vector<std::vector<std::uint64_t>> elim_histogram;
  double mean_matches_played = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  EliminationSchedule schedule;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

// Plain Monte Carlo estimate of every model's expected final score. Instance i
// draws from RandomStream(seed, i), and all accumulators are exact integers,
// so the result is bitwise identical for any worker count.
SimulationResult estimate(const WinRateTensor& tensor, const SimulationConfig& config);

// Fills `order` (size K) with the tensor slice to play in each round of one
// instance. Called with a stream dedicated to that instance.
using RoundOrderSampler = std::function<void(RandomStream& rng, std::vector<RoundIndex>& order)>;

// As estimate(), but every instance first draws its own round order from
// RandomStream(seed, i, StreamPurpose::kOrder).
SimulationResult estimate_with_round_orders(const WinRateTensor& tensor,
                                            const SimulationConfig& config,
                                            const RoundOrderSampler& sampler);

struct SweepPoint {
  unsigned t = 0;
  SimulationResult result;
};

// One estimate per constant elimination count. Entry i uses
// derive_seed(config.seed, i), so the first entry equals a plain estimate.
std::vector<SweepPoint> estimate_sweep(const WinRateTensor& tensor, const SimulationConfig& config,
                                       std::span<const unsigned> t_values);

// {"seed","iterations","t","models","e_score","std_err","survival","elim_hist"}
std::string simulation_result_to_json(const SimulationResult& result);

}  // namespace swissrank

#endif  // SWISSRANK_MONTE_CARLO_HPP_

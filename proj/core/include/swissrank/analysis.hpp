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

#ifndef SWISSRANK_ANALYSIS_HPP_
#define SWISSRANK_ANALYSIS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "swissrank/monte_carlo.hpp"
#include "swissrank/score_table.hpp"
#include "swissrank/swiss_engine.hpp"
#include "swissrank/winrate_tensor.hpp"

namespace swissrank {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double as a dyadic rational.
Rational to_rational(double value);
double to_double(const Rational& value);

// ---------------------------------------------------------------------------
// Exact small-instance oracle
// ---------------------------------------------------------------------------

struct OracleLimits {
  std::size_t max_models = 5;
  std::size_t max_rounds = 3;
};

struct ExactExpectation {
  std::vector<ModelId> models;
  std::vector<Rational> exact;
  std::vector<double> values;
  std::size_t distinct_states = 0;  // summed over all round boundaries
};

// E[S_m(K)] by exhaustive enumeration of contest histories: every
// (matching, bye) configuration of every score group, every match outcome
// weighted by its win probability, and every elimination subset of G_min.
// Histories reaching the same state are merged, which is the law of total
// expectation over round-boundary states. Arithmetic is exact.
// Throws InstanceTooLargeError beyond `limits`.
ExactExpectation exact_expected_scores(const WinRateTensor& tensor,
                                       const EliminationSchedule& schedule,
                                       const OracleLimits& limits = {});

// Conditional expected round score of an active model given the state:
// its mean win rate against the other members of its score group, scaled by
// (1 - 1/n) when the group size n is odd. Uses tensor slice state.round.
// Throws InactiveModelError.
Rational round_expectation_exact(const WinRateTensor& tensor, const ContestState& state,
                                 ModelIndex model);
double round_expectation(const WinRateTensor& tensor, const ContestState& state,
                         ModelIndex model);

// ---------------------------------------------------------------------------
// Failure sensitivity analysis
// ---------------------------------------------------------------------------

enum class RiskProfile { kRobustGeneralist, kAggressiveSpecialist, kIntermediate };

std::string_view to_string(RiskProfile profile);

struct FsaThresholds {
  double lambda_specialist = -0.15;  // classify specialist at or below this slope
  double generalist_band = 0.03;     // |slope| within this band is robust

  // -0.15 * K / 12 and 0.03 * K / 12. Arbitrary, but scaled with the contest
  // length so a 12-round contest gets the unscaled values.
  static FsaThresholds for_rounds(std::size_t num_rounds);
};

RiskProfile classify(double lambda, const FsaThresholds& thresholds);

// Ordinary least-squares slope of y on x, computed as
// sum((x_i - mean x) * y_i) / sum((x_i - mean x)^2).
double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct FsaModelReport {
  ModelId model;
  double base_score = 0.0;       // E at t = 0 (or the smallest t in the grid)
  double lambda = 0.0;           // least-squares slope over the grid
  double lambda_endpoint = 0.0;  // (E(t_max) - E(t_min)) / (t_max - t_min)
  std::optional<double> delta;   // E(t=2) - E(t=0) when both are in the grid
  RiskProfile classification = RiskProfile::kIntermediate;
  std::vector<double> scores_by_t;
  std::vector<double> std_error_by_t;
};

struct FsaReport {
  std::vector<unsigned> t_grid;
  FsaThresholds thresholds;
  std::vector<FsaModelReport> models;
  // 3 * the largest standard error seen anywhere in the sweep.
  double monte_carlo_slack = 0.0;
};

// Throws DomainError unless the grid has at least two distinct values and the
// thresholds satisfy lambda_specialist < 0 <= generalist_band.
void check_fsa_inputs(std::span<const unsigned> t_grid, const FsaThresholds& thresholds);

FsaReport fsa_from_sweep(std::span<const SweepPoint> sweep, const FsaThresholds& thresholds);
FsaReport fsa(const WinRateTensor& tensor, const SimulationConfig& config,
              std::span<const unsigned> t_grid, const FsaThresholds& thresholds);

std::string fsa_to_csv(const FsaReport& report);        // model,base_score,lambda,delta,class
std::string fsa_to_json(const FsaReport& report);
std::string fsa_plot_data_csv(const FsaReport& report);  // t,model,e_score,std_err

// ---------------------------------------------------------------------------
// Rankings and the perturbation harness
// ---------------------------------------------------------------------------

// 1-based ranks by value descending; ties broken alphabetically by name.
std::vector<std::size_t> rank_descending(std::span<const double> values,
                                         std::span<const ModelId> names);

std::vector<std::size_t> csd_ranks(const SimulationResult& result);

struct AverageBaseline {
  std::vector<double> means;
  std::vector<std::size_t> ranks;
};

// Unweighted mean over every dataset of the table. Missing cells raise
// MissingScoreError under kError and count as 0 under kTreatAsLoss.
AverageBaseline average_baseline_rank(const ScoreTable& table,
                                      MissingPolicy policy = MissingPolicy::kError);

struct RankingComparison {
  std::vector<ModelId> models;
  std::vector<std::size_t> csd_rank_before;
  std::vector<std::size_t> csd_rank_after;
  std::vector<std::size_t> avg_rank_before;
  std::vector<std::size_t> avg_rank_after;
  SimulationResult csd_before;
  SimulationResult csd_after;
  std::vector<double> mean_before;
  std::vector<double> mean_after;

  // after - before; positive means the model dropped.
  long csd_delta(std::size_t model) const;
  long avg_delta(std::size_t model) const;
};

// Runs the tournament estimate and the average baseline on both tables with
// the same configuration (and therefore the same random streams).
RankingComparison perturbation_experiment(const ScoreTable& base, const ScoreTable& perturbed,
                                          const RoundSequence& sequence,
                                          const SimulationConfig& config,
                                          MissingPolicy policy = MissingPolicy::kError);

// model,csd_rank_before,csd_rank_after,avg_rank_before,avg_rank_after
std::string comparison_to_csv(const RankingComparison& comparison);

}  // namespace swissrank

#endif  // SWISSRANK_ANALYSIS_HPP_

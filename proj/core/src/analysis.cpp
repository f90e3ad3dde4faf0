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

#include "swissrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "swissrank/csv.hpp"
#include "swissrank/error.hpp"

namespace swissrank {
namespace {

using boost::multiprecision::cpp_int;

struct Pairing {
  std::vector<MatchPair> pairs;
  std::optional<ModelIndex> bye;
};

// Every (matching, bye) configuration of `members`; all are equally likely
// under shuffle-and-pair-adjacent.
void enumerate_matchings(std::vector<ModelIndex> remaining, Pairing& current,
                         std::vector<Pairing>& out) {
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  if (remaining.size() % 2 == 1 && !current.bye) {
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      auto rest = remaining;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      current.bye = remaining[i];
      enumerate_matchings(std::move(rest), current, out);
      current.bye.reset();
    }
    return;
  }
  const ModelIndex head = remaining.front();
  for (std::size_t i = 1; i < remaining.size(); ++i) {
    std::vector<ModelIndex> rest;
    for (std::size_t j = 1; j < remaining.size(); ++j) {
      if (j != i) rest.push_back(remaining[j]);
    }
    current.pairs.push_back({head, remaining[i]});
    enumerate_matchings(std::move(rest), current, out);
    current.pairs.pop_back();
  }
}

std::vector<Pairing> all_matchings(const std::vector<ModelIndex>& members) {
  std::vector<Pairing> out;
  Pairing current;
  enumerate_matchings(members, current, out);
  return out;
}

void for_each_subset(const std::vector<ModelIndex>& items, std::size_t size, std::size_t start,
                     std::vector<ModelIndex>& chosen,
                     const std::function<void(const std::vector<ModelIndex>&)>& visit) {
  if (chosen.size() == size) {
    visit(chosen);
    return;
  }
  for (std::size_t i = start; i + (size - chosen.size()) <= items.size(); ++i) {
    chosen.push_back(items[i]);
    for_each_subset(items, size, i + 1, chosen, visit);
    chosen.pop_back();
  }
}

cpp_int binomial(std::size_t n, std::size_t r) {
  cpp_int out = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

using StateKey = std::pair<std::vector<bool>, std::vector<Score>>;

}  // namespace

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot represent a non-finite value exactly");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  cpp_int numerator = scaled;
  cpp_int denominator = 1;
  if (exponent >= 0) {
    numerator <<= exponent;
  } else {
    denominator <<= -exponent;
  }
  return Rational(numerator, denominator);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

ExactExpectation exact_expected_scores(const WinRateTensor& tensor,
                                       const EliminationSchedule& schedule,
                                       const OracleLimits& limits) {
  const std::size_t m = tensor.num_models();
  const std::size_t k = tensor.num_rounds();
  if (m > limits.max_models || k > limits.max_rounds) {
    throw InstanceTooLargeError("exact enumeration is limited to M <= " +
                                std::to_string(limits.max_models) + " and K <= " +
                                std::to_string(limits.max_rounds) + " (got M = " +
                                std::to_string(m) + ", K = " + std::to_string(k) + ")");
  }

  ExactExpectation out;
  out.models = tensor.models();
  std::map<StateKey, Rational> current;
  current[{std::vector<bool>(m, true), std::vector<Score>(m, 0)}] = 1;

  for (RoundIndex round = 0; round < k; ++round) {
    out.distinct_states += current.size();
    std::map<StateKey, Rational> next;
    const unsigned count = schedule.at(round);
    for (const auto& [key, probability] : current) {
      const auto& [active, scores] = key;
      const auto active_count = static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
      if (round > 0 && active_count < 2) {
        next[key] += probability;
        continue;
      }
      ContestState state{active, scores, round};
      std::vector<std::vector<Pairing>> per_group;
      cpp_int configurations = 1;
      for (const auto& group : group_by_score(state)) {
        per_group.push_back(all_matchings(group.members));
        configurations *= per_group.back().size();
      }
      const Rational config_probability = probability / Rational(configurations);

      // Odometer over the cartesian product of group configurations.
      std::vector<std::size_t> digit(per_group.size(), 0);
      while (true) {
        std::vector<MatchPair> pairs;
        for (std::size_t g = 0; g < per_group.size(); ++g) {
          const auto& p = per_group[g][digit[g]].pairs;
          pairs.insert(pairs.end(), p.begin(), p.end());
        }

        // Depth-first over match outcomes.
        std::vector<Score> played = scores;
        std::function<void(std::size_t, const Rational&)> outcomes =
            [&](std::size_t index, const Rational& weight) {
              if (index == pairs.size()) {
                std::vector<ModelIndex> minimum_group;
                Score minimum = std::numeric_limits<Score>::max();
                for (ModelIndex i = 0; i < m; ++i) {
                  if (active[i]) minimum = std::min(minimum, played[i]);
                }
                for (ModelIndex i = 0; i < m; ++i) {
                  if (active[i] && played[i] == minimum) minimum_group.push_back(i);
                }
                const std::size_t removed = std::min<std::size_t>(count, minimum_group.size());
                const Rational subset_weight = weight / Rational(binomial(minimum_group.size(), removed));
                std::vector<ModelIndex> chosen;
                for_each_subset(minimum_group, removed, 0, chosen,
                                [&](const std::vector<ModelIndex>& eliminated) {
                                  std::vector<bool> survivors = active;
                                  for (const auto e : eliminated) survivors[e] = false;
                                  next[{std::move(survivors), played}] += subset_weight;
                                });
                return;
              }
              const auto [a, b] = pairs[index];
              const Rational p_first = to_rational(tensor.at(std::min(a, b), std::max(a, b), round));
              const ModelIndex first = std::min(a, b);
              const ModelIndex second = std::max(a, b);
              if (p_first > 0) {
                ++played[first];
                outcomes(index + 1, weight * p_first);
                --played[first];
              }
              if (p_first < 1) {
                ++played[second];
                outcomes(index + 1, weight * (Rational(1) - p_first));
                --played[second];
              }
            };
        outcomes(0, config_probability);

        std::size_t g = 0;
        for (; g < digit.size(); ++g) {
          if (++digit[g] < per_group[g].size()) break;
          digit[g] = 0;
        }
        if (g == digit.size()) break;
      }
    }
    current = std::move(next);
  }
  out.distinct_states += current.size();

  out.exact.assign(m, Rational(0));
  for (const auto& [key, probability] : current) {
    for (ModelIndex i = 0; i < m; ++i) out.exact[i] += probability * key.second[i];
  }
  for (const auto& e : out.exact) out.values.push_back(to_double(e));
  return out;
}

Rational round_expectation_exact(const WinRateTensor& tensor, const ContestState& state,
                                 ModelIndex model) {
  if (model >= state.num_models() || !state.active[model]) {
    throw InactiveModelError("model " + std::to_string(model) + " is not active");
  }
  if (state.round >= tensor.num_rounds() || state.num_models() != tensor.num_models()) {
    throw DimensionMismatchError("contest state does not fit the tensor");
  }
  std::size_t group_size = 0;
  Rational win_sum = 0;
  for (ModelIndex j = 0; j < state.num_models(); ++j) {
    if (!state.active[j] || state.scores[j] != state.scores[model]) continue;
    ++group_size;
    if (j != model) win_sum += to_rational(tensor.at(model, j, state.round));
  }
  if (group_size == 1) return Rational(0);  // certain bye
  Rational mean = win_sum / Rational(group_size - 1);
  if (group_size % 2 == 1) mean *= Rational(group_size - 1, group_size);
  return mean;
}

double round_expectation(const WinRateTensor& tensor, const ContestState& state, ModelIndex model) {
  return to_double(round_expectation_exact(tensor, state, model));
}

std::string_view to_string(RiskProfile profile) {
  switch (profile) {
    case RiskProfile::kRobustGeneralist:
      return "robust_generalist";
    case RiskProfile::kAggressiveSpecialist:
      return "aggressive_specialist";
    case RiskProfile::kIntermediate:
      break;
  }
  return "intermediate";
}

FsaThresholds FsaThresholds::for_rounds(std::size_t num_rounds) {
  const double scale = static_cast<double>(num_rounds) / 12.0;
  return {-0.15 * scale, 0.03 * scale};
}

RiskProfile classify(double lambda, const FsaThresholds& thresholds) {
  if (std::abs(lambda) <= thresholds.generalist_band) return RiskProfile::kRobustGeneralist;
  if (lambda <= thresholds.lambda_specialist) return RiskProfile::kAggressiveSpecialist;
  return RiskProfile::kIntermediate;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("least-squares slope needs at least two (x, y) points");
  }
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    sxy += dx * y[i];
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw DomainError("least-squares slope is undefined for a constant x");
  return sxy / sxx;
}

void check_fsa_inputs(std::span<const unsigned> t_grid, const FsaThresholds& thresholds) {
  const std::set<unsigned> distinct(t_grid.begin(), t_grid.end());
  if (distinct.size() < 2) {
    throw DomainError("the t grid needs at least two distinct values for a slope");
  }
  if (!(thresholds.lambda_specialist < 0.0) || !(thresholds.generalist_band >= 0.0)) {
    throw DomainError("FSA thresholds need lambda_specialist < 0 <= generalist_band");
  }
}

FsaReport fsa_from_sweep(std::span<const SweepPoint> sweep, const FsaThresholds& thresholds) {
  FsaReport report;
  report.thresholds = thresholds;
  for (const auto& p : sweep) report.t_grid.push_back(p.t);
  check_fsa_inputs(report.t_grid, thresholds);

  std::vector<double> x(report.t_grid.begin(), report.t_grid.end());
  const auto [min_it, max_it] = std::minmax_element(report.t_grid.begin(), report.t_grid.end());
  const auto first = static_cast<std::size_t>(min_it - report.t_grid.begin());
  const auto last = static_cast<std::size_t>(max_it - report.t_grid.begin());
  const auto position = [&](unsigned t) -> std::optional<std::size_t> {
    const auto it = std::find(report.t_grid.begin(), report.t_grid.end(), t);
    if (it == report.t_grid.end()) return std::nullopt;
    return static_cast<std::size_t>(it - report.t_grid.begin());
  };
  const auto zero = position(0);
  const auto two = position(2);

  const auto& models = sweep.front().result.models;
  for (std::size_t m = 0; m < models.size(); ++m) {
    FsaModelReport r;
    r.model = models[m];
    for (const auto& p : sweep) {
      r.scores_by_t.push_back(p.result.expected_scores[m]);
      r.std_error_by_t.push_back(p.result.std_error[m]);
      report.monte_carlo_slack = std::max(report.monte_carlo_slack, 3.0 * p.result.std_error[m]);
    }
    r.base_score = r.scores_by_t[zero.value_or(first)];
    r.lambda = least_squares_slope(x, r.scores_by_t);
    r.lambda_endpoint = (r.scores_by_t[last] - r.scores_by_t[first]) /
                        static_cast<double>(report.t_grid[last] - report.t_grid[first]);
    if (zero && two) r.delta = r.scores_by_t[*two] - r.scores_by_t[*zero];
    r.classification = classify(r.lambda, thresholds);
    report.models.push_back(std::move(r));
  }
  return report;
}

FsaReport fsa(const WinRateTensor& tensor, const SimulationConfig& config,
              std::span<const unsigned> t_grid, const FsaThresholds& thresholds) {
  check_fsa_inputs(t_grid, thresholds);
  const auto sweep = estimate_sweep(tensor, config, t_grid);
  return fsa_from_sweep(sweep, thresholds);
}

std::string fsa_to_csv(const FsaReport& report) {
  std::string out = csv_line({"model", "base_score", "lambda", "delta", "class"});
  for (const auto& r : report.models) {
    out += csv_line({r.model, format_double(r.base_score), format_double(r.lambda),
                     r.delta ? format_double(*r.delta) : std::string(),
                     std::string(to_string(r.classification))});
  }
  return out;
}

std::string fsa_to_json(const FsaReport& report) {
  nlohmann::ordered_json doc;
  doc["t_grid"] = report.t_grid;
  doc["thresholds"] = {{"lambda_specialist", report.thresholds.lambda_specialist},
                       {"generalist_band", report.thresholds.generalist_band}};
  doc["monte_carlo_slack"] = report.monte_carlo_slack;
  auto models = nlohmann::ordered_json::array();
  for (const auto& r : report.models) {
    nlohmann::ordered_json entry;
    entry["model"] = r.model;
    entry["base_score"] = r.base_score;
    entry["lambda"] = r.lambda;
    entry["lambda_endpoint"] = r.lambda_endpoint;
    entry["delta"] = r.delta ? nlohmann::ordered_json(*r.delta) : nlohmann::ordered_json(nullptr);
    entry["class"] = to_string(r.classification);
    entry["e_score"] = r.scores_by_t;
    entry["std_err"] = r.std_error_by_t;
    models.push_back(std::move(entry));
  }
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

std::string fsa_plot_data_csv(const FsaReport& report) {
  std::string out = csv_line({"t", "model", "e_score", "std_err"});
  for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
    for (const auto& r : report.models) {
      out += csv_line({std::to_string(report.t_grid[i]), r.model, format_double(r.scores_by_t[i]),
                       format_double(r.std_error_by_t[i])});
    }
  }
  return out;
}

std::vector<std::size_t> rank_descending(std::span<const double> values,
                                         std::span<const ModelId> names) {
  if (values.size() != names.size()) throw DimensionMismatchError("values and names differ in length");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return names[a] < names[b];
  });
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

std::vector<std::size_t> csd_ranks(const SimulationResult& result) {
  return rank_descending(result.expected_scores, result.models);
}

AverageBaseline average_baseline_rank(const ScoreTable& table, MissingPolicy policy) {
  if (table.num_datasets() == 0) throw DomainError("average baseline needs at least one dataset");
  AverageBaseline out;
  for (std::size_t m = 0; m < table.num_models(); ++m) {
    double sum = 0.0;
    for (std::size_t d = 0; d < table.num_datasets(); ++d) {
      const auto& v = table.at(m, d);
      if (!v && policy == MissingPolicy::kError) {
        throw MissingScoreError("missing score for model '" + table.models()[m] +
                                "' on dataset '" + table.datasets()[d] + "'");
      }
      sum += v.value_or(0.0);
    }
    out.means.push_back(sum / static_cast<double>(table.num_datasets()));
  }
  out.ranks = rank_descending(out.means, table.models());
  return out;
}

long RankingComparison::csd_delta(std::size_t model) const {
  return static_cast<long>(csd_rank_after[model]) - static_cast<long>(csd_rank_before[model]);
}

long RankingComparison::avg_delta(std::size_t model) const {
  return static_cast<long>(avg_rank_after[model]) - static_cast<long>(avg_rank_before[model]);
}

RankingComparison perturbation_experiment(const ScoreTable& base, const ScoreTable& perturbed,
                                          const RoundSequence& sequence,
                                          const SimulationConfig& config, MissingPolicy policy) {
  if (base.models() != perturbed.models() || base.datasets() != perturbed.datasets()) {
    throw DimensionMismatchError("base and perturbed tables must share models and datasets");
  }
  RankingComparison out;
  out.models = base.models();
  out.csd_before = estimate(build_tensor(validate_inputs(base, sequence, policy)), config);
  out.csd_after = estimate(build_tensor(validate_inputs(perturbed, sequence, policy)), config);
  out.csd_rank_before = csd_ranks(out.csd_before);
  out.csd_rank_after = csd_ranks(out.csd_after);
  auto avg_before = average_baseline_rank(base, policy);
  auto avg_after = average_baseline_rank(perturbed, policy);
  out.avg_rank_before = std::move(avg_before.ranks);
  out.avg_rank_after = std::move(avg_after.ranks);
  out.mean_before = std::move(avg_before.means);
  out.mean_after = std::move(avg_after.means);
  return out;
}

std::string comparison_to_csv(const RankingComparison& c) {
  std::string out =
      csv_line({"model", "csd_rank_before", "csd_rank_after", "avg_rank_before", "avg_rank_after"});
  for (std::size_t m = 0; m < c.models.size(); ++m) {
    out += csv_line({c.models[m], std::to_string(c.csd_rank_before[m]),
                     std::to_string(c.csd_rank_after[m]), std::to_string(c.avg_rank_before[m]),
                     std::to_string(c.avg_rank_after[m])});
  }
  return out;
}

}  // namespace swissrank

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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

#include "swissrank/error.hpp"

namespace swissrank {
namespace {

constexpr std::uint64_t kBlockSize = 1024;

using Wide = unsigned __int128;

struct Accumulator {
  explicit Accumulator(std::size_t m, std::size_t k)
      : sum(m, 0), sum_squares(m, 0), survived(m, 0), histogram(m * k, 0) {}

  void add(const InstanceSummary& s, std::size_t k) {
    for (std::size_t m = 0; m < sum.size(); ++m) {
      const auto v = static_cast<std::uint64_t>(s.final_scores[m]);
      sum[m] += v;
      sum_squares[m] += v * v;
      if (s.eliminated_round[m] < 0) {
        ++survived[m];
      } else {
        ++histogram[m * k + static_cast<std::size_t>(s.eliminated_round[m])];
      }
    }
    matches += s.matches_played;
  }

  void merge(const Accumulator& other) {
    for (std::size_t m = 0; m < sum.size(); ++m) {
      sum[m] += other.sum[m];
      sum_squares[m] += other.sum_squares[m];
      survived[m] += other.survived[m];
    }
    for (std::size_t i = 0; i < histogram.size(); ++i) histogram[i] += other.histogram[i];
    matches += other.matches;
  }

  std::vector<std::uint64_t> sum;
  std::vector<std::uint64_t> sum_squares;
  std::vector<std::uint64_t> survived;
  std::vector<std::uint64_t> histogram;
  std::uint64_t matches = 0;
};

unsigned resolve_workers(unsigned requested, std::uint64_t blocks) {
  unsigned workers = requested;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
}

SimulationResult run_estimate(const WinRateTensor& tensor, const SimulationConfig& config,
                              const RoundOrderSampler* sampler) {
  if (config.iterations == 0) throw DomainError("iteration count N must be at least 1");
  const std::size_t m = tensor.num_models();
  const std::size_t k = tensor.num_rounds();
  if (k == 0) throw DimensionMismatchError("tensor has no rounds");
  if (!config.schedule.is_constant() && config.schedule.counts().size() < k) {
    throw DimensionMismatchError("elimination schedule is shorter than the number of rounds");
  }

  const std::uint64_t n = config.iterations;
  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  const unsigned workers = resolve_workers(config.workers, blocks);

  std::vector<Accumulator> partial(workers, Accumulator(m, k));
  std::atomic<std::uint64_t> next_block{0};
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    try {
      ContestRunner runner(tensor, config.schedule);
      std::vector<RoundIndex> order;
      auto& acc = partial[w];
      for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
        const std::uint64_t end = std::min(n, (b + 1) * kBlockSize);
        for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
          if (sampler) {
            RandomStream order_rng(config.seed, i, StreamPurpose::kOrder);
            order.resize(k);
            (*sampler)(order_rng, order);
          }
          RandomStream rng(config.seed, i);
          acc.add(runner.run(rng, order), k);
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Integer sums are associative, so merge order cannot affect the result.
  Accumulator total(m, k);
  for (const auto& p : partial) total.merge(p);

  SimulationResult result;
  result.models = tensor.models();
  result.iterations = n;
  result.seed = config.seed;
  result.schedule = config.schedule;
  result.mean_matches_played = static_cast<double>(total.matches) / static_cast<double>(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    result.expected_scores.push_back(static_cast<double>(total.sum[i]) / nd);
    double se = 0.0;
    if (n > 1) {
      // N * sum(x^2) - (sum x)^2 is exact in 128-bit integers.
      const Wide numerator = static_cast<Wide>(n) * total.sum_squares[i] -
                             static_cast<Wide>(total.sum[i]) * total.sum[i];
      const double variance = static_cast<double>(numerator) / (nd * static_cast<double>(n - 1));
      se = std::sqrt(variance / nd);
    }
    result.std_error.push_back(se);
    result.survival_prob.push_back(static_cast<double>(total.survived[i]) / nd);
    result.elim_histogram.emplace_back(total.histogram.begin() + static_cast<std::ptrdiff_t>(i * k),
                                       total.histogram.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
  }
  return result;
}

}  // namespace

SimulationResult estimate(const WinRateTensor& tensor, const SimulationConfig& config) {
  return run_estimate(tensor, config, nullptr);
}

SimulationResult estimate_with_round_orders(const WinRateTensor& tensor,
                                            const SimulationConfig& config,
                                            const RoundOrderSampler& sampler) {
  return run_estimate(tensor, config, &sampler);
}

std::vector<SweepPoint> estimate_sweep(const WinRateTensor& tensor, const SimulationConfig& config,
                                       std::span<const unsigned> t_values) {
  if (t_values.empty()) throw DomainError("elimination sweep needs at least one t value");
  std::vector<SweepPoint> out;
  out.reserve(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    SimulationConfig point = config;
    point.seed = derive_seed(config.seed, i);
    point.schedule = EliminationSchedule::constant(t_values[i]);
    out.push_back({t_values[i], estimate(tensor, point)});
  }
  return out;
}

std::string simulation_result_to_json(const SimulationResult& result) {
  nlohmann::ordered_json doc;
  doc["seed"] = result.seed;
  doc["iterations"] = result.iterations;
  if (result.schedule.is_constant()) {
    doc["t"] = result.schedule.constant_count();
  } else {
    doc["t"] = result.schedule.counts();
  }
  doc["models"] = result.models;
  doc["e_score"] = result.expected_scores;
  doc["std_err"] = result.std_error;
  doc["survival"] = result.survival_prob;
  doc["elim_hist"] = result.elim_histogram;
  doc["mean_matches"] = result.mean_matches_played;
  return doc.dump(2) + "\n";
}

}  // namespace swissrank

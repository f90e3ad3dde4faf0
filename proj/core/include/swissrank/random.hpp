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

#ifndef SWISSRANK_RANDOM_HPP_
#define SWISSRANK_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace swissrank {

// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit counter
// and a 64-bit key to 128 pseudo-random bits.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Independent sub-streams of one root seed. Purposes never share a stream even
// at equal indices.
enum class StreamPurpose : std::uint64_t {
  kContest = 0,
  kOrder = 1,
  kAuxiliary = 2,
};

// Counter-based random stream. The stream is fully determined by
// (seed, purpose, stream_id); there is no hidden global state, so instance i of
// a Monte Carlo run draws the same numbers on any thread in any order.
//
// All derived draws (bounded integers, uniforms, shuffles) are implemented here
// rather than through <random> distributions, whose output is not specified by
// the standard and differs between library vendors.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id,
               StreamPurpose purpose = StreamPurpose::kContest);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Uniform double in the open interval (0, 1).
  double uniform_open();

  // True with probability p; consumes exactly one draw.
  bool bernoulli(double p) { return uniform() < p; }

  // Uniform random permutation (Fisher-Yates, high index first).
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  // Moves a uniform random subset of size `count` to the front of `items`.
  template <typename T>
  void partial_shuffle(std::span<T> items, std::size_t count) {
    for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
      const auto j = i + static_cast<std::size_t>(below(items.size() - i));
      using std::swap;
      swap(items[i], items[j]);
    }
  }

 private:
  void refill();

  PhiloxKey key_{};
  PhiloxCounter counter_{};
  PhiloxCounter block_{};
  unsigned next_word_ = 4;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for the index-th member of a family of runs (e.g. one per value of a
// parameter sweep). derive_seed(seed, 0) == seed, so a one-element sweep
// reproduces a plain run bit for bit.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace swissrank

#endif  // SWISSRANK_RANDOM_HPP_

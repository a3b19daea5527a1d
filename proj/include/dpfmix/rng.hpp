// Copyright 2026 The DPFMix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPFMIX_RNG_HPP_
#define DPFMIX_RNG_HPP_

#include <cstdint>
#include <vector>

namespace dpfmix {

// Counter-based random stream (SplitMix64 core). Every consumer derives an
// independent stream from (master seed, purpose, index), so generation order
// and thread scheduling cannot change the values any record sees.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : state_(key) {}

  // Stream key derivation: two mixing rounds over (seed, purpose, index).
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t purpose,
                             std::uint64_t index);

  std::uint64_t next_u64();

  // Uniform on (0, 1] (never returns 0, so log(u) is always finite).
  double next_uniform();

  // Standard normal via Box-Muller; the paired draw is cached.
  double next_gaussian();

  // UniformRandomBitGenerator interface for <random> distributions.
  std::uint64_t operator()() { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Poisson subsampling: each index in [0, n) is included independently with
// probability rate. Realized by exact geometric gap skipping, so the cost is
// proportional to the subset size rather than n. Indices come out sorted.
std::vector<std::uint32_t> poisson_subsample(std::uint32_t n, double rate,
                                             RandomStream& stream);

// Stream purposes used across the library. Values are part of the
// reproducibility contract: changing them changes every seeded output.
namespace stream_purpose {
inline constexpr std::uint64_t kSubsample = 1;
inline constexpr std::uint64_t kFeatureNoise = 2;
inline constexpr std::uint64_t kLabelNoise = 3;
inline constexpr std::uint64_t kDesignMatrix = 10;
inline constexpr std::uint64_t kBetaStar = 11;
inline constexpr std::uint64_t kRegressionNoise = 12;
inline constexpr std::uint64_t kMixupRow = 13;
inline constexpr std::uint64_t kMixNoiseX = 14;
inline constexpr std::uint64_t kMixNoiseY = 15;
inline constexpr std::uint64_t kSweepCell = 16;
inline constexpr std::uint64_t kModelInit = 20;
inline constexpr std::uint64_t kBatchShuffle = 21;
}  // namespace stream_purpose

}  // namespace dpfmix

#endif  // DPFMIX_RNG_HPP_

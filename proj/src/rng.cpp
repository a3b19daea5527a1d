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

#include "dpfmix/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpfmix {
namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream RandomStream::derive(std::uint64_t master_seed,
                                  std::uint64_t purpose, std::uint64_t index) {
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s ^= purpose * 0xd1342543de82ef95ULL;
  std::uint64_t b = splitmix64(s);
  s ^= index * 0xaf251af3b0f025b5ULL;
  std::uint64_t c = splitmix64(s);
  return RandomStream(a ^ (b + 0x9e3779b97f4a7c15ULL) ^ (c << 1));
}

std::uint64_t RandomStream::next_u64() { return splitmix64(state_); }

double RandomStream::next_uniform() {
  // 53 random bits into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = next_uniform();
  double u2 = next_uniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<std::uint32_t> poisson_subsample(std::uint32_t n, double rate,
                                             RandomStream& stream) {
  if (rate < 0.0 || rate > 1.0 || !std::isfinite(rate)) {
    throw std::invalid_argument("poisson_subsample: rate must be in [0, 1]");
  }
  std::vector<std::uint32_t> indices;
  if (rate == 0.0 || n == 0) return indices;
  if (rate == 1.0) {
    indices.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) indices[i] = i;
    return indices;
  }
  indices.reserve(static_cast<std::size_t>(rate * n * 1.3) + 8);
  // Gap between successive included indices is Geometric(rate); sampling the
  // gaps is an exact realization of n independent Bernoulli(rate) draws.
  const double log1m = std::log1p(-rate);
  double position = -1.0;
  for (;;) {
    position += 1.0 + std::floor(std::log(stream.next_uniform()) / log1m);
    if (position >= static_cast<double>(n)) break;
    indices.push_back(static_cast<std::uint32_t>(position));
  }
  return indices;
}

}  // namespace dpfmix

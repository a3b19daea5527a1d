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

#ifndef DPFMIX_RELEASE_HPP_
#define DPFMIX_RELEASE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpfmix/accountant.hpp"
#include "dpfmix/dataset.hpp"
#include "dpfmix/tradeoff.hpp"

namespace dpfmix {

// Privacy budget given either directly as mu or as an (eps, delta) pair.
struct Budget {
  std::optional<double> mu;
  std::optional<EpsDelta> eps_delta;

  static Budget from_mu(double mu) { return Budget{mu, std::nullopt}; }
  static Budget from_epsdelta(double eps, double delta) {
    return Budget{std::nullopt, EpsDelta{eps, delta}};
  }

  // Resolves to the GDP parameter; throws ConfigError if unset, ambiguous,
  // or non-positive.
  GaussianTradeoffParam resolve() const;
};

struct ExtractorConfig {
  enum class Kind { kIdentity, kPrecomputedFile };
  Kind kind = Kind::kIdentity;
  std::string path;  // feature matrix file for kPrecomputedFile

  std::string describe() const;
};

// All release knobs. disable_noise is a test hook: it keeps every random
// stream identical to a normal run but skips the Gaussian perturbation, so
// tests can isolate the pre-noise signal path.
struct ReleaseConfig {
  std::uint64_t m = 1;       // mixup degree (fixed averaging divisor)
  std::uint64_t T = 1;       // number of released records
  double c_x = 1.0;          // feature clipping norm
  double c_y = 1.0;          // label clipping norm
  double lambda = 1.0;       // sigma_y / sigma_x
  Budget budget;
  std::uint64_t seed = 0;
  ExtractorConfig extractor;
  bool disable_noise = false;
};

// Everything needed to audit a release: the resolved configuration plus the
// derived privacy quantities.
struct ReleaseManifest {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t T = 0;
  double c_x = 0.0;
  double c_y = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  double sigma_x_eff = 0.0;
  double sigma_y_eff = 0.0;
  std::uint64_t seed = 0;
  std::string extractor;
  std::string version;

  std::string to_json() const;
  static ReleaseManifest from_json(const std::string& text);
};

struct ReleasedDataset {
  Matrix features;  // T x p
  Matrix labels;    // T x k
  ReleaseManifest manifest;
};

// L2-norm clipping: v / max(1, ||v||_2 / bound). The zero vector maps to
// itself.
void clip_row(std::span<double> row, double bound);

// The release pipeline: for each of T output records, Poisson-subsample the
// input at rate m/n, clip each selected row, average with the fixed divisor
// m (an empty subset contributes a zero sum), and perturb per coordinate
// with the calibrated Gaussian noise.
ReleasedDataset release(const FeatureDataset& data, const ReleaseConfig& cfg);

// Released datasets live in <base>.features.bin / <base>.labels.bin /
// <base>.manifest.json.
void store_released(const ReleasedDataset& released, const std::string& base);
ReleasedDataset load_released(const std::string& base);

// eps solving delta(mu, eps) = delta for a fixed mu (the manifest carries a
// full (mu, eps, delta) triple no matter which form the budget used).
double mu_delta_to_eps(double mu, double delta);

}  // namespace dpfmix

#endif  // DPFMIX_RELEASE_HPP_

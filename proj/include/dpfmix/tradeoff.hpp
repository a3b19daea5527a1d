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

#ifndef DPFMIX_TRADEOFF_HPP_
#define DPFMIX_TRADEOFF_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace dpfmix {

// Gaussian differential privacy parameter. mu = 0 is perfect privacy.
struct GaussianTradeoffParam {
  double mu = 0.0;
};

struct EpsDelta {
  double eps = 0.0;
  double delta = 0.0;
};

// Discretized trade-off function f(alpha): the minimal type-II error
// achievable at each type-I error alpha when distinguishing neighboring
// datasets. Stored as matched (alpha, beta) samples on a sorted grid over
// [0, 1]; evaluation is piecewise linear.
//
// Invariants (checked by validate()):
//   - alphas strictly increasing, starting at 0 and ending at 1
//   - betas non-increasing
//   - piecewise-linear graph convex (second differences >= -1e-12)
//   - 0 <= f(alpha) <= 1 - alpha at every grid point (within 1e-12)
class TradeoffCurve {
 public:
  TradeoffCurve() = default;
  TradeoffCurve(std::vector<double> alphas, std::vector<double> betas);

  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<double>& betas() const { return betas_; }
  std::size_t size() const { return alphas_.size(); }

  // Piecewise-linear evaluation; alpha outside [0,1] is clamped.
  double value_at(double alpha) const;

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

 private:
  std::vector<double> alphas_;
  std::vector<double> betas_;
};

inline constexpr std::size_t kDefaultGridSize = 100001;

// Id(alpha) = 1 - alpha, the trade-off of perfect privacy.
TradeoffCurve identity_curve(std::size_t grid_size = kDefaultGridSize);

// G_mu(alpha) = Phi(Phi^{-1}(1 - alpha) - mu) sampled on a uniform grid.
TradeoffCurve gaussian_tradeoff(GaussianTradeoffParam mu,
                                std::size_t grid_size = kDefaultGridSize);

// f_p = p f + (1 - p) Id: privacy amplification by Poisson subsampling at
// sample rate p, applied pointwise.
TradeoffCurve subsample_mixture(const TradeoffCurve& f, double p);

// Functional inverse f^{-1}(y) = inf{ x : f(x) <= y }, i.e. the graph
// reflected across the diagonal, re-sampled on the input grid.
TradeoffCurve invert(const TradeoffCurve& f);

// min{f, f^{-1}}**: pointwise minimum with the inverse, then the greatest
// convex minorant (lower convex hull of the discretized graph). This is the
// symmetrization that accounts for both record-add and record-remove
// adjacency directions.
TradeoffCurve symmetrize(const TradeoffCurve& f);

// f-DP -> (eps, delta) duality: delta(eps) = max_alpha(1 - e^eps alpha -
// f(alpha)), clamped into [0, 1].
EpsDelta curve_to_epsdelta(const TradeoffCurve& f, double eps);

// Closed-form delta(eps) for mu-GDP:
//   delta = Phi(-eps/mu + mu/2) - e^eps Phi(-eps/mu - mu/2).
// mu = 0 is the perfect-privacy special case with delta = 0.
EpsDelta mu_to_epsdelta(GaussianTradeoffParam mu, double eps);

// Unique mu whose delta(eps) curve passes through the target, by bisection
// over mu in [1e-8, 100]. Requires delta in (0, 1).
GaussianTradeoffParam epsdelta_to_mu(EpsDelta target);

// CSV serialization with header "alpha,beta" at full grid resolution.
void write_curve_csv(const TradeoffCurve& f, const std::string& path);

// Grid-wise distances between two curves sampled on identical grids.
double curve_linf_distance(const TradeoffCurve& a, const TradeoffCurve& b);
double curve_l2_distance(const TradeoffCurve& a, const TradeoffCurve& b);

}  // namespace dpfmix

#endif  // DPFMIX_TRADEOFF_HPP_

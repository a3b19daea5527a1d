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

#ifndef DPFMIX_ACCOUNTANT_HPP_
#define DPFMIX_ACCOUNTANT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dpfmix/tradeoff.hpp"

namespace dpfmix {

// One release step: Poisson subsampling at rate p = m/n followed by the
// Gaussian perturbation of features and labels. Releasing both is a single
// Gaussian step with 1/sigma_eff^2 = 1/sigma_x^2 + 1/sigma_y^2.
struct MechanismStep {
  double sample_rate = 0.0;  // p = m/n
  double sigma_eff = 1.0;    // composed single-Gaussian noise multiplier

  static MechanismStep from_noise_multipliers(double sigma_x, double sigma_y,
                                              std::uint64_t m, std::uint64_t n);
  void validate() const;
};

// Discretization of the privacy-loss grid used by compose_exact. loss_cap = 0
// selects the automatic span 30 / sigma_eff + 30, which keeps the mass
// escaping the grid far below the 1e-9 accounting tolerance at every default
// setting.
struct PldConfig {
  double spacing = 1e-3;
  double loss_cap = 0.0;
};

// Discretized privacy-loss distribution of the dominating pair
//   P = N(0, sigma^2)   vs   Q = (1-p) N(0, sigma^2) + p N(1, sigma^2)
// (the record-remove direction; the record-add direction is recovered by the
// final symmetrization). Atoms sit on the uniform grid
// loss(k) = grid_min + k * spacing. null_masses holds the distribution of the
// log-likelihood ratio under P, alt_masses the exact cell masses under Q, so
// threshold tests on the discretized statistic give exactly achievable
// (type-I, type-II) pairs for the true product pair.
class PrivacyLossDistribution {
 public:
  static PrivacyLossDistribution from_step(const MechanismStep& step,
                                           const PldConfig& config);

  // T-fold self-composition by repeated squaring; each product is an FFT
  // convolution followed by re-folding onto the original grid window.
  PrivacyLossDistribution self_compose(std::uint64_t times) const;

  // Trade-off curve of the composed pair: sweep likelihood-ratio thresholds
  // from the top of the grid, accumulating type-I error under P and type-II
  // error under Q, then re-sample on the standard uniform alpha grid.
  TradeoffCurve to_tradeoff_curve(std::size_t grid_size) const;

  double grid_min() const { return grid_min_; }
  double spacing() const { return spacing_; }
  const std::vector<double>& null_masses() const { return null_masses_; }
  const std::vector<double>& alt_masses() const { return alt_masses_; }
  double null_infinity_mass() const { return null_infinity_mass_; }
  double alt_infinity_mass() const { return alt_infinity_mass_; }

  // Throws AccuracyError if either side's total mass drifted by more than
  // 1e-6 from 1 (advice: widen or refine the grid).
  void check_mass_conservation() const;

 private:
  PrivacyLossDistribution() = default;
  PrivacyLossDistribution multiply(const PrivacyLossDistribution& other) const;

  double grid_min_ = 0.0;
  double spacing_ = 0.0;
  std::vector<double> null_masses_;
  std::vector<double> alt_masses_;
  double null_infinity_mass_ = 0.0;
  double alt_infinity_mass_ = 0.0;
};

// Calibrated per-coordinate noise magnitudes (Gaussian stddevs) injected by
// the release, together with the underlying noise multipliers.
struct NoiseScales {
  double sigma_x_eff = 0.0;  // C_x * sigma_x / m, per feature coordinate
  double sigma_y_eff = 0.0;  // C_y * sigma_y / m, per label coordinate
  double lambda = 1.0;       // sigma_y / sigma_x
  double sigma_x = 0.0;      // feature noise multiplier
  double sigma_y = 0.0;      // label noise multiplier
};

struct RdpCurve {
  std::vector<long> orders;     // integer orders alpha >= 2, increasing
  std::vector<double> epsilons; // eps_RDP(alpha)
};

struct RdpConversion {
  EpsDelta eps_delta;
  long best_order = 0;
};

struct NoiseComparisonRow {
  std::uint64_t m = 0;
  double gdp_noise = 0.0;  // per-coordinate noise via the GDP calibration
  double rdp_noise = 0.0;  // per-coordinate noise via the Poisson-RDP path
};

struct CltConvergenceRow {
  std::uint64_t steps = 0;
  double linf_err = 0.0;
  double l2_err = 0.0;
};

// Trade-off curve of a single step: subsample_mixture(G_{1/sigma_eff}, p).
TradeoffCurve step_tradeoff(const MechanismStep& step,
                            std::size_t grid_size = kDefaultGridSize);

// Exact numerical T-fold composition of the step, symmetrized to cover both
// adjacency directions. Requires p < 1.
TradeoffCurve compose_exact(const MechanismStep& step, std::uint64_t times,
                            const PldConfig& config = PldConfig{},
                            std::size_t grid_size = kDefaultGridSize);

// Asymptotic GDP parameter of the T-fold composition:
//   nu = m sqrt(T) / n,   mu = nu * sqrt(exp(1/sigma_eff^2) - 1).
GaussianTradeoffParam clt_mu(const MechanismStep& step, std::uint64_t times,
                             std::uint64_t n, std::uint64_t m);

// Closed-form noise calibration: smallest per-coordinate noise such that the
// release is asymptotically mu-GDP, split between features and labels by
// lambda = sigma_y / sigma_x:
//   sigma_x = sqrt(lambda^2 + 1) / (lambda sqrt(ln(1 + mu^2 n^2 / (m^2 T))))
NoiseScales calibrate_noise(std::uint64_t n, std::uint64_t m, std::uint64_t T,
                            GaussianTradeoffParam mu, double c_x, double c_y,
                            double lambda);

// Poisson-subsampled Gaussian Renyi-DP accountant. For each integer order
// alpha >= 2 evaluates the exact binomial sum
//   eps(alpha) = T/(alpha-1) * log{ (1-p)^(alpha-1) (alpha p - p + 1)
//                 + sum_{l=2}^{alpha} C(alpha,l) (1-p)^(alpha-l) p^l
//                   e^{(l-1) eps_M(alpha)} }
// with the per-step Gaussian term eps_M(alpha) = alpha/(2 sigma_x^2) +
// alpha/(2 sigma_y^2), stabilized in log space.
RdpCurve rdp_epsilon(std::uint64_t n, std::uint64_t m, std::uint64_t T,
                     double sigma_x, double sigma_y,
                     const std::vector<long>& orders);

// Renyi-DP -> (eps, delta): eps* = min_alpha eps(alpha) + log(1/delta)/(alpha-1),
// recording the minimizing order.
RdpConversion rdp_to_epsdelta(const RdpCurve& curve, double delta);

// Per-m comparison of the noise needed to hit the same (eps, delta) target
// through the GDP calibration versus the Poisson-RDP accountant (lambda = 1).
std::vector<NoiseComparisonRow> noise_vs_m_table(
    std::uint64_t n, std::uint64_t T, EpsDelta target,
    const std::vector<std::uint64_t>& m_values);

// CLT convergence experiment: fix nu = mu / sqrt(exp(1/sigma_eff^2) - 1), set
// p = nu / sqrt(T) per row, and measure the distance between compose_exact
// and the limiting G_mu.
std::vector<CltConvergenceRow> clt_convergence_table(
    double mu, double sigma_eff, const std::vector<std::uint64_t>& T_values,
    const PldConfig& config = PldConfig{},
    std::size_t grid_size = kDefaultGridSize);

void write_noise_table_csv(const std::vector<NoiseComparisonRow>& rows,
                           const std::string& path);
void write_clt_table_csv(const std::vector<CltConvergenceRow>& rows,
                         const std::string& path);

}  // namespace dpfmix

#endif  // DPFMIX_ACCOUNTANT_HPP_

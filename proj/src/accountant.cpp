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

#include "dpfmix/accountant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include "dpfmix/errors.hpp"
#include "dpfmix/normal.hpp"
#include "fft.hpp"

namespace dpfmix {
namespace {

constexpr double kMassTolerance = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

double resolve_loss_cap(const PldConfig& config, double sigma_eff) {
  if (config.loss_cap > 0.0) return config.loss_cap;
  return 30.0 / sigma_eff + 30.0;
}

}  // namespace

MechanismStep MechanismStep::from_noise_multipliers(double sigma_x,
                                                    double sigma_y,
                                                    std::uint64_t m,
                                                    std::uint64_t n) {
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
    throw std::invalid_argument("MechanismStep: noise multipliers must be > 0");
  }
  if (n == 0 || m > n) {
    throw std::invalid_argument("MechanismStep: need 0 <= m <= n, n > 0");
  }
  double inv_sq = 1.0 / (sigma_x * sigma_x) + 1.0 / (sigma_y * sigma_y);
  MechanismStep step;
  step.sample_rate = static_cast<double>(m) / static_cast<double>(n);
  step.sigma_eff = 1.0 / std::sqrt(inv_sq);
  return step;
}

void MechanismStep::validate() const {
  if (!(sample_rate >= 0.0 && sample_rate <= 1.0)) {
    throw std::invalid_argument("MechanismStep: sample_rate must be in [0, 1]");
  }
  if (!(sigma_eff > 0.0) || !std::isfinite(sigma_eff)) {
    throw std::invalid_argument("MechanismStep: sigma_eff must be positive");
  }
}

PrivacyLossDistribution PrivacyLossDistribution::from_step(
    const MechanismStep& step, const PldConfig& config) {
  step.validate();
  if (step.sample_rate >= 1.0) {
    throw std::invalid_argument(
        "PrivacyLossDistribution: requires sample_rate < 1");
  }
  if (!(config.spacing > 0.0)) {
    throw std::invalid_argument("PldConfig: spacing must be > 0");
  }

  const double cap = resolve_loss_cap(config, step.sigma_eff);
  const double h = config.spacing;
  const std::size_t cells = static_cast<std::size_t>(std::lround(2.0 * cap / h)) + 1;

  PrivacyLossDistribution pld;
  pld.grid_min_ = -cap;
  pld.spacing_ = h;
  pld.null_masses_.assign(cells, 0.0);
  pld.alt_masses_.assign(cells, 0.0);

  const double p = step.sample_rate;
  if (p == 0.0) {
    // P == Q: all mass at zero privacy loss.
    std::size_t zero_cell = static_cast<std::size_t>(std::lround(cap / h));
    pld.null_masses_[zero_cell] = 1.0;
    pld.alt_masses_[zero_cell] = 1.0;
    return pld;
  }

  const double sigma = step.sigma_eff;
  const double sigma_sq = sigma * sigma;
  const double log_1mp = std::log1p(-p);
  // loss(x) = log((1-p) + p e^{(x - 1/2)/sigma^2}) is strictly increasing;
  // cell boundaries in loss map back to points in x.
  auto loss_to_x = [&](double loss) {
    if (loss <= log_1mp) return -kInf;
    // e^loss - (1-p), evaluated as expm1 difference to keep precision for
    // losses near log(1-p).
    double num = std::expm1(loss) + p;
    if (num <= 0.0) return -kInf;
    return 0.5 + sigma_sq * (std::log(num) - std::log(p));
  };

  double x_lo = -kInf;  // lower boundary of cell 0 folds the whole left tail
  for (std::size_t k = 0; k < cells; ++k) {
    const double upper_loss = pld.grid_min_ + (static_cast<double>(k) + 0.5) * h;
    const double x_hi = loss_to_x(upper_loss);
    if (x_hi > x_lo) {
      pld.null_masses_[k] = normal_interval_mass(x_lo / sigma, x_hi / sigma);
      pld.alt_masses_[k] =
          (1.0 - p) * normal_interval_mass(x_lo / sigma, x_hi / sigma) +
          p * normal_interval_mass((x_lo - 1.0) / sigma, (x_hi - 1.0) / sigma);
      x_lo = x_hi;
    }
  }
  // Losses beyond the cap: unbounded privacy loss bucket.
  if (std::isfinite(x_lo)) {
    pld.null_infinity_mass_ = normal_sf(x_lo / sigma);
    pld.alt_infinity_mass_ = (1.0 - p) * normal_sf(x_lo / sigma) +
                             p * normal_sf((x_lo - 1.0) / sigma);
  }
  pld.check_mass_conservation();
  return pld;
}

void PrivacyLossDistribution::check_mass_conservation() const {
  double null_total = null_infinity_mass_;
  for (double v : null_masses_) null_total += v;
  double alt_total = alt_infinity_mass_;
  for (double v : alt_masses_) alt_total += v;
  if (std::fabs(null_total - 1.0) > kMassTolerance ||
      std::fabs(alt_total - 1.0) > kMassTolerance) {
    throw AccuracyError(
        "privacy loss distribution lost probability mass beyond 1e-6; widen "
        "the loss_cap or refine the spacing of the PldConfig");
  }
}

PrivacyLossDistribution PrivacyLossDistribution::multiply(
    const PrivacyLossDistribution& other) const {
  if (spacing_ != other.spacing_ || grid_min_ != other.grid_min_ ||
      null_masses_.size() != other.null_masses_.size()) {
    throw std::invalid_argument("PLD multiply: mismatched grids");
  }
  const std::size_t cells = null_masses_.size();
  std::vector<double> null_conv =
      internal::convolve(null_masses_, other.null_masses_);
  std::vector<double> alt_conv =
      internal::convolve(alt_masses_, other.alt_masses_);

  // The sum's natural support starts at 2*grid_min; re-fold onto the original
  // window. Mass below the window collapses into the bottom cell (those
  // losses are dominated by e^{grid_min} ~ 0 on the alternative side), mass
  // above the window joins the unbounded bucket.
  PrivacyLossDistribution out;
  out.grid_min_ = grid_min_;
  out.spacing_ = spacing_;
  out.null_masses_.assign(cells, 0.0);
  out.alt_masses_.assign(cells, 0.0);

  // Index j of the convolution sits at loss 2*grid_min + j*h; target index is
  // j - shift with shift = round(-grid_min / h).
  const std::ptrdiff_t shift =
      static_cast<std::ptrdiff_t>(std::lround(-grid_min_ / spacing_));
  double null_top = 0.0, alt_top = 0.0;
  for (std::size_t j = 0; j < null_conv.size(); ++j) {
    std::ptrdiff_t k = static_cast<std::ptrdiff_t>(j) - shift;
    if (k < 0) k = 0;
    if (k >= static_cast<std::ptrdiff_t>(cells)) {
      null_top += null_conv[j];
      alt_top += alt_conv[j];
      continue;
    }
    out.null_masses_[static_cast<std::size_t>(k)] += null_conv[j];
    out.alt_masses_[static_cast<std::size_t>(k)] += alt_conv[j];
  }
  out.null_infinity_mass_ = null_infinity_mass_ + other.null_infinity_mass_ -
                            null_infinity_mass_ * other.null_infinity_mass_ +
                            null_top;
  out.alt_infinity_mass_ = alt_infinity_mass_ + other.alt_infinity_mass_ -
                           alt_infinity_mass_ * other.alt_infinity_mass_ +
                           alt_top;
  return out;
}

PrivacyLossDistribution PrivacyLossDistribution::self_compose(
    std::uint64_t times) const {
  if (times == 0) {
    throw std::invalid_argument("self_compose: times must be >= 1");
  }
  std::uint64_t remaining = times;
  PrivacyLossDistribution base = *this;
  std::optional<PrivacyLossDistribution> acc;
  for (;;) {
    if (remaining & 1ULL) {
      acc = acc.has_value() ? acc->multiply(base) : base;
    }
    remaining >>= 1;
    if (remaining == 0) break;
    base = base.multiply(base);
  }
  acc->check_mass_conservation();
  return *acc;
}

TradeoffCurve PrivacyLossDistribution::to_tradeoff_curve(
    std::size_t grid_size) const {
  // Likelihood-ratio threshold sweep from the largest loss downward. Each
  // visited atom appends one exactly-achievable (type-I, type-II) point;
  // randomized thresholds fill the connecting segments.
  std::vector<double> xs, ys;
  xs.reserve(null_masses_.size() + 2);
  ys.reserve(null_masses_.size() + 2);
  xs.push_back(0.0);
  ys.push_back(1.0);
  double alpha = null_infinity_mass_;
  double beta = 1.0 - alt_infinity_mass_;
  if (alpha > 0.0 || beta < 1.0) {
    xs.push_back(alpha);
    ys.push_back(beta);
  }
  for (std::size_t idx = null_masses_.size(); idx-- > 0;) {
    double a = null_masses_[idx];
    double b = alt_masses_[idx];
    if (a == 0.0 && b == 0.0) continue;
    alpha += a;
    beta -= b;
    xs.push_back(std::min(alpha, 1.0));
    ys.push_back(std::max(beta, 0.0));
  }
  if (xs.back() < 1.0) {
    xs.push_back(1.0);
    ys.push_back(0.0);
  }

  // Resample on the standard uniform grid.
  std::vector<double> alphas(grid_size);
  std::vector<double> betas(grid_size);
  const double denom = static_cast<double>(grid_size - 1);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    double a = static_cast<double>(i) / denom;
    alphas[i] = a;
    while (seg + 1 < xs.size() && xs[seg + 1] < a) ++seg;
    std::size_t hi = std::min(seg + 1, xs.size() - 1);
    double span = xs[hi] - xs[seg];
    if (span <= 0.0) {
      betas[i] = ys[hi];
    } else {
      double w = (a - xs[seg]) / span;
      w = std::min(std::max(w, 0.0), 1.0);
      betas[i] = ys[seg] + w * (ys[hi] - ys[seg]);
    }
    betas[i] = std::min(std::max(betas[i], 0.0), 1.0 - a);
  }
  alphas.front() = 0.0;
  alphas.back() = 1.0;
  return TradeoffCurve(std::move(alphas), std::move(betas));
}

TradeoffCurve step_tradeoff(const MechanismStep& step, std::size_t grid_size) {
  step.validate();
  return subsample_mixture(
      gaussian_tradeoff(GaussianTradeoffParam{1.0 / step.sigma_eff}, grid_size),
      step.sample_rate);
}

TradeoffCurve compose_exact(const MechanismStep& step, std::uint64_t times,
                            const PldConfig& config, std::size_t grid_size) {
  if (times == 0) {
    throw std::invalid_argument("compose_exact: times must be >= 1");
  }
  auto pld = PrivacyLossDistribution::from_step(step, config);
  auto composed = pld.self_compose(times);
  return symmetrize(composed.to_tradeoff_curve(grid_size));
}

GaussianTradeoffParam clt_mu(const MechanismStep& step, std::uint64_t times,
                             std::uint64_t n, std::uint64_t m) {
  step.validate();
  if (n == 0 || m > n || times == 0) {
    throw std::invalid_argument("clt_mu: need 0 <= m <= n, n > 0, T >= 1");
  }
  double nu = static_cast<double>(m) *
              std::sqrt(static_cast<double>(times)) / static_cast<double>(n);
  double inv_sq = 1.0 / (step.sigma_eff * step.sigma_eff);
  return GaussianTradeoffParam{nu * std::sqrt(std::expm1(inv_sq))};
}

NoiseScales calibrate_noise(std::uint64_t n, std::uint64_t m, std::uint64_t T,
                            GaussianTradeoffParam mu, double c_x, double c_y,
                            double lambda) {
  if (n == 0 || m == 0 || m > n || T == 0) {
    throw std::invalid_argument("calibrate_noise: need 1 <= m <= n, T >= 1");
  }
  if (!(mu.mu > 0.0) || !(c_x > 0.0) || !(c_y > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument(
        "calibrate_noise: mu, C_x, C_y, lambda must be > 0");
  }
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double dT = static_cast<double>(T);
  // 1/sigma_x^2 + 1/sigma_y^2 = ln(1 + mu^2 n^2 / (m^2 T))
  const double budget = std::log1p(mu.mu * mu.mu * dn * dn / (dm * dm * dT));
  const double sigma_x =
      std::sqrt(lambda * lambda + 1.0) / (lambda * std::sqrt(budget));
  NoiseScales scales;
  scales.lambda = lambda;
  scales.sigma_x = sigma_x;
  scales.sigma_y = lambda * sigma_x;
  scales.sigma_x_eff = c_x * sigma_x / dm;
  scales.sigma_y_eff = c_y * scales.sigma_y / dm;
  return scales;
}

RdpCurve rdp_epsilon(std::uint64_t n, std::uint64_t m, std::uint64_t T,
                     double sigma_x, double sigma_y,
                     const std::vector<long>& orders) {
  if (n == 0 || m > n || T == 0) {
    throw std::invalid_argument("rdp_epsilon: need 0 <= m <= n, T >= 1");
  }
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
    throw std::invalid_argument("rdp_epsilon: noise multipliers must be > 0");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 2 || (i > 0 && orders[i] <= orders[i - 1])) {
      throw std::invalid_argument(
          "rdp_epsilon: orders must be strictly increasing integers >= 2");
    }
  }

  const double p = static_cast<double>(m) / static_cast<double>(n);
  const double inv_x = 1.0 / (2.0 * sigma_x * sigma_x);
  const double inv_y = 1.0 / (2.0 * sigma_y * sigma_y);

  RdpCurve curve;
  curve.orders = orders;
  curve.epsilons.resize(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const long alpha = orders[i];
    const double da = static_cast<double>(alpha);
    const double eps_step = da * inv_x + da * inv_y;  // per-step Gaussian term

    double eps;
    if (m == 0) {
      eps = 0.0;
    } else if (m == n) {
      // Mixture collapses to the plain Gaussian mechanism.
      eps = static_cast<double>(T) * eps_step;
    } else {
      // log-sum-exp over the binomial expansion terms.
      std::vector<double> log_terms;
      log_terms.reserve(static_cast<std::size_t>(alpha));
      const double log_p = std::log(p);
      const double log_1mp = std::log1p(-p);
      log_terms.push_back((da - 1.0) * log_1mp + std::log1p((da - 1.0) * p));
      for (long l = 2; l <= alpha; ++l) {
        double dl = static_cast<double>(l);
        double log_choose = std::lgamma(da + 1.0) - std::lgamma(dl + 1.0) -
                            std::lgamma(da - dl + 1.0);
        log_terms.push_back(log_choose + (da - dl) * log_1mp + dl * log_p +
                            (dl - 1.0) * eps_step);
      }
      double peak = *std::max_element(log_terms.begin(), log_terms.end());
      double sum = 0.0;
      for (double t : log_terms) sum += std::exp(t - peak);
      eps = static_cast<double>(T) * (peak + std::log(sum)) / (da - 1.0);
    }
    if (!std::isfinite(eps)) {
      throw AccuracyError("rdp_epsilon: overflow at order " +
                          std::to_string(alpha));
    }
    curve.epsilons[i] = std::max(eps, 0.0);
  }
  return curve;
}

RdpConversion rdp_to_epsdelta(const RdpCurve& curve, double delta) {
  if (curve.orders.empty()) {
    throw std::invalid_argument("rdp_to_epsdelta: empty order list");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("rdp_to_epsdelta: delta must be in (0, 1)");
  }
  const double log_inv_delta = std::log(1.0 / delta);
  RdpConversion best;
  best.eps_delta.eps = kInf;
  best.eps_delta.delta = delta;
  for (std::size_t i = 0; i < curve.orders.size(); ++i) {
    double candidate = curve.epsilons[i] +
                       log_inv_delta / (static_cast<double>(curve.orders[i]) - 1.0);
    if (candidate < best.eps_delta.eps) {
      best.eps_delta.eps = candidate;
      best.best_order = curve.orders[i];
    }
  }
  return best;
}

std::vector<NoiseComparisonRow> noise_vs_m_table(
    std::uint64_t n, std::uint64_t T, EpsDelta target,
    const std::vector<std::uint64_t>& m_values) {
  for (std::uint64_t m : m_values) {
    if (m == 0 || m > n) {
      throw std::invalid_argument("noise_vs_m_table: m values must be in [1, n]");
    }
  }
  const GaussianTradeoffParam mu = epsdelta_to_mu(target);
  std::vector<long> orders;
  for (long a = 2; a <= 256; ++a) orders.push_back(a);

  std::vector<NoiseComparisonRow> rows;
  rows.reserve(m_values.size());
  for (std::uint64_t m : m_values) {
    NoiseComparisonRow row;
    row.m = m;
    row.gdp_noise = calibrate_noise(n, m, T, mu, 1.0, 1.0, 1.0).sigma_x_eff;

    // Smallest multiplier whose RDP conversion meets the epsilon target;
    // eps(sigma) is strictly decreasing, so bisect.
    auto eps_at = [&](double sigma) {
      return rdp_to_epsdelta(rdp_epsilon(n, m, T, sigma, sigma, orders),
                             target.delta)
          .eps_delta.eps;
    };
    double lo = 1e-3, hi = 1.0;
    int guard = 0;
    while (eps_at(hi) > target.eps) {
      hi *= 2.0;
      if (++guard > 60) {
        throw AccuracyError("noise_vs_m_table: no bracketing sigma at m=" +
                            std::to_string(m));
      }
    }
    while (eps_at(lo) <= target.eps && lo > 1e-12) lo *= 0.5;
    int iterations = 0;
    while (hi - lo > 1e-9 * hi) {
      if (++iterations > 200) {
        throw AccuracyError(
            "noise_vs_m_table: sigma bisection did not converge at m=" +
            std::to_string(m));
      }
      double mid = 0.5 * (lo + hi);
      if (eps_at(mid) <= target.eps) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    row.rdp_noise = hi / static_cast<double>(m);
    rows.push_back(row);
  }
  return rows;
}

std::vector<CltConvergenceRow> clt_convergence_table(
    double mu, double sigma_eff, const std::vector<std::uint64_t>& T_values,
    const PldConfig& config, std::size_t grid_size) {
  if (!(mu > 0.0) || !(sigma_eff > 0.0)) {
    throw std::invalid_argument("clt_convergence_table: mu, sigma_eff > 0");
  }
  const double nu =
      mu / std::sqrt(std::expm1(1.0 / (sigma_eff * sigma_eff)));
  const TradeoffCurve limit =
      gaussian_tradeoff(GaussianTradeoffParam{mu}, grid_size);

  std::vector<CltConvergenceRow> rows;
  rows.reserve(T_values.size());
  for (std::uint64_t T : T_values) {
    double p = nu / std::sqrt(static_cast<double>(T));
    if (p >= 1.0) {
      throw std::invalid_argument(
          "clt_convergence_table: T too small, sample rate reaches 1");
    }
    MechanismStep step{p, sigma_eff};
    TradeoffCurve exact = compose_exact(step, T, config, grid_size);
    rows.push_back(CltConvergenceRow{T, curve_linf_distance(exact, limit),
                                     curve_l2_distance(exact, limit)});
  }
  return rows;
}

void write_noise_table_csv(const std::vector<NoiseComparisonRow>& rows,
                           const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) {
    throw IngestionError("write_noise_table_csv: cannot open " + path);
  }
  std::fputs("m,gdp_noise,rdp_noise\n", out);
  for (const auto& row : rows) {
    std::fprintf(out, "%llu,%.17g,%.17g\n",
                 static_cast<unsigned long long>(row.m), row.gdp_noise,
                 row.rdp_noise);
  }
  std::fclose(out);
}

void write_clt_table_csv(const std::vector<CltConvergenceRow>& rows,
                         const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) {
    throw IngestionError("write_clt_table_csv: cannot open " + path);
  }
  std::fputs("T,linf_err,l2_err\n", out);
  for (const auto& row : rows) {
    std::fprintf(out, "%llu,%.17g,%.17g\n",
                 static_cast<unsigned long long>(row.steps), row.linf_err,
                 row.l2_err);
  }
  std::fclose(out);
}

}  // namespace dpfmix

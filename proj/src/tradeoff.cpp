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

#include "dpfmix/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "dpfmix/errors.hpp"
#include "dpfmix/normal.hpp"

namespace dpfmix {
namespace {

constexpr double kInvariantTol = 1e-12;

std::vector<double> uniform_grid(std::size_t grid_size) {
  std::vector<double> alphas(grid_size);
  const double denom = static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    alphas[i] = static_cast<double>(i) / denom;
  }
  alphas.front() = 0.0;
  alphas.back() = 1.0;
  return alphas;
}

// Absorbs floating-point drift: every valid trade-off value lies in
// [0, 1 - alpha].
void clamp_to_band(const std::vector<double>& alphas,
                   std::vector<double>& betas) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    betas[i] = std::min(std::max(betas[i], 0.0), 1.0 - alphas[i]);
  }
}

// Linear interpolation of (xs, ys) at query x; xs sorted ascending.
double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  std::size_t lo = hi - 1;
  double span = xs[hi] - xs[lo];
  if (span <= 0.0) return ys[hi];
  double w = (x - xs[lo]) / span;
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

}  // namespace

TradeoffCurve::TradeoffCurve(std::vector<double> alphas,
                             std::vector<double> betas)
    : alphas_(std::move(alphas)), betas_(std::move(betas)) {
  if (alphas_.size() != betas_.size()) {
    throw std::invalid_argument("TradeoffCurve: mismatched grid lengths");
  }
  if (alphas_.size() < 3) {
    throw std::invalid_argument("TradeoffCurve: need at least 3 grid points");
  }
}

double TradeoffCurve::value_at(double alpha) const {
  return interp(alphas_, betas_, std::min(std::max(alpha, 0.0), 1.0));
}

void TradeoffCurve::validate() const {
  const std::size_t n = alphas_.size();
  if (alphas_.front() != 0.0 || alphas_.back() != 1.0) {
    throw std::invalid_argument("curve grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(alphas_[i] > alphas_[i - 1])) {
      throw std::invalid_argument("curve grid must be strictly increasing");
    }
    if (betas_[i] > betas_[i - 1] + kInvariantTol) {
      throw std::invalid_argument("curve betas must be non-increasing");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (betas_[i] < -kInvariantTol ||
        betas_[i] > 1.0 - alphas_[i] + kInvariantTol) {
      throw std::invalid_argument("curve value outside [0, 1 - alpha]");
    }
  }
  // Convexity of the piecewise-linear graph, as a scaled second difference
  // so non-uniform grids check the same geometric property.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double dl = alphas_[i] - alphas_[i - 1];
    double dr = alphas_[i + 1] - alphas_[i];
    double second = (betas_[i - 1] * dr + betas_[i + 1] * dl -
                     betas_[i] * (dl + dr)) /
                    (dl + dr);
    if (second < -kInvariantTol) {
      throw std::invalid_argument("curve is not convex");
    }
  }
}

TradeoffCurve identity_curve(std::size_t grid_size) {
  if (grid_size < 3) {
    throw std::invalid_argument("identity_curve: grid_size must be >= 3");
  }
  auto alphas = uniform_grid(grid_size);
  std::vector<double> betas(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) betas[i] = 1.0 - alphas[i];
  return TradeoffCurve(std::move(alphas), std::move(betas));
}

TradeoffCurve gaussian_tradeoff(GaussianTradeoffParam mu,
                                std::size_t grid_size) {
  if (!(mu.mu >= 0.0) || !std::isfinite(mu.mu)) {
    throw std::invalid_argument("gaussian_tradeoff: mu must be >= 0");
  }
  if (grid_size < 3) {
    throw std::invalid_argument("gaussian_tradeoff: grid_size must be >= 3");
  }
  auto alphas = uniform_grid(grid_size);
  std::vector<double> betas(grid_size);
  betas.front() = 1.0;
  betas.back() = 0.0;
  for (std::size_t i = 1; i + 1 < grid_size; ++i) {
    // Phi^{-1}(1 - alpha) = -Phi^{-1}(alpha), which keeps tail precision.
    betas[i] = normal_cdf(-normal_quantile(alphas[i]) - mu.mu);
  }
  clamp_to_band(alphas, betas);
  TradeoffCurve curve(std::move(alphas), std::move(betas));
  curve.validate();
  return curve;
}

TradeoffCurve subsample_mixture(const TradeoffCurve& f, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("subsample_mixture: p must be in [0, 1]");
  }
  std::vector<double> alphas = f.alphas();
  std::vector<double> betas(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    betas[i] = p * f.betas()[i] + (1.0 - p) * (1.0 - alphas[i]);
  }
  clamp_to_band(alphas, betas);
  TradeoffCurve curve(std::move(alphas), std::move(betas));
  curve.validate();
  return curve;
}

TradeoffCurve invert(const TradeoffCurve& f) {
  const std::size_t n = f.size();
  // Reflect the graph: (alpha, beta) -> (beta, alpha), reading the input
  // right-to-left so the new abscissa ascends. Plateaus in f become jumps in
  // the inverse; inf{x : f(x) <= y} keeps the smallest alpha of a tie.
  std::vector<double> xs, ys;
  xs.reserve(n);
  ys.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = n - 1 - j;
    double x = f.betas()[i];
    double y = f.alphas()[i];
    if (!xs.empty() && x == xs.back()) {
      ys.back() = std::min(ys.back(), y);
      continue;
    }
    xs.push_back(x);
    ys.push_back(y);
  }

  std::vector<double> alphas = f.alphas();
  std::vector<double> betas(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = alphas[i];
    // Levels below f(1) are never attained; inf of the empty set extends
    // continuously to 1. Valid curves have f(1) = 0, so this cannot trigger
    // for in-band inputs.
    betas[i] = a < xs.front() ? 1.0 : interp(xs, ys, a);
  }
  clamp_to_band(alphas, betas);
  return TradeoffCurve(std::move(alphas), std::move(betas));
}

TradeoffCurve symmetrize(const TradeoffCurve& f) {
  TradeoffCurve inv = invert(f);
  const std::size_t n = f.size();
  std::vector<double> alphas = f.alphas();
  std::vector<double> pointwise_min(n);
  for (std::size_t i = 0; i < n; ++i) {
    pointwise_min[i] = std::min(f.betas()[i], inv.betas()[i]);
  }

  // Greatest convex minorant: lower convex hull of the discretized graph by
  // monotone chain. Hull vertices are kept when the middle point lies on or
  // below the chord of its neighbors.
  std::vector<std::size_t> hull;
  hull.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2];
      std::size_t b = hull[hull.size() - 1];
      double lhs = (pointwise_min[i] - pointwise_min[a]) * (alphas[b] - alphas[a]);
      double rhs = (pointwise_min[b] - pointwise_min[a]) * (alphas[i] - alphas[a]);
      if (lhs <= rhs) {
        hull.pop_back();  // b lies on or above chord a->i
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  std::vector<double> betas(n);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (seg + 1 < hull.size() && alphas[hull[seg + 1]] < alphas[i]) ++seg;
    std::size_t a = hull[seg];
    std::size_t b = hull[std::min(seg + 1, hull.size() - 1)];
    if (a == b || alphas[i] <= alphas[a]) {
      betas[i] = pointwise_min[a];
    } else {
      double w = (alphas[i] - alphas[a]) / (alphas[b] - alphas[a]);
      betas[i] = pointwise_min[a] + w * (pointwise_min[b] - pointwise_min[a]);
    }
  }
  clamp_to_band(alphas, betas);
  TradeoffCurve curve(std::move(alphas), std::move(betas));
  curve.validate();
  return curve;
}

EpsDelta curve_to_epsdelta(const TradeoffCurve& f, double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("curve_to_epsdelta: eps must be >= 0");
  }
  const double scale = std::exp(eps);
  double delta = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    delta = std::max(delta, 1.0 - scale * f.alphas()[i] - f.betas()[i]);
  }
  return EpsDelta{eps, std::min(delta, 1.0)};
}

EpsDelta mu_to_epsdelta(GaussianTradeoffParam mu, double eps) {
  if (!(mu.mu >= 0.0)) {
    throw std::invalid_argument("mu_to_epsdelta: mu must be >= 0");
  }
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("mu_to_epsdelta: eps must be >= 0");
  }
  if (mu.mu == 0.0) return EpsDelta{eps, 0.0};

  const double a = eps / mu.mu;
  const double b = 0.5 * mu.mu;
  const double term1 = normal_cdf(-a + b);
  const double lower = normal_cdf(-a - b);
  double term2 = 0.0;
  if (lower > 0.0) {
    term2 = std::exp(eps + std::log(lower));
  }
  double delta = term1 - term2;
  delta = std::min(std::max(delta, 0.0), 1.0);
  return EpsDelta{eps, delta};
}

GaussianTradeoffParam epsdelta_to_mu(EpsDelta target) {
  if (!(target.delta > 0.0 && target.delta < 1.0)) {
    throw std::invalid_argument("epsdelta_to_mu: delta must be in (0, 1)");
  }
  if (!(target.eps >= 0.0)) {
    throw std::invalid_argument("epsdelta_to_mu: eps must be >= 0");
  }
  double lo = 1e-8;
  double hi = 100.0;
  auto residual = [&](double mu) {
    return mu_to_epsdelta(GaussianTradeoffParam{mu}, target.eps).delta -
           target.delta;
  };
  if (residual(lo) > 0.0 || residual(hi) < 0.0) {
    throw AccuracyError(
        "epsdelta_to_mu: target not bracketed by mu in [1e-8, 100]");
  }
  // delta(mu) is strictly increasing in mu; bisect to machine width.
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (residual(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return GaussianTradeoffParam{std::fabs(residual(lo)) < std::fabs(residual(hi))
                                   ? lo
                                   : hi};
}

void write_curve_csv(const TradeoffCurve& f, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) {
    throw IngestionError("write_curve_csv: cannot open " + path);
  }
  std::fputs("alpha,beta\n", out);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::fprintf(out, "%.17g,%.17g\n", f.alphas()[i], f.betas()[i]);
  }
  std::fclose(out);
}

double curve_linf_distance(const TradeoffCurve& a, const TradeoffCurve& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("curve distance: grids differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a.betas()[i] - b.betas()[i]));
  }
  return worst;
}

double curve_l2_distance(const TradeoffCurve& a, const TradeoffCurve& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("curve distance: grids differ");
  }
  // Trapezoid rule on the squared gap.
  double acc = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    double d0 = a.betas()[i - 1] - b.betas()[i - 1];
    double d1 = a.betas()[i] - b.betas()[i];
    acc += 0.5 * (d0 * d0 + d1 * d1) * (a.alphas()[i] - a.alphas()[i - 1]);
  }
  return std::sqrt(acc);
}

}  // namespace dpfmix

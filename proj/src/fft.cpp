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

#include "fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpfmix::internal {

void fft(std::vector<std::complex<double>>& values, bool inverse) {
  const std::size_t n = values.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fft: size must be a power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(values[i], values[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = values[i + k];
        std::complex<double> v = values[i + k + len / 2] * w;
        values[i + k] = u + v;
        values[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : values) x *= scale;
  }
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;

  // Pack a into the real part and b into the imaginary part; their spectra
  // separate through conjugate symmetry.
  std::vector<std::complex<double>> packed(n, {0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) packed[i].real(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) packed[i].imag(b[i]);
  fft(packed, false);

  std::vector<std::complex<double>> product(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t kr = (n - k) & (n - 1);
    std::complex<double> x = packed[k];
    std::complex<double> y = std::conj(packed[kr]);
    std::complex<double> fa = 0.5 * (x + y);
    std::complex<double> fb = std::complex<double>(0.0, -0.5) * (x - y);
    product[k] = fa * fb;
  }
  fft(product, true);

  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    // Probability masses cannot be negative; clip transform dust.
    out[i] = std::max(product[i].real(), 0.0);
  }
  return out;
}

}  // namespace dpfmix::internal

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

#ifndef DPFMIX_SRC_FFT_HPP_
#define DPFMIX_SRC_FFT_HPP_

#include <complex>
#include <vector>

namespace dpfmix::internal {

// In-place iterative radix-2 Cooley-Tukey transform; size must be a power of
// two. inverse = true applies the conjugate transform including the 1/N scale.
void fft(std::vector<std::complex<double>>& values, bool inverse);

// Linear convolution of two nonnegative real sequences (length la + lb - 1).
// Uses one forward transform via the two-for-one real packing trick.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

}  // namespace dpfmix::internal

#endif  // DPFMIX_SRC_FFT_HPP_

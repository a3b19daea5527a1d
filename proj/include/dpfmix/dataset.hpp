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

#ifndef DPFMIX_DATASET_HPP_
#define DPFMIX_DATASET_HPP_

#include <string>
#include <vector>

#include "dpfmix/matrix.hpp"

namespace dpfmix {

// A feature dataset: n x p features paired with n x k labels (one-hot or
// soft). Entries must be finite; row counts must match.
struct FeatureDataset {
  Matrix features;
  Matrix labels;
  std::vector<std::string> ids;  // optional per-row identifiers

  std::size_t size() const { return features.rows; }
  void validate() const;
};

enum class DatasetFormat { kCsv, kBinary };

// Binary matrix file: magic "DPFM", version u16, rows u32, cols u32, then
// row-major 64-bit little-endian floats.
void save_matrix(const Matrix& matrix, const std::string& path);
Matrix load_matrix(const std::string& path);

// CSV datasets use the header f0..f{p-1},y0..y{k-1}; binary datasets live in
// the pair <base>.features.bin / <base>.labels.bin.
FeatureDataset load_dataset(const std::string& path, DatasetFormat format);
void store_dataset(const FeatureDataset& dataset, const std::string& path,
                   DatasetFormat format);

}  // namespace dpfmix

#endif  // DPFMIX_DATASET_HPP_

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

#include "dpfmix/dataset.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dpfmix/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary matrix IO assumes a little-endian host");

namespace dpfmix {
namespace {

constexpr char kMagic[4] = {'D', 'P', 'F', 'M'};
constexpr std::uint16_t kFormatVersion = 1;

void check_finite(const Matrix& m, const char* what) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (!std::isfinite(m.at(r, c))) {
        throw IngestionError(std::string(what) + ": non-finite value at row " +
                             std::to_string(r));
      }
    }
  }
}

double parse_cell(const std::string& line, std::size_t begin, std::size_t end,
                  std::size_t row_index) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(line.data() + begin, line.data() + end, value);
  if (ec != std::errc{} || ptr != line.data() + end) {
    throw IngestionError("csv: unparsable number at data row " +
                         std::to_string(row_index));
  }
  return value;
}

}  // namespace

void FeatureDataset::validate() const {
  if (features.rows != labels.rows) {
    throw IngestionError("dataset: feature and label row counts differ");
  }
  if (!ids.empty() && ids.size() != features.rows) {
    throw IngestionError("dataset: id count does not match row count");
  }
  check_finite(features, "dataset features");
  check_finite(labels, "dataset labels");
}

void save_matrix(const Matrix& matrix, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (out == nullptr) {
    throw IngestionError("save_matrix: cannot open " + path);
  }
  std::uint16_t version = kFormatVersion;
  std::uint32_t rows = static_cast<std::uint32_t>(matrix.rows);
  std::uint32_t cols = static_cast<std::uint32_t>(matrix.cols);
  bool ok = std::fwrite(kMagic, 1, 4, out) == 4 &&
            std::fwrite(&version, sizeof version, 1, out) == 1 &&
            std::fwrite(&rows, sizeof rows, 1, out) == 1 &&
            std::fwrite(&cols, sizeof cols, 1, out) == 1;
  if (ok && !matrix.data.empty()) {
    ok = std::fwrite(matrix.data.data(), sizeof(double), matrix.data.size(),
                     out) == matrix.data.size();
  }
  std::fclose(out);
  if (!ok) {
    throw IngestionError("save_matrix: short write to " + path);
  }
}

Matrix load_matrix(const std::string& path) {
  std::FILE* in = std::fopen(path.c_str(), "rb");
  if (in == nullptr) {
    throw IngestionError("load_matrix: cannot open " + path);
  }
  char magic[4];
  std::uint16_t version = 0;
  std::uint32_t rows = 0, cols = 0;
  bool ok = std::fread(magic, 1, 4, in) == 4 &&
            std::fread(&version, sizeof version, 1, in) == 1 &&
            std::fread(&rows, sizeof rows, 1, in) == 1 &&
            std::fread(&cols, sizeof cols, 1, in) == 1;
  if (!ok || std::memcmp(magic, kMagic, 4) != 0) {
    std::fclose(in);
    throw IngestionError("load_matrix: bad header in " + path);
  }
  if (version != kFormatVersion) {
    std::fclose(in);
    throw IngestionError("load_matrix: unsupported version in " + path);
  }
  Matrix matrix(rows, cols);
  if (!matrix.data.empty()) {
    ok = std::fread(matrix.data.data(), sizeof(double), matrix.data.size(),
                    in) == matrix.data.size();
  }
  // Trailing bytes mean the header lied about the shape.
  char probe;
  bool at_eof = std::fread(&probe, 1, 1, in) == 0;
  std::fclose(in);
  if (!ok || !at_eof) {
    throw IngestionError("load_matrix: truncated or oversized payload in " +
                         path);
  }
  return matrix;
}

FeatureDataset load_dataset(const std::string& path, DatasetFormat format) {
  FeatureDataset dataset;
  if (format == DatasetFormat::kBinary) {
    dataset.features = load_matrix(path + ".features.bin");
    dataset.labels = load_matrix(path + ".labels.bin");
    dataset.validate();
    return dataset;
  }

  std::ifstream in(path);
  if (!in) {
    throw IngestionError("load_dataset: cannot open " + path);
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw IngestionError("load_dataset: empty file " + path);
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();

  // Header must read f0..f{p-1},y0..y{k-1}.
  std::size_t p = 0, k = 0;
  {
    std::stringstream ss(header);
    std::string name;
    bool in_labels = false;
    while (std::getline(ss, name, ',')) {
      if (!in_labels && name == "f" + std::to_string(p)) {
        ++p;
      } else if (name == "y" + std::to_string(k)) {
        in_labels = true;
        ++k;
      } else {
        throw IngestionError("load_dataset: malformed csv header column '" +
                             name + "' in " + path);
      }
    }
    if (p == 0 || k == 0) {
      throw IngestionError("load_dataset: csv header needs f* and y* columns");
    }
  }

  std::vector<double> feature_data, label_data;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t begin = 0, column = 0;
    for (std::size_t pos = 0; pos <= line.size(); ++pos) {
      if (pos == line.size() || line[pos] == ',') {
        if (column >= p + k) {
          throw IngestionError("csv: too many columns at data row " +
                               std::to_string(row));
        }
        double value = parse_cell(line, begin, pos, row);
        if (!std::isfinite(value)) {
          throw IngestionError("csv: non-finite value at data row " +
                               std::to_string(row));
        }
        (column < p ? feature_data : label_data).push_back(value);
        begin = pos + 1;
        ++column;
      }
    }
    if (column != p + k) {
      throw IngestionError("csv: ragged row at data row " +
                           std::to_string(row));
    }
    ++row;
  }

  dataset.features = Matrix(row, p);
  dataset.features.data = std::move(feature_data);
  dataset.labels = Matrix(row, k);
  dataset.labels.data = std::move(label_data);
  dataset.validate();
  return dataset;
}

void store_dataset(const FeatureDataset& dataset, const std::string& path,
                   DatasetFormat format) {
  dataset.validate();
  if (format == DatasetFormat::kBinary) {
    save_matrix(dataset.features, path + ".features.bin");
    save_matrix(dataset.labels, path + ".labels.bin");
    return;
  }
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) {
    throw IngestionError("store_dataset: cannot open " + path);
  }
  const std::size_t p = dataset.features.cols;
  const std::size_t k = dataset.labels.cols;
  for (std::size_t c = 0; c < p; ++c) {
    std::fprintf(out, "%sf%zu", c == 0 ? "" : ",", c);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::fprintf(out, ",y%zu", c);
  }
  std::fputc('\n', out);
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      std::fprintf(out, "%s%.17g", c == 0 ? "" : ",", dataset.features.at(r, c));
    }
    for (std::size_t c = 0; c < k; ++c) {
      std::fprintf(out, ",%.17g", dataset.labels.at(r, c));
    }
    std::fputc('\n', out);
  }
  std::fclose(out);
}

}  // namespace dpfmix

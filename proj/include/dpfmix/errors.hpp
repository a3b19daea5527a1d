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

#ifndef DPFMIX_ERRORS_HPP_
#define DPFMIX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dpfmix {

// Error categories map onto CLI exit codes (see tools/dpfmix_main.cpp):
//   UsageError -> 2, IngestionError -> 3, AccuracyError -> 4, ConfigError -> 5.
// Plain std::invalid_argument is used for local precondition violations
// (domain errors on single values); the CLI maps it to the usage code.

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// File-level problems: missing inputs, malformed headers, ragged rows,
// non-finite cells, shape mismatches on ingestion.
class IngestionError : public std::runtime_error {
 public:
  explicit IngestionError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: discretization mass loss, non-converging bisection,
// overflowing accountant sums, singular systems.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent or unresolvable run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpfmix

#endif  // DPFMIX_ERRORS_HPP_

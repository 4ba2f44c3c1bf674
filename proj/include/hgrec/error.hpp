// Copyright 2026 The hgrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hgrec {

enum class Errc {
  // hypergraph construction
  kOrphanVertex,
  kUnknownVertex,
  kEmptyHyperedge,
  kDuplicateVertex,
  kInvalidWeight,
  // numerics
  kDimensionMismatch,
  kNonConvergence,
  kInvalidArgument,
  // builder
  kEmptyConfig,
  kKnnPopulation,
  // query assembly
  kMissingRelevance,
  // metrics
  kNoEvaluableUsers,
  kEmptyRecommendations,
  // data / config / cli
  kParseError,
  kConfigError,
  kUnknownUser,
  kMissingMetrics,
  kIoError,
};

const char* errc_name(Errc code);

// Exit-code category for the command line tool.
enum class ErrorCategory { kConfig, kData, kRuntime };

ErrorCategory category_of(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hgrec

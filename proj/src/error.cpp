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

#include "hgrec/error.hpp"

namespace hgrec {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kOrphanVertex: return "OrphanVertex";
    case Errc::kUnknownVertex: return "UnknownVertex";
    case Errc::kEmptyHyperedge: return "EmptyHyperedge";
    case Errc::kDuplicateVertex: return "DuplicateVertex";
    case Errc::kInvalidWeight: return "InvalidWeight";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kNonConvergence: return "NonConvergence";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kEmptyConfig: return "EmptyConfig";
    case Errc::kKnnPopulation: return "KnnPopulation";
    case Errc::kMissingRelevance: return "MissingRelevance";
    case Errc::kNoEvaluableUsers: return "NoEvaluableUsers";
    case Errc::kEmptyRecommendations: return "EmptyRecommendations";
    case Errc::kParseError: return "ParseError";
    case Errc::kConfigError: return "ConfigError";
    case Errc::kUnknownUser: return "UnknownUser";
    case Errc::kMissingMetrics: return "MissingMetrics";
    case Errc::kIoError: return "IoError";
  }
  return "Error";
}

ErrorCategory category_of(Errc code) {
  switch (code) {
    case Errc::kConfigError:
    case Errc::kEmptyConfig:
    case Errc::kInvalidArgument:
    case Errc::kKnnPopulation:
      return ErrorCategory::kConfig;
    case Errc::kParseError:
    case Errc::kUnknownUser:
    case Errc::kMissingMetrics:
    case Errc::kIoError:
    case Errc::kOrphanVertex:
    case Errc::kUnknownVertex:
    case Errc::kEmptyHyperedge:
    case Errc::kDuplicateVertex:
    case Errc::kInvalidWeight:
      return ErrorCategory::kData;
    default:
      return ErrorCategory::kRuntime;
  }
}

}  // namespace hgrec

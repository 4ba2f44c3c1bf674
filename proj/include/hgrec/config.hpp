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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hgrec/data_io.hpp"
#include "hgrec/graph_builder.hpp"
#include "hgrec/ranker.hpp"

namespace hgrec {

enum class Method {
  kHypergraph,
  kHypergraphFair,
  kHypergraphCoverage,
  kHypergraphDiversified,
  kPopularity,
  kRandom,
  kCoverageReranking,
  kDiversityReranking,
};

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct DiversityConfig {
  std::size_t n_samples = 3;
  double weight = 0.5;
};

// Everything one experiment needs. Parsed from a JSON document whose keys
// mirror the field names:
//
//   {
//     "events": "data/events.jsonl", "articles": "data/articles.jsonl",
//     "synthetic": {"users": 3600, ...},        // used when no data paths
//     "edges": ["E1", ..., "E6"], "knn_k_users": 10, "knn_k_articles": 10,
//     "theta": 1.0, "theta_grid": [0.1, 0.5, 1, 2, 10],
//     "solver": "iterative", "tol": 1e-10, "max_iters": 10000,
//     "methods": ["hypergraph", "hypergraph_fair"],
//     "k": 20, "rounds": 4, "holdout": 10, "rerank_pool": 100,
//     "relevance": "minmax",
//     "diversity": {"n_samples": 3, "weight": 0.5},
//     "seed": 7, "out": "runs/default"
//   }
struct RunConfig {
  std::optional<std::filesystem::path> events;
  std::optional<std::filesystem::path> articles;
  std::optional<SynthConfig> synthetic;

  GraphConfig graph;
  SolverOptions solver;
  // Swept on a validation split each round; empty: use solver.theta as is.
  std::vector<double> theta_grid = {0.1, 0.5, 1.0, 2.0, 10.0};
  RelevanceNormalization relevance = RelevanceNormalization::kMinMax;

  std::vector<Method> methods = {Method::kHypergraph, Method::kHypergraphFair,
                                 Method::kHypergraphCoverage, Method::kCoverageReranking};
  std::size_t k = 20;
  std::size_t rounds = 4;
  std::size_t holdout = 10;
  std::size_t rerank_pool = 0;  // 0: 5k
  DiversityConfig diversity;
  std::uint64_t seed = 7;
  std::optional<std::filesystem::path> out;

  std::size_t pool_size() const { return rerank_pool == 0 ? 5 * k : rerank_pool; }
};

// Throws Error(kConfigError) on unknown keys or invalid values.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& config);

// Range and consistency checks; run before any computation.
void validate(const RunConfig& config, bool require_data = true);

nlohmann::json synth_to_json(const SynthConfig& config);
SynthConfig synth_from_json(const nlohmann::json& doc);

}  // namespace hgrec

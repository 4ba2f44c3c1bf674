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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hgrec/dataset.hpp"
#include "hgrec/hypergraph.hpp"

namespace hgrec {

struct GraphConfig {
  std::set<HyperedgeKind> edges = {HyperedgeKind::kE1, HyperedgeKind::kE2, HyperedgeKind::kE3,
                                   HyperedgeKind::kE4, HyperedgeKind::kE5, HyperedgeKind::kE6};
  std::size_t knn_k_users = 10;
  std::size_t knn_k_articles = 10;
};

// Entities left out of a kNN construction because their vector has zero norm.
struct KnnDiagnostics {
  std::vector<std::size_t> degenerate;
};

// E1 (article, topics, readers), E2 (article, authors, readers),
// E3 (user, read articles) and E4 (article, IPTC tags). Interactions are
// reduced to binary (user, article) pairs first.
std::vector<Hyperedge> build_edges_e1_to_e4(const std::vector<Interaction>& events,
                                            const ArticleCatalog& catalog,
                                            const std::set<HyperedgeKind>& kinds);

// One hyperedge per entity: the entity plus its k most cosine-similar peers.
// `ids` are the local vertex indices of the rows in `vectors`; ties resolve to
// the smaller id. Zero vectors are reported in `diagnostics` and skipped.
std::vector<Hyperedge> build_knn_edges(std::span<const std::vector<double>> vectors,
                                       std::span<const std::size_t> ids, std::size_t k,
                                       HyperedgeKind kind,
                                       KnnDiagnostics* diagnostics = nullptr);

// Same construction for binary vectors given as sorted lists of the
// coordinates set to one. Produces the same edges as the dense overload on the
// equivalent 0/1 vectors.
std::vector<Hyperedge> build_knn_edges_binary(std::span<const std::vector<std::size_t>> rows,
                                              std::span<const std::size_t> ids, std::size_t k,
                                              HyperedgeKind kind,
                                              KnnDiagnostics* diagnostics = nullptr);

// Builds the unified hypergraph over one slice of interactions. Vertices are
// the users, articles, authors, topics and tags that occur in at least one
// selected hyperedge, ordered by kind and then by local index.
Hypergraph assemble(const std::vector<Interaction>& events, const ArticleCatalog& catalog,
                    const GraphConfig& config);

}  // namespace hgrec

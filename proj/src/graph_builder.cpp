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

#include "hgrec/graph_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <spdlog/spdlog.h>

#include "hgrec/error.hpp"

namespace hgrec {

std::vector<UserArticle> unique_pairs(const std::vector<Interaction>& events) {
  std::vector<UserArticle> pairs;
  pairs.reserve(events.size());
  for (const Interaction& ev : events) pairs.push_back({ev.user, ev.article});
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<Hyperedge> build_edges_e1_to_e4(const std::vector<Interaction>& events,
                                            const ArticleCatalog& catalog,
                                            const std::set<HyperedgeKind>& kinds) {
  const auto pairs = unique_pairs(events);
  std::map<ArticleIndex, std::vector<UserIndex>> readers;
  std::map<UserIndex, std::vector<ArticleIndex>> reads;
  for (const UserArticle& p : pairs) {
    readers[p.article].push_back(p.user);
    reads[p.user].push_back(p.article);
  }

  std::vector<Hyperedge> edges;
  auto article_edge = [&](HyperedgeKind kind, ArticleIndex a, VertexKind extra_kind,
                          const std::vector<std::size_t>& extra, bool with_readers) {
    if (!kinds.contains(kind) || extra.empty()) return;
    Hyperedge e;
    e.kind = kind;
    e.members.push_back({VertexKind::kArticle, a});
    for (std::size_t x : extra) e.members.push_back({extra_kind, x});
    if (with_readers) {
      for (UserIndex u : readers[a]) e.members.push_back({VertexKind::kUser, u});
    }
    edges.push_back(std::move(e));
  };

  for (const auto& [a, users] : readers) {
    const Article& art = catalog.articles.at(a);
    article_edge(HyperedgeKind::kE1, a, VertexKind::kTopic, art.topics, true);
    article_edge(HyperedgeKind::kE2, a, VertexKind::kAuthor, art.authors, true);
    article_edge(HyperedgeKind::kE4, a, VertexKind::kIptcTag, art.iptc_tags, false);
  }
  if (kinds.contains(HyperedgeKind::kE3)) {
    for (const auto& [u, articles] : reads) {
      Hyperedge e;
      e.kind = HyperedgeKind::kE3;
      e.members.push_back({VertexKind::kUser, u});
      for (ArticleIndex a : articles) e.members.push_back({VertexKind::kArticle, a});
      edges.push_back(std::move(e));
    }
  }
  return edges;
}

namespace {

VertexKind knn_vertex_kind(HyperedgeKind kind) {
  if (kind == HyperedgeKind::kE5) return VertexKind::kUser;
  if (kind == HyperedgeKind::kE6) return VertexKind::kArticle;
  throw Error(Errc::kInvalidArgument, "kNN hyperedges are E5 or E6");
}

// `similarity(i, j)` over valid positions; emits one edge per valid position.
template <typename Similarity>
std::vector<Hyperedge> knn_from_similarity(const std::vector<std::size_t>& valid,
                                           std::span<const std::size_t> ids, std::size_t k,
                                           HyperedgeKind kind, Similarity&& similarity) {
  const VertexKind vkind = knn_vertex_kind(kind);
  if (k == 0) throw Error(Errc::kInvalidArgument, "k must be positive");
  if (k >= valid.size()) {
    throw Error(Errc::kKnnPopulation, "k=" + std::to_string(k) + " needs more than " +
                                          std::to_string(valid.size()) + " entities");
  }
  std::vector<Hyperedge> edges;
  edges.reserve(valid.size());
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t i : valid) {
    candidates.clear();
    for (std::size_t j : valid) {
      if (j != i) candidates.emplace_back(similarity(i, j), j);
    }
    auto before = [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return ids[x.second] < ids[y.second];
    };
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end(), before);
    Hyperedge e;
    e.kind = kind;
    e.members.push_back({vkind, ids[i]});
    for (std::size_t n = 0; n < k; ++n) e.members.push_back({vkind, ids[candidates[n].second]});
    edges.push_back(std::move(e));
  }
  return edges;
}

}  // namespace

std::vector<Hyperedge> build_knn_edges(std::span<const std::vector<double>> vectors,
                                       std::span<const std::size_t> ids, std::size_t k,
                                       HyperedgeKind kind, KnnDiagnostics* diagnostics) {
  if (vectors.size() != ids.size()) {
    throw Error(Errc::kDimensionMismatch, "one id per vector required");
  }
  std::vector<double> norms(vectors.size());
  std::vector<std::size_t> valid;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    double sq = 0.0;
    for (double x : vectors[i]) sq += x * x;
    norms[i] = std::sqrt(sq);
    if (norms[i] > 0.0 && std::isfinite(norms[i])) {
      valid.push_back(i);
    } else {
      spdlog::warn("DegenerateVector: {} {} excluded from kNN", to_string(knn_vertex_kind(kind)),
                   ids[i]);
      if (diagnostics) diagnostics->degenerate.push_back(ids[i]);
    }
  }
  return knn_from_similarity(valid, ids, k, kind, [&](std::size_t i, std::size_t j) {
    const auto& a = vectors[i];
    const auto& b = vectors[j];
    if (a.size() != b.size()) throw Error(Errc::kDimensionMismatch, "kNN vectors differ in length");
    double dot = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) dot += a[d] * b[d];
    return dot / (norms[i] * norms[j]);
  });
}

std::vector<Hyperedge> build_knn_edges_binary(std::span<const std::vector<std::size_t>> rows,
                                              std::span<const std::size_t> ids, std::size_t k,
                                              HyperedgeKind kind, KnnDiagnostics* diagnostics) {
  if (rows.size() != ids.size()) {
    throw Error(Errc::kDimensionMismatch, "one id per row required");
  }
  std::vector<std::size_t> valid;
  std::vector<double> norms(rows.size());
  std::size_t width = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    norms[i] = std::sqrt(static_cast<double>(rows[i].size()));
    if (rows[i].empty()) {
      spdlog::warn("DegenerateVector: {} {} excluded from kNN", to_string(knn_vertex_kind(kind)),
                   ids[i]);
      if (diagnostics) diagnostics->degenerate.push_back(ids[i]);
    } else {
      valid.push_back(i);
      width = std::max(width, rows[i].back() + 1);
    }
  }
  // Inverted index gives the co-occurrence counts (the binary dot products)
  // of one row against all others in a single sweep.
  std::vector<std::vector<std::size_t>> holders(width);
  for (std::size_t i : valid) {
    for (std::size_t c : rows[i]) holders[c].push_back(i);
  }
  std::vector<double> overlap(rows.size(), 0.0);
  std::size_t current = rows.size();
  auto fill = [&](std::size_t i) {
    std::fill(overlap.begin(), overlap.end(), 0.0);
    for (std::size_t c : rows[i]) {
      for (std::size_t j : holders[c]) overlap[j] += 1.0;
    }
    current = i;
  };
  return knn_from_similarity(valid, ids, k, kind, [&](std::size_t i, std::size_t j) {
    if (current != i) fill(i);
    return overlap[j] / (norms[i] * norms[j]);
  });
}

Hypergraph assemble(const std::vector<Interaction>& events, const ArticleCatalog& catalog,
                    const GraphConfig& config) {
  if (config.edges.empty()) throw Error(Errc::kEmptyConfig, "no hyperedge kinds selected");

  std::vector<Hyperedge> edges = build_edges_e1_to_e4(events, catalog, config.edges);
  const auto pairs = unique_pairs(events);

  auto knn_k = [](std::size_t k, std::size_t population, std::string_view what) {
    if (population < 2) return std::size_t{0};
    if (k >= population) {
      spdlog::warn("{} kNN: k={} reduced to {} for {} entities", what, k, population - 1,
                   population);
      return population - 1;
    }
    return k;
  };

  if (config.edges.contains(HyperedgeKind::kE5)) {
    std::vector<std::size_t> ids;
    std::vector<std::vector<std::size_t>> rows;
    for (const UserArticle& p : pairs) {
      if (ids.empty() || ids.back() != p.user) {
        ids.push_back(p.user);
        rows.emplace_back();
      }
      rows.back().push_back(p.article);
    }
    if (std::size_t k = knn_k(config.knn_k_users, ids.size(), "user")) {
      auto knn = build_knn_edges_binary(rows, ids, k, HyperedgeKind::kE5);
      edges.insert(edges.end(), std::make_move_iterator(knn.begin()),
                   std::make_move_iterator(knn.end()));
    }
  }
  if (config.edges.contains(HyperedgeKind::kE6)) {
    std::set<ArticleIndex> present;
    for (const UserArticle& p : pairs) present.insert(p.article);
    std::vector<std::size_t> ids;
    std::vector<std::vector<double>> vectors;
    for (ArticleIndex a : present) {
      const auto& emb = catalog.articles.at(a).embedding;
      if (!emb) continue;
      ids.push_back(a);
      vectors.push_back(*emb);
    }
    std::size_t nonzero = 0;
    for (const auto& v : vectors) {
      nonzero += std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; }) ? 1 : 0;
    }
    if (std::size_t k = knn_k(config.knn_k_articles, nonzero, "article")) {
      auto knn = build_knn_edges(vectors, ids, k, HyperedgeKind::kE6);
      edges.insert(edges.end(), std::make_move_iterator(knn.begin()),
                   std::make_move_iterator(knn.end()));
    }
  }

  std::set<VertexKey> members;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    edges[e].id = e;
    members.insert(edges[e].members.begin(), edges[e].members.end());
  }
  return build_hypergraph(std::vector<VertexKey>(members.begin(), members.end()),
                          std::move(edges));
}

}  // namespace hgrec

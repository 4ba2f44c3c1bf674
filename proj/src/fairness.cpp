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

#include "hgrec/fairness.hpp"

#include <algorithm>

#include "hgrec/error.hpp"

namespace hgrec {

std::map<AuthorIndex, double> author_frequency(std::span<const UserArticle> train,
                                               const ArticleCatalog& catalog) {
  std::map<AuthorIndex, std::size_t> counts;
  for (const UserArticle& p : train) {
    for (AuthorIndex a : catalog.articles.at(p.article).authors) ++counts[a];
  }
  std::map<AuthorIndex, double> out;
  const auto total = static_cast<double>(train.size());
  for (const auto& [a, n] : counts) out[a] = static_cast<double>(n) / total;
  return out;
}

std::map<AuthorIndex, double> coverage_weights(const AuthorStats& stats) {
  std::map<AuthorIndex, double> w;
  for (const auto& [a, p] : stats.frequency) {
    auto it = stats.coverage.find(a);
    const double c = it == stats.coverage.end() ? 0.0 : it->second;
    w[a] = std::max(0.0, p - c);
  }
  return w;
}

AdaptedQuery adapt_query(UserIndex user, const std::map<AuthorIndex, double>& weights,
                         const std::map<AuthorIndex, double>* relevance, AdaptationMode mode) {
  AdaptedQuery q{user, {}};
  if (mode == AdaptationMode::kPlain) return q;
  if (mode == AdaptationMode::kFair && relevance == nullptr) {
    throw Error(Errc::kMissingRelevance, "fair adaptation needs author relevance scores");
  }
  for (const auto& [a, w] : weights) {
    double weight = w;
    if (mode == AdaptationMode::kFair) {
      auto it = relevance->find(a);
      weight = it == relevance->end() ? 0.0 : w * it->second;
    }
    if (weight > 0.0) q.author_weights[a] = weight;
  }
  return q;
}

QueryVector to_query_vector(const Hypergraph& h, const AdaptedQuery& query) {
  auto g = h.find(VertexKind::kUser, query.user);
  if (!g) {
    throw Error(Errc::kUnknownUser, "user " + std::to_string(query.user) + " not in hypergraph");
  }
  QueryVector y = QueryVector::unit(h.num_vertices(), *g);
  for (const auto& [a, w] : query.author_weights) {
    if (auto v = h.find(VertexKind::kAuthor, a)) y.add(*v, w);
  }
  return y;
}

QueryVector build_adapted_query(const Hypergraph& h, UserIndex user,
                                const std::map<AuthorIndex, double>& weights,
                                const std::map<AuthorIndex, double>* relevance,
                                AdaptationMode mode) {
  return to_query_vector(h, adapt_query(user, weights, relevance, mode));
}

void CoverageState::record(std::span<const std::vector<ArticleIndex>> lists,
                           const ArticleCatalog& catalog) {
  for (const auto& list : lists) {
    total_slots_ += list.size();
    for (ArticleIndex art : list) {
      for (AuthorIndex a : catalog.articles.at(art).authors) ++author_slots_[a];
    }
  }
}

double CoverageState::ratio(AuthorIndex author) const {
  if (total_slots_ == 0) return 0.0;
  auto it = author_slots_.find(author);
  if (it == author_slots_.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total_slots_);
}

std::map<AuthorIndex, double> CoverageState::ratios() const {
  std::map<AuthorIndex, double> out;
  for (const auto& [a, n] : author_slots_) out[a] = ratio(a);
  return out;
}

CoverageState CoverageState::from_counts(std::map<AuthorIndex, std::size_t> author_slots,
                                         std::size_t total_slots) {
  CoverageState s;
  s.author_slots_ = std::move(author_slots);
  s.total_slots_ = total_slots;
  return s;
}

CoverageState update_coverage(CoverageState state,
                              std::span<const std::vector<ArticleIndex>> recommendations,
                              const ArticleCatalog& catalog) {
  state.record(recommendations, catalog);
  return state;
}

}  // namespace hgrec

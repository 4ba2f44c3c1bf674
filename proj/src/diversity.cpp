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

#include "hgrec/diversity.hpp"

#include <algorithm>

#include "hgrec/error.hpp"

namespace hgrec {

void UserTopicHistory::record(UserIndex user, std::span<const ArticleIndex> recommended,
                              const ArticleCatalog& catalog) {
  auto& topics = topics_[user];
  for (ArticleIndex a : recommended) {
    const auto& ts = catalog.articles.at(a).topics;
    topics.insert(ts.begin(), ts.end());
  }
}

const std::set<TopicIndex>& UserTopicHistory::of(UserIndex user) const {
  static const std::set<TopicIndex> kEmpty;
  auto it = topics_.find(user);
  return it == topics_.end() ? kEmpty : it->second;
}

DiversifiedQuery diversify(UserIndex user, const std::set<TopicIndex>& history,
                           std::span<const TopicIndex> all_topics, std::size_t n_samples,
                           double weight, Rng& rng) {
  if (weight < 0.0) throw Error(Errc::kInvalidArgument, "diversity weight must be >= 0");
  DiversifiedQuery q{user, {}};
  if (n_samples == 0 || weight == 0.0) return q;
  std::vector<TopicIndex> uncovered;
  for (TopicIndex t : all_topics) {
    if (!history.contains(t)) uncovered.push_back(t);
  }
  std::sort(uncovered.begin(), uncovered.end());
  uncovered.erase(std::unique(uncovered.begin(), uncovered.end()), uncovered.end());
  for (std::size_t pos : rng.sample_without_replacement(uncovered.size(), n_samples)) {
    q.topic_weights[uncovered[pos]] = weight;
  }
  return q;
}

QueryVector to_query_vector(const Hypergraph& h, const DiversifiedQuery& query) {
  auto g = h.find(VertexKind::kUser, query.user);
  if (!g) {
    throw Error(Errc::kUnknownUser, "user " + std::to_string(query.user) + " not in hypergraph");
  }
  QueryVector y = QueryVector::unit(h.num_vertices(), *g);
  for (const auto& [t, w] : query.topic_weights) {
    if (auto v = h.find(VertexKind::kTopic, t)) y.add(*v, w);
  }
  return y;
}

QueryVector diversify_query(const Hypergraph& h, UserIndex user,
                            const std::set<TopicIndex>& history, std::size_t n_samples,
                            double weight, std::uint64_t seed) {
  std::vector<TopicIndex> topics;
  for (std::size_t g : h.vertices_of(VertexKind::kTopic)) topics.push_back(h.vertices()[g].index);
  Rng rng = Rng::derive(seed, user);
  return to_query_vector(h, diversify(user, history, topics, n_samples, weight, rng));
}

}  // namespace hgrec

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
#include <map>
#include <set>
#include <span>
#include <vector>

#include "hgrec/dataset.hpp"
#include "hgrec/hypergraph.hpp"
#include "hgrec/random.hpp"
#include "hgrec/ranker.hpp"

namespace hgrec {

// Topics already shown to each user through recommended articles.
class UserTopicHistory {
 public:
  void record(UserIndex user, std::span<const ArticleIndex> recommended,
              const ArticleCatalog& catalog);

  const std::set<TopicIndex>& of(UserIndex user) const;
  const std::map<UserIndex, std::set<TopicIndex>>& all() const { return topics_; }

  void set(UserIndex user, std::set<TopicIndex> topics) { topics_[user] = std::move(topics); }

 private:
  std::map<UserIndex, std::set<TopicIndex>> topics_;
};

struct DiversifiedQuery {
  UserIndex user = 0;
  std::map<TopicIndex, double> topic_weights;
};

// Puts `weight` on min(n_samples, |uncovered|) topics drawn uniformly without
// replacement from `all_topics` minus `history`. The weights are not scaled by
// relevance.
DiversifiedQuery diversify(UserIndex user, const std::set<TopicIndex>& history,
                           std::span<const TopicIndex> all_topics, std::size_t n_samples,
                           double weight, Rng& rng);

QueryVector to_query_vector(const Hypergraph& h, const DiversifiedQuery& query);

// Query over the topics present in `h`, sampled from a stream derived from
// (seed, user).
QueryVector diversify_query(const Hypergraph& h, UserIndex user,
                            const std::set<TopicIndex>& history, std::size_t n_samples,
                            double weight, std::uint64_t seed);

}  // namespace hgrec

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

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "hgrec/dataset.hpp"

namespace hgrec {

// Pareto split of the authors seen in training. The short head is the
// shortest popularity-sorted prefix holding at least 20% of the training
// author mentions.
struct AuthorGroups {
  std::set<AuthorIndex> short_head;
  std::set<AuthorIndex> long_tail;
};

inline constexpr std::size_t kShortHead = 0;
inline constexpr std::size_t kLongTail = 1;
using GroupCounts = std::array<std::size_t, 2>;

// Author mentions per training pair; a pair on a two-author article mentions
// both authors.
std::map<AuthorIndex, std::size_t> author_mentions(std::span<const UserArticle> train,
                                                   const ArticleCatalog& catalog);

AuthorGroups split_groups(std::span<const UserArticle> train, const ArticleCatalog& catalog);

// Counts (slot, author) pairs per group. Authors outside both groups are
// ignored.
GroupCounts count_by_group(std::span<const std::vector<ArticleIndex>> lists,
                           const ArticleCatalog& catalog, const AuthorGroups& groups);
GroupCounts count_by_group(std::span<const UserArticle> train, const ArticleCatalog& catalog,
                           const AuthorGroups& groups);

// Mean over users with a held-out set of |top-k ∩ held-out| / k. Users absent
// from `recommended` score zero.
double precision_at_k(const std::map<UserIndex, std::vector<ArticleIndex>>& recommended,
                      const std::map<UserIndex, std::set<ArticleIndex>>& held_out, std::size_t k);

double eagf(std::span<const std::size_t> counts_by_group);

// Mean absolute gap between recommendation and training group shares,
// evaluated as sum_i |r_i D - d_i R| / (R D |g|) on the integer counts.
double spd(std::span<const std::size_t> recommended_by_group,
           std::span<const std::size_t> training_by_group);

// Mean size of the per-user topic sets.
double covered_topics(const std::map<UserIndex, std::set<TopicIndex>>& histories);

}  // namespace hgrec

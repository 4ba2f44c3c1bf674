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

#include "hgrec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "hgrec/error.hpp"

namespace hgrec {

std::map<AuthorIndex, std::size_t> author_mentions(std::span<const UserArticle> train,
                                                   const ArticleCatalog& catalog) {
  std::map<AuthorIndex, std::size_t> counts;
  for (const UserArticle& p : train) {
    for (AuthorIndex a : catalog.articles.at(p.article).authors) ++counts[a];
  }
  return counts;
}

AuthorGroups split_groups(std::span<const UserArticle> train, const ArticleCatalog& catalog) {
  const auto counts = author_mentions(train, catalog);
  std::vector<std::pair<AuthorIndex, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::size_t total = 0;
  for (const auto& [a, n] : ranked) total += n;

  AuthorGroups groups;
  std::size_t cumulative = 0;
  bool head_done = false;
  for (const auto& [a, n] : ranked) {
    if (!head_done) {
      groups.short_head.insert(a);
      cumulative += n;
      // cumulative / total >= 0.2, in integers
      head_done = 5 * cumulative >= total;
    } else {
      groups.long_tail.insert(a);
    }
  }
  return groups;
}

namespace {

void add_article(GroupCounts& counts, ArticleIndex article, const ArticleCatalog& catalog,
                 const AuthorGroups& groups) {
  for (AuthorIndex a : catalog.articles.at(article).authors) {
    if (groups.short_head.contains(a)) {
      ++counts[kShortHead];
    } else if (groups.long_tail.contains(a)) {
      ++counts[kLongTail];
    }
  }
}

}  // namespace

GroupCounts count_by_group(std::span<const std::vector<ArticleIndex>> lists,
                           const ArticleCatalog& catalog, const AuthorGroups& groups) {
  GroupCounts counts{0, 0};
  for (const auto& list : lists) {
    for (ArticleIndex a : list) add_article(counts, a, catalog, groups);
  }
  return counts;
}

GroupCounts count_by_group(std::span<const UserArticle> train, const ArticleCatalog& catalog,
                           const AuthorGroups& groups) {
  GroupCounts counts{0, 0};
  for (const UserArticle& p : train) add_article(counts, p.article, catalog, groups);
  return counts;
}

double precision_at_k(const std::map<UserIndex, std::vector<ArticleIndex>>& recommended,
                      const std::map<UserIndex, std::set<ArticleIndex>>& held_out,
                      std::size_t k) {
  if (k == 0) throw Error(Errc::kInvalidArgument, "k must be positive");
  double sum = 0.0;
  std::size_t users = 0;
  for (const auto& [u, hidden] : held_out) {
    if (hidden.empty()) continue;
    ++users;
    auto it = recommended.find(u);
    if (it == recommended.end()) continue;
    std::size_t hits = 0;
    const auto& list = it->second;
    for (std::size_t i = 0; i < std::min(k, list.size()); ++i) hits += hidden.contains(list[i]);
    sum += static_cast<double>(hits) / static_cast<double>(k);
  }
  if (users == 0) throw Error(Errc::kNoEvaluableUsers, "no user has a held-out set");
  return sum / static_cast<double>(users);
}

double eagf(std::span<const std::size_t> counts_by_group) {
  double total = 0.0;
  for (std::size_t n : counts_by_group) total += std::sqrt(static_cast<double>(n));
  return total;
}

double spd(std::span<const std::size_t> recommended_by_group,
           std::span<const std::size_t> training_by_group) {
  if (recommended_by_group.size() != training_by_group.size() || recommended_by_group.empty()) {
    throw Error(Errc::kDimensionMismatch, "group counts differ in length");
  }
  std::int64_t r_total = 0;
  std::int64_t d_total = 0;
  for (std::size_t n : recommended_by_group) r_total += static_cast<std::int64_t>(n);
  for (std::size_t n : training_by_group) d_total += static_cast<std::int64_t>(n);
  if (r_total == 0) throw Error(Errc::kEmptyRecommendations, "no recommended items");
  if (d_total == 0) throw Error(Errc::kEmptyRecommendations, "no training items");
  // Exact integer numerator keeps the share differences free of rounding.
  __int128 numerator = 0;
  for (std::size_t i = 0; i < recommended_by_group.size(); ++i) {
    const __int128 r = static_cast<__int128>(recommended_by_group[i]) * d_total;
    const __int128 d = static_cast<__int128>(training_by_group[i]) * r_total;
    numerator += r > d ? r - d : d - r;
  }
  // Both operands stay below 2^53 at any realistic scale, so the quotient is
  // correctly rounded.
  const __int128 denominator = static_cast<__int128>(r_total) * d_total *
                               static_cast<__int128>(recommended_by_group.size());
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

double covered_topics(const std::map<UserIndex, std::set<TopicIndex>>& histories) {
  if (histories.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [u, topics] : histories) total += static_cast<double>(topics.size());
  return total / static_cast<double>(histories.size());
}

}  // namespace hgrec

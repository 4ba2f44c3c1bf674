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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hgrec/dataset.hpp"
#include "hgrec/hypergraph.hpp"
#include "hgrec/ranker.hpp"

namespace hgrec {

// Per-author popularity in the current training slice (p) and coverage in all
// earlier recommendation rounds (c). A multi-author article counts once for
// every listed author, so the p values may sum past one.
struct AuthorStats {
  std::map<AuthorIndex, double> frequency;
  std::map<AuthorIndex, double> coverage;
};

// p_i: share of training (user, article) pairs whose article lists author i.
std::map<AuthorIndex, double> author_frequency(std::span<const UserArticle> train,
                                               const ArticleCatalog& catalog);

// w_i = max(0, p_i - c_i) for every author with a frequency entry. Authors
// without a coverage entry have never been recommended (c_i = 0).
std::map<AuthorIndex, double> coverage_weights(const AuthorStats& stats);

enum class AdaptationMode { kPlain, kCoverageOnly, kFair };

struct AdaptedQuery {
  UserIndex user = 0;
  std::map<AuthorIndex, double> author_weights;  // strictly positive entries
};

// Plain keeps only the user seed, CoverageOnly adds w_i and Fair adds w_i r_i.
AdaptedQuery adapt_query(UserIndex user, const std::map<AuthorIndex, double>& weights,
                         const std::map<AuthorIndex, double>* relevance, AdaptationMode mode);

// Places the adapted query on the hypergraph. The user seed is 1.0; authors
// without a vertex are dropped.
QueryVector to_query_vector(const Hypergraph& h, const AdaptedQuery& query);

QueryVector build_adapted_query(const Hypergraph& h, UserIndex user,
                                const std::map<AuthorIndex, double>& weights,
                                const std::map<AuthorIndex, double>* relevance,
                                AdaptationMode mode);

// Cumulative slot counts behind c_i.
class CoverageState {
 public:
  // Counts every recommendation slot once per author of the slotted article.
  void record(std::span<const std::vector<ArticleIndex>> lists, const ArticleCatalog& catalog);

  std::size_t total_slots() const { return total_slots_; }
  const std::map<AuthorIndex, std::size_t>& author_slots() const { return author_slots_; }

  double ratio(AuthorIndex author) const;
  std::map<AuthorIndex, double> ratios() const;

  // Restores a persisted state.
  static CoverageState from_counts(std::map<AuthorIndex, std::size_t> author_slots,
                                   std::size_t total_slots);

 private:
  std::map<AuthorIndex, std::size_t> author_slots_;
  std::size_t total_slots_ = 0;
};

CoverageState update_coverage(CoverageState state,
                              std::span<const std::vector<ArticleIndex>> recommendations,
                              const ArticleCatalog& catalog);

}  // namespace hgrec

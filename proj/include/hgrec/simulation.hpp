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
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "hgrec/config.hpp"
#include "hgrec/dataset.hpp"
#include "hgrec/diversity.hpp"
#include "hgrec/fairness.hpp"
#include "hgrec/metrics.hpp"

namespace hgrec {

// Equal-duration time slices aligned to UTC midnight.
struct RoundPlan {
  std::size_t n_rounds = 4;
  std::vector<Timestamp> boundaries;  // n_rounds + 1 entries

  std::size_t round_of(Timestamp t) const;
};

RoundPlan make_round_plan(const InteractionLog& log, std::size_t n_rounds);

// Events of each round, in log order. Throws if a round is empty.
std::vector<std::vector<Interaction>> slice_rounds(const InteractionLog& log,
                                                   const RoundPlan& plan);

struct RoundSplit {
  std::vector<Interaction> train;
  std::map<UserIndex, std::set<ArticleIndex>> test;
  Timestamp last_day_start = 0;
};

// Hides, for every user with more than `holdout` distinct articles read in
// [end - 1 day, end), the `holdout` most recently read of them. All events on
// a hidden (user, article) pair leave the training set.
RoundSplit carve_round(const std::vector<Interaction>& slice, Timestamp end,
                       std::size_t holdout = 10);

// Greedy re-ranking over an initial ranked list: each step takes the best
// ranked remaining article that brings a new under-covered author into the
// list, falling back to rank order when none does.
std::vector<ArticleIndex> coverage_rerank(std::span<const ArticleIndex> initial, std::size_t k,
                                          const ArticleCatalog& catalog,
                                          const std::set<AuthorIndex>& under_covered);

// Same skeleton; the gain is a topic new to the user (history plus the topics
// already placed in this list).
std::vector<ArticleIndex> diversity_rerank(std::span<const ArticleIndex> initial, std::size_t k,
                                           const ArticleCatalog& catalog,
                                           const std::set<TopicIndex>& history);

using Recommendations = std::map<UserIndex, std::vector<ArticleIndex>>;

struct MetricsRow {
  std::optional<double> precision;  // absent when no user is evaluable
  double eagf = 0.0;
  double spd = 0.0;
  double covered_topics = 0.0;
  GroupCounts recommended_by_group{0, 0};
};

// One method's state carried between rounds. Methods never share state.
struct LaneState {
  CoverageState coverage;
  UserTopicHistory topics;
};

// What one method did in one round.
struct LaneRound {
  Recommendations recommendations;
  std::map<AuthorIndex, double> coverage_before;  // c^{t-1}
  std::map<AuthorIndex, double> weights;          // w^t; empty in round 1
  MetricsRow metrics;
};

// Method-independent data of one round.
struct RoundData {
  std::size_t round = 0;  // zero-based
  Timestamp start = 0;
  Timestamp end = 0;
  std::vector<UserArticle> train_pairs;
  std::map<UserIndex, std::set<ArticleIndex>> test;
  std::map<AuthorIndex, double> frequency;  // p^t
  AuthorGroups groups;
  GroupCounts training_by_group{0, 0};
  double theta = 1.0;
};

struct ExperimentResult {
  std::vector<Method> methods;
  std::size_t k = 20;
  std::vector<RoundData> rounds;
  // lanes[m][t] for methods[m] in round t
  std::vector<std::vector<LaneRound>> lanes;
  std::vector<LaneState> final_states;
};

// The full temporal experiment: rounds run in order; every method keeps its
// own coverage and topic state.
ExperimentResult run_experiment(const Dataset& data, const RunConfig& config);

// Writes metrics.csv, recommendations.jsonl, report.md and state.json.
void write_outputs(const ExperimentResult& result, const Dataset& data,
                   const std::filesystem::path& dir);

// metrics.csv columns: round, method, precision, eagf, spd, covered_topics.
void write_metrics_csv(const ExperimentResult& result, const std::filesystem::path& path);

struct MetricsRecord {
  std::size_t round = 0;  // one-based
  std::string method;
  std::optional<double> precision;
  double eagf = 0.0;
  double spd = 0.0;
  double covered_topics = 0.0;
};

std::vector<MetricsRecord> read_metrics_csv(const std::filesystem::path& path);

// Markdown tables with one row per method and one column per round, plus
// the relative change of each method against plain hypergraph ranking.
std::string render_report(const std::vector<MetricsRecord>& records);

}  // namespace hgrec

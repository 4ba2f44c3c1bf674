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

#include "hgrec/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "hgrec/error.hpp"
#include "hgrec/graph_builder.hpp"
#include "hgrec/random.hpp"
#include "hgrec/ranker.hpp"

namespace hgrec {

using nlohmann::json;

namespace {

constexpr std::size_t kSolveChunk = 256;
constexpr std::uint64_t kRandomStream = 0x52414e444f4dULL;
constexpr std::uint64_t kDiversityStream = 0x4449564552ULL;

Timestamp floor_day(Timestamp t) {
  Timestamp d = t / kSecondsPerDay;
  if (t < 0 && d * kSecondsPerDay != t) --d;
  return d * kSecondsPerDay;
}

bool adapts(Method m) {
  return m == Method::kHypergraphFair || m == Method::kHypergraphCoverage ||
         m == Method::kHypergraphDiversified || m == Method::kCoverageReranking ||
         m == Method::kDiversityReranking;
}

bool uses_hypergraph(Method m) { return m != Method::kPopularity && m != Method::kRandom; }

std::map<UserIndex, std::set<ArticleIndex>> seen_by_user(std::span<const UserArticle> pairs) {
  std::map<UserIndex, std::set<ArticleIndex>> seen;
  for (const UserArticle& p : pairs) seen[p.user].insert(p.article);
  return seen;
}

// Scores of the candidate articles in ascending article order, ranked and cut
// to `count`. Ties go to the smaller article index.
std::vector<ArticleIndex> top_articles(const Eigen::Ref<const Eigen::VectorXd>& scores,
                                       const std::vector<ArticleIndex>& articles,
                                       const std::set<ArticleIndex>& exclude, std::size_t count) {
  std::vector<std::size_t> order;
  order.reserve(articles.size());
  for (std::size_t i = 0; i < articles.size(); ++i) {
    if (!exclude.contains(articles[i])) order.push_back(i);
  }
  count = std::min(count, order.size());
  auto before = [&](std::size_t x, std::size_t y) {
    const double sx = scores[static_cast<Eigen::Index>(x)];
    const double sy = scores[static_cast<Eigen::Index>(y)];
    if (sx != sy) return sx > sy;
    return x < y;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    before);
  std::vector<ArticleIndex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(articles[order[i]]);
  return out;
}

// Columns of (I - alpha A)^{-1}, scaled by 1 - alpha, for every article
// vertex and optionally every author vertex. The inverse is symmetric, so row
// g holds the response of the unit query at vertex g on those columns.
struct Kernel {
  Eigen::MatrixXd g;
  Eigen::Index n_articles = 0;

  auto articles(std::size_t vertex) const {
    return g.row(static_cast<Eigen::Index>(vertex)).head(n_articles).transpose();
  }
  double author(std::size_t vertex, std::size_t i) const {
    return g(static_cast<Eigen::Index>(vertex), n_articles + static_cast<Eigen::Index>(i));
  }
};

Kernel solve_kernel(const Hypergraph& h, const SolverOptions& options, bool with_authors) {
  std::vector<std::size_t> seeds = h.vertices_of(VertexKind::kArticle);
  Kernel out;
  out.n_articles = static_cast<Eigen::Index>(seeds.size());
  if (with_authors) {
    const auto& authors = h.vertices_of(VertexKind::kAuthor);
    seeds.insert(seeds.end(), authors.begin(), authors.end());
  }
  const auto n = static_cast<Eigen::Index>(h.num_vertices());
  out.g.resize(n, static_cast<Eigen::Index>(seeds.size()));
  for (std::size_t begin = 0; begin < seeds.size(); begin += kSolveChunk) {
    const std::size_t width = std::min(kSolveChunk, seeds.size() - begin);
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(width));
    for (std::size_t c = 0; c < width; ++c) {
      block(static_cast<Eigen::Index>(seeds[begin + c]), static_cast<Eigen::Index>(c)) = 1.0;
    }
    out.g.middleCols(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(width)) =
        solve_block(h, block, options);
  }
  return out;
}

std::vector<std::size_t> locals(const Hypergraph& h, VertexKind kind) {
  std::vector<std::size_t> out;
  for (std::size_t g : h.vertices_of(kind)) out.push_back(h.vertices()[g].index);
  return out;
}

// Best theta on a validation split carved from the last day of the training
// set, judged by plain-ranking precision. Ties keep the earlier grid entry.
double select_theta(const std::vector<Interaction>& train, Timestamp last_day_start,
                    const ArticleCatalog& catalog, const RunConfig& config) {
  std::vector<Interaction> before;
  for (const Interaction& ev : train) {
    if (ev.timestamp < last_day_start) before.push_back(ev);
  }
  const RoundSplit val = carve_round(before, last_day_start, config.holdout);
  if (val.test.empty() || val.train.empty()) {
    spdlog::warn("theta grid: no validation users, keeping theta={}", config.solver.theta);
    return config.solver.theta;
  }
  const Hypergraph h = assemble(val.train, catalog, config.graph);
  const auto articles = locals(h, VertexKind::kArticle);
  const auto seen = seen_by_user(unique_pairs(val.train));
  std::vector<std::size_t> seeds;
  std::vector<UserIndex> users;
  for (const auto& [u, hidden] : val.test) {
    if (auto g = h.find(VertexKind::kUser, u)) {
      seeds.push_back(*g);
      users.push_back(u);
    }
  }
  double best_theta = config.solver.theta;
  double best = -1.0;
  for (double theta : config.theta_grid) {
    SolverOptions options = config.solver;
    options.theta = theta;
    const Kernel kernel = solve_kernel(h, options, false);
    Recommendations recs;
    for (std::size_t c = 0; c < users.size(); ++c) {
      recs[users[c]] = top_articles(kernel.articles(seeds[c]), articles, seen.at(users[c]), config.k);
    }
    const double p = precision_at_k(recs, val.test, config.k);
    spdlog::debug("theta={} validation precision={}", theta, p);
    if (p > best) {
      best = p;
      best_theta = theta;
    }
  }
  return best_theta;
}

// Each step takes the best ranked unused article for which `gain` holds, or
// the best ranked unused one when none does; `picked` observes every choice.
template <typename Gain, typename Picked>
std::vector<ArticleIndex> greedy_rerank(std::span<const ArticleIndex> initial, std::size_t k,
                                        Gain&& gain, Picked&& picked) {
  std::vector<ArticleIndex> out;
  std::vector<char> used(initial.size(), 0);
  k = std::min(k, initial.size());
  while (out.size() < k) {
    std::size_t pick = initial.size();
    for (std::size_t i = 0; i < initial.size() && pick == initial.size(); ++i) {
      if (!used[i] && gain(initial[i])) pick = i;
    }
    for (std::size_t i = 0; i < initial.size() && pick == initial.size(); ++i) {
      if (!used[i]) pick = i;
    }
    used[pick] = 1;
    out.push_back(initial[pick]);
    picked(initial[pick]);
  }
  return out;
}

}  // namespace

std::size_t RoundPlan::round_of(Timestamp t) const {
  auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
  if (it == boundaries.begin()) return 0;
  return std::min(static_cast<std::size_t>(it - boundaries.begin()) - 1, n_rounds - 1);
}

RoundPlan make_round_plan(const InteractionLog& log, std::size_t n_rounds) {
  if (log.events.empty()) throw Error(Errc::kInvalidArgument, "empty interaction log");
  if (n_rounds == 0) throw Error(Errc::kInvalidArgument, "at least one round required");
  Timestamp lo = log.events.front().timestamp;
  Timestamp hi = lo;
  for (const Interaction& ev : log.events) {
    lo = std::min(lo, ev.timestamp);
    hi = std::max(hi, ev.timestamp);
  }
  const Timestamp start = floor_day(lo);
  const Timestamp end = floor_day(hi) + kSecondsPerDay;
  RoundPlan plan;
  plan.n_rounds = n_rounds;
  const auto n = static_cast<Timestamp>(n_rounds);
  for (Timestamp i = 0; i <= n; ++i) plan.boundaries.push_back(start + (end - start) * i / n);
  return plan;
}

std::vector<std::vector<Interaction>> slice_rounds(const InteractionLog& log,
                                                   const RoundPlan& plan) {
  std::vector<std::vector<Interaction>> slices(plan.n_rounds);
  for (const Interaction& ev : log.events) slices[plan.round_of(ev.timestamp)].push_back(ev);
  for (std::size_t r = 0; r < slices.size(); ++r) {
    if (slices[r].empty()) {
      throw Error(Errc::kInvalidArgument, "round " + std::to_string(r + 1) + " has no interactions");
    }
  }
  return slices;
}

RoundSplit carve_round(const std::vector<Interaction>& slice, Timestamp end, std::size_t holdout) {
  RoundSplit split;
  split.last_day_start = end - kSecondsPerDay;
  // latest read time per (user, article) within the final day
  std::map<UserIndex, std::map<ArticleIndex, Timestamp>> last_day;
  for (const Interaction& ev : slice) {
    if (ev.timestamp >= split.last_day_start && ev.timestamp < end) {
      Timestamp& t = last_day[ev.user][ev.article];
      t = std::max(t, ev.timestamp);
    }
  }
  for (const auto& [user, reads] : last_day) {
    if (reads.size() <= holdout) continue;
    std::vector<std::pair<Timestamp, ArticleIndex>> recent;
    for (const auto& [a, t] : reads) recent.emplace_back(t, a);
    std::sort(recent.begin(), recent.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    auto& hidden = split.test[user];
    for (std::size_t i = 0; i < holdout; ++i) hidden.insert(recent[i].second);
  }
  for (const Interaction& ev : slice) {
    auto it = split.test.find(ev.user);
    if (it != split.test.end() && it->second.contains(ev.article)) continue;
    split.train.push_back(ev);
  }
  if (split.test.empty()) spdlog::warn("NoTestUsers: no user qualifies for evaluation");
  return split;
}

std::vector<ArticleIndex> coverage_rerank(std::span<const ArticleIndex> initial, std::size_t k,
                                          const ArticleCatalog& catalog,
                                          const std::set<AuthorIndex>& under_covered) {
  std::set<AuthorIndex> in_list;
  return greedy_rerank(
      initial, k,
      [&](ArticleIndex a) {
        for (AuthorIndex author : catalog.articles.at(a).authors) {
          if (under_covered.contains(author) && !in_list.contains(author)) return true;
        }
        return false;
      },
      [&](ArticleIndex a) {
        const auto& authors = catalog.articles.at(a).authors;
        in_list.insert(authors.begin(), authors.end());
      });
}

std::vector<ArticleIndex> diversity_rerank(std::span<const ArticleIndex> initial, std::size_t k,
                                           const ArticleCatalog& catalog,
                                           const std::set<TopicIndex>& history) {
  std::set<TopicIndex> shown = history;
  return greedy_rerank(
      initial, k,
      [&](ArticleIndex a) {
        for (TopicIndex t : catalog.articles.at(a).topics) {
          if (!shown.contains(t)) return true;
        }
        return false;
      },
      [&](ArticleIndex a) {
        const auto& topics = catalog.articles.at(a).topics;
        shown.insert(topics.begin(), topics.end());
      });
}

ExperimentResult run_experiment(const Dataset& data, const RunConfig& config) {
  if (config.methods.empty()) throw Error(Errc::kConfigError, "method list is empty");
  const ArticleCatalog& catalog = data.catalog;
  const RoundPlan plan = make_round_plan(data.log, config.rounds);
  const auto slices = slice_rounds(data.log, plan);

  ExperimentResult result;
  result.methods = config.methods;
  result.k = config.k;
  result.lanes.assign(config.methods.size(), {});
  result.final_states.assign(config.methods.size(), {});
  auto& states = result.final_states;

  bool need_graph = false, need_relevance = false;
  for (Method m : config.methods) {
    need_graph = need_graph || uses_hypergraph(m);
    need_relevance = need_relevance || m == Method::kHypergraphFair;
  }

  for (std::size_t t = 0; t < plan.n_rounds; ++t) {
    RoundData round;
    round.round = t;
    round.start = plan.boundaries[t];
    round.end = plan.boundaries[t + 1];
    RoundSplit split = carve_round(slices[t], round.end, config.holdout);
    round.train_pairs = unique_pairs(split.train);
    round.test = std::move(split.test);
    round.frequency = author_frequency(round.train_pairs, catalog);
    round.groups = split_groups(round.train_pairs, catalog);
    round.training_by_group = count_by_group(round.train_pairs, catalog, round.groups);
    round.theta = config.solver.theta;
    spdlog::info("round {}: {} train pairs, {} evaluated users", t + 1, round.train_pairs.size(),
                 round.test.size());

    const auto seen = seen_by_user(round.train_pairs);
    std::vector<UserIndex> users;
    for (const auto& [u, s] : seen) users.push_back(u);

    // Candidate pool: articles of the training slice, ascending.
    std::vector<ArticleIndex> pool;
    for (const UserArticle& p : round.train_pairs) pool.push_back(p.article);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::optional<Hypergraph> graph;
    Kernel kernel;
    std::vector<ArticleIndex> graph_articles;
    std::vector<AuthorIndex> graph_authors;
    std::vector<TopicIndex> graph_topics;
    if (need_graph) {
      if (!config.theta_grid.empty()) {
        round.theta = select_theta(split.train, split.last_day_start, catalog, config);
        spdlog::info("round {}: theta={}", t + 1, round.theta);
      }
      SolverOptions options = config.solver;
      options.theta = round.theta;
      graph.emplace(assemble(split.train, catalog, config.graph));
      const Hypergraph& h = *graph;
      graph_articles = locals(h, VertexKind::kArticle);
      graph_authors = locals(h, VertexKind::kAuthor);
      graph_topics = locals(h, VertexKind::kTopic);
      kernel = solve_kernel(h, options, need_relevance && t > 0);
    }

    std::map<ArticleIndex, std::size_t> popularity;
    for (const UserArticle& p : round.train_pairs) ++popularity[p.article];
    std::vector<ArticleIndex> by_popularity = pool;
    std::stable_sort(by_popularity.begin(), by_popularity.end(),
                     [&](ArticleIndex x, ArticleIndex y) { return popularity[x] > popularity[y]; });

    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      const Method method = config.methods[m];
      LaneState& state = states[m];
      LaneRound lane;
      lane.coverage_before = state.coverage.ratios();
      const bool adapt = adapts(method) && t > 0;

      std::set<AuthorIndex> under_covered;
      if (adapt && (method == Method::kHypergraphFair || method == Method::kHypergraphCoverage)) {
        lane.weights = coverage_weights({round.frequency, lane.coverage_before});
      }
      if (adapt && method == Method::kCoverageReranking) {
        for (const auto& [a, p] : round.frequency) {
          if (state.coverage.ratio(a) < p) under_covered.insert(a);
        }
      }

      for (UserIndex u : users) {
        const auto& exclude = seen.at(u);
        std::vector<ArticleIndex> list;
        if (method == Method::kPopularity) {
          for (ArticleIndex a : by_popularity) {
            if (list.size() == config.k) break;
            if (!exclude.contains(a)) list.push_back(a);
          }
        } else if (method == Method::kRandom) {
          std::vector<ArticleIndex> candidates;
          for (ArticleIndex a : pool) {
            if (!exclude.contains(a)) candidates.push_back(a);
          }
          Rng rng = Rng::derive(config.seed ^ kRandomStream, t, u);
          for (std::size_t i : rng.sample_without_replacement(candidates.size(), config.k)) {
            list.push_back(candidates[i]);
          }
        } else {
          const Hypergraph& h = *graph;
          const std::size_t self = *h.find(VertexKind::kUser, u);
          Eigen::VectorXd scores = kernel.articles(self);
          if (adapt && (method == Method::kHypergraphFair ||
                        method == Method::kHypergraphCoverage)) {
            std::map<AuthorIndex, double> relevance;
            if (method == Method::kHypergraphFair) {
              std::map<std::size_t, double> raw;
              for (std::size_t i = 0; i < graph_authors.size(); ++i) {
                raw[graph_authors[i]] = kernel.author(self, i);
              }
              relevance = normalize_relevance(raw, config.relevance);
            }
            const AdaptedQuery q = adapt_query(
                u, lane.weights, method == Method::kHypergraphFair ? &relevance : nullptr,
                method == Method::kHypergraphFair ? AdaptationMode::kFair
                                                  : AdaptationMode::kCoverageOnly);
            // Linearity of the solve: the adapted query's response is the
            // user's response plus the weighted author responses.
            for (const auto& [a, w] : q.author_weights) {
              if (auto g = h.find(VertexKind::kAuthor, a)) scores += w * kernel.articles(*g);
            }
          } else if (adapt && method == Method::kHypergraphDiversified) {
            Rng rng = Rng::derive(config.seed ^ kDiversityStream, t, u);
            const DiversifiedQuery q =
                diversify(u, state.topics.of(u), graph_topics, config.diversity.n_samples,
                          config.diversity.weight, rng);
            for (const auto& [topic, w] : q.topic_weights) {
              scores += w * kernel.articles(*h.find(VertexKind::kTopic, topic));
            }
          }
          const bool rerank = adapt && (method == Method::kCoverageReranking ||
                                        method == Method::kDiversityReranking);
          list = top_articles(scores, graph_articles, exclude,
                              rerank ? config.pool_size() : config.k);
          if (rerank && method == Method::kCoverageReranking) {
            list = coverage_rerank(list, config.k, catalog, under_covered);
          } else if (rerank) {
            list = diversity_rerank(list, config.k, catalog, state.topics.of(u));
          }
        }
        if (!list.empty()) lane.recommendations[u] = std::move(list);
      }

      std::vector<std::vector<ArticleIndex>> lists;
      for (const auto& [u, list] : lane.recommendations) lists.push_back(list);
      state.coverage.record(lists, catalog);
      std::map<UserIndex, std::set<TopicIndex>> histories;
      for (const auto& [u, list] : lane.recommendations) {
        state.topics.record(u, list, catalog);
        histories[u] = state.topics.of(u);
      }

      MetricsRow& row = lane.metrics;
      if (!round.test.empty()) row.precision = precision_at_k(lane.recommendations, round.test, config.k);
      row.recommended_by_group = count_by_group(lists, catalog, round.groups);
      row.eagf = eagf(row.recommended_by_group);
      const std::size_t r_total = row.recommended_by_group[0] + row.recommended_by_group[1];
      const std::size_t d_total = round.training_by_group[0] + round.training_by_group[1];
      row.spd = r_total > 0 && d_total > 0 ? spd(row.recommended_by_group, round.training_by_group)
                                           : 0.0;
      row.covered_topics = covered_topics(histories);
      spdlog::info("round {} {}: precision={} eagf={:.1f} spd={:.4f} topics={:.2f}", t + 1,
                   to_string(method), row.precision ? std::to_string(*row.precision) : "NA",
                   row.eagf, row.spd, row.covered_topics);
      result.lanes[m].push_back(std::move(lane));
    }
    result.rounds.push_back(std::move(round));
  }
  return result;
}

namespace {

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

void write_metrics_csv(const ExperimentResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  out << "round,method,precision,eagf,spd,covered_topics\n";
  for (std::size_t t = 0; t < result.rounds.size(); ++t) {
    for (std::size_t m = 0; m < result.methods.size(); ++m) {
      const MetricsRow& row = result.lanes[m][t].metrics;
      out << t + 1 << ',' << to_string(result.methods[m]) << ','
          << (row.precision ? fixed(*row.precision) : "NA") << ',' << fixed(row.eagf) << ','
          << fixed(row.spd) << ',' << fixed(row.covered_topics) << '\n';
    }
  }
}

std::vector<MetricsRecord> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kMissingMetrics, "no metrics at " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "round,method,precision,eagf,spd,covered_topics") {
    throw Error(Errc::kParseError, path.string() + ": unexpected header");
  }
  std::vector<MetricsRecord> records;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) {
      throw Error(Errc::kParseError, path.string() + ":" + std::to_string(number) + ": 6 columns expected");
    }
    try {
      MetricsRecord r;
      r.round = std::stoul(cells[0]);
      r.method = cells[1];
      if (cells[2] != "NA") r.precision = std::stod(cells[2]);
      r.eagf = std::stod(cells[3]);
      r.spd = std::stod(cells[4]);
      r.covered_topics = std::stod(cells[5]);
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(Errc::kParseError, path.string() + ":" + std::to_string(number) + ": bad number");
    }
  }
  return records;
}

std::string render_report(const std::vector<MetricsRecord>& records) {
  std::vector<std::string> methods;
  std::size_t n_rounds = 0;
  std::map<std::pair<std::string, std::size_t>, const MetricsRecord*> cell;
  for (const auto& r : records) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    n_rounds = std::max(n_rounds, r.round);
    cell[{r.method, r.round}] = &r;
  }
  std::ostringstream out;
  out << "# Simulation report\n\n";
  struct Measure {
    const char* title;
    std::optional<double> (*get)(const MetricsRecord&);
    int digits;
  };
  const Measure measures[] = {
      {"Precision (higher is better)", [](const MetricsRecord& r) { return r.precision; }, 3},
      {"EAGF (higher is better)",
       [](const MetricsRecord& r) { return std::optional<double>(r.eagf); }, 1},
      {"SPD (lower is better)",
       [](const MetricsRecord& r) { return std::optional<double>(r.spd); }, 3},
      {"Covered topics (higher is better)",
       [](const MetricsRecord& r) { return std::optional<double>(r.covered_topics); }, 1},
  };
  auto header = [&](const char* first) {
    out << "| " << first << " |";
    for (std::size_t t = 1; t <= n_rounds; ++t) out << " Sim" << t << " |";
    out << "\n|---|";
    for (std::size_t t = 1; t <= n_rounds; ++t) out << "---:|";
    out << '\n';
  };
  char buf[64];
  for (const Measure& measure : measures) {
    out << "## " << measure.title << "\n\n";
    header("method");
    for (const auto& m : methods) {
      out << "| " << m << " |";
      for (std::size_t t = 1; t <= n_rounds; ++t) {
        auto it = cell.find({m, t});
        std::optional<double> v = it == cell.end() ? std::nullopt : measure.get(*it->second);
        if (v) {
          std::snprintf(buf, sizeof buf, " %.*f |", measure.digits, *v);
          out << buf;
        } else {
          out << " NA |";
        }
      }
      out << '\n';
    }
    out << '\n';
  }

  if (std::find(methods.begin(), methods.end(), "hypergraph") != methods.end()) {
    out << "## Change relative to hypergraph\n\n";
    out << "Precision drop and SPD reduction in percent of the plain hypergraph value.\n\n";
    header("method / measure");
    for (const auto& m : methods) {
      if (m == "hypergraph") continue;
      for (int which = 0; which < 2; ++which) {
        out << "| " << m << (which == 0 ? " precision drop %" : " SPD reduction %") << " |";
        for (std::size_t t = 1; t <= n_rounds; ++t) {
          auto base = cell.find({"hypergraph", t});
          auto mine = cell.find({m, t});
          std::optional<double> v;
          if (base != cell.end() && mine != cell.end()) {
            if (which == 0 && base->second->precision && mine->second->precision &&
                *base->second->precision > 0.0) {
              v = 100.0 * (*base->second->precision - *mine->second->precision) /
                  *base->second->precision;
            } else if (which == 1 && base->second->spd > 0.0) {
              v = 100.0 * (base->second->spd - mine->second->spd) / base->second->spd;
            }
          }
          if (v) {
            std::snprintf(buf, sizeof buf, " %.1f |", *v);
            out << buf;
          } else {
            out << " NA |";
          }
        }
        out << '\n';
      }
    }
    out << '\n';
  }
  return out.str();
}

void write_outputs(const ExperimentResult& result, const Dataset& data,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_metrics_csv(result, dir / "metrics.csv");
  {
    std::ofstream out(dir / "recommendations.jsonl");
    if (!out) throw Error(Errc::kIoError, "cannot write recommendations.jsonl");
    for (std::size_t t = 0; t < result.rounds.size(); ++t) {
      for (std::size_t m = 0; m < result.methods.size(); ++m) {
        for (const auto& [u, list] : result.lanes[m][t].recommendations) {
          json articles = json::array();
          for (ArticleIndex a : list) articles.push_back(data.catalog.article_names.at(a));
          json rec = {{"round", t + 1},
                      {"method", std::string(to_string(result.methods[m]))},
                      {"user", data.user_names.at(u)},
                      {"articles", std::move(articles)}};
          out << rec.dump() << '\n';
        }
      }
    }
  }
  {
    std::ofstream out(dir / "report.md");
    out << render_report(read_metrics_csv(dir / "metrics.csv"));
  }
  {
    json lanes = json::object();
    for (std::size_t m = 0; m < result.methods.size(); ++m) {
      const LaneState& s = result.final_states[m];
      json slots = json::object();
      for (const auto& [a, n] : s.coverage.author_slots()) {
        slots[data.catalog.author_names.at(a)] = n;
      }
      json topics = json::object();
      for (const auto& [u, ts] : s.topics.all()) {
        json list = json::array();
        for (TopicIndex topic : ts) list.push_back(data.catalog.topic_names.at(topic));
        topics[data.user_names.at(u)] = std::move(list);
      }
      lanes[std::string(to_string(result.methods[m]))] = {
          {"total_slots", s.coverage.total_slots()}, {"author_slots", slots}, {"topics", topics}};
    }
    std::ofstream out(dir / "state.json");
    out << json{{"rounds", result.rounds.size()}, {"methods", lanes}}.dump(1) << '\n';
  }
}

}  // namespace hgrec

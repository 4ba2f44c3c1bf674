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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   hgrec_acceptance [--expect-fail AC5,...]
//
// Exits 0 when the failing criteria are exactly the expected ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <spdlog/spdlog.h>

#include "hgrec/metrics.hpp"
#include "hgrec/ranker.hpp"
#include "hgrec/simulation.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hgrec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

// --- AC1 -------------------------------------------------------------------

Outcome adjacency_correctness() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 gen(20170101);
  double worst = 0.0, lowest = 1.0, highest = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = oracle::random_instance(gen, 60, 40);
    auto h = build_hypergraph(inst.vertices, inst.edges);
    const Eigen::MatrixXd a = Eigen::MatrixXd(h.adjacency());
    const Eigen::MatrixXd expected = oracle::adjacency(inst.vertices, inst.edges);
    worst = std::max(worst, (a - expected).cwiseAbs().maxCoeff());
    o.require(a == a.transpose(), "asymmetric adjacency in trial " + std::to_string(trial));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    lowest = std::min(lowest, eig.eigenvalues().minCoeff());
    highest = std::max(highest, eig.eigenvalues().maxCoeff());
  }
  const double elapsed = seconds_since(start);
  o.require(worst <= 1e-12, "max deviation " + std::to_string(worst));
  o.require(lowest >= -1.0 && highest <= 1.0 + 1e-9, "eigenvalue out of [-1, 1+1e-9]");
  o.require(elapsed < 10.0, "took " + std::to_string(elapsed) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "50 graphs, max |A - dense| = %.2e, eigenvalues in [%.2e, %.12f], %.2f s",
                worst, lowest, highest, elapsed);
  if (o.pass) o.detail << buf;
  return o;
}

// --- AC2 -------------------------------------------------------------------

Outcome solver_correctness() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 gen(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  SolverOptions direct, iterative;
  direct.method = SolverMethod::kDirect;
  iterative.method = SolverMethod::kIterative;
  iterative.tol = 1e-10;
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = oracle::random_instance(gen, 200, 120);
    auto h = build_hypergraph(inst.vertices, inst.edges);
    QueryVector y(h.num_vertices());
    for (std::size_t v = 0; v < h.num_vertices(); ++v) {
      if (u(gen) < 0.1) y.add(v, u(gen));
    }
    y.add(0, 1.0);
    direct.theta = iterative.theta = 0.05 + 10.0 * u(gen);
    const auto a = solve(h, y, direct).scores;
    const auto b = solve(h, y, iterative).scores;
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  o.require(worst <= 1e-8, "direct vs iterative gap " + std::to_string(worst));

  Hyperedge e;
  e.members = {{VertexKind::kUser, 0}, {VertexKind::kArticle, 0}};
  auto toy = build_hypergraph({{VertexKind::kUser, 0}, {VertexKind::kArticle, 0}}, {e});
  SolverOptions exact = direct;
  exact.theta = 1.0;
  const auto f = solve(toy, QueryVector::unit(2, 0), exact).scores;
  const double hand = std::max(std::abs(f[0] - 0.75), std::abs(f[1] - 0.25));
  o.require(hand <= 1e-12, "hand case off by " + std::to_string(hand));
  SolverOptions fixed_point = iterative;
  fixed_point.theta = 1.0;
  const auto g = solve(toy, QueryVector::unit(2, 0), fixed_point).scores;
  const double hand_iter = std::max(std::abs(g[0] - 0.75), std::abs(g[1] - 0.25));
  o.require(hand_iter <= 10 * iterative.tol, "iterative hand case off by " + std::to_string(hand_iter));

  double limit = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    auto inst = oracle::random_instance(gen, 60, 40);
    auto h = build_hypergraph(inst.vertices, inst.edges);
    QueryVector y(h.num_vertices());
    for (std::size_t v = 0; v < h.num_vertices(); v += 2) y.add(v, 0.1 + u(gen));
    for (auto options : {direct, iterative}) {
      options.theta = 1e6;
      const auto f = solve(h, y, options).scores;
      const Eigen::VectorXd yd = y.to_dense();
      limit = std::max(limit, (f - yd).cwiseAbs().maxCoeff() / yd.cwiseAbs().maxCoeff());
    }
  }
  o.require(limit <= 2e-6, "theta=1e6 relative gap " + std::to_string(limit));
  const double elapsed = seconds_since(start);
  o.require(elapsed < 20.0, "took " + std::to_string(elapsed) + " s");
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "50 instances, max |direct - iterative| = %.2e, hand case err %.1e (direct), "
                "%.1e (iterative), theta=1e6 gap %.2e x |y|, %.2f s",
                worst, hand, hand_iter, limit, elapsed);
  if (o.pass) o.detail << buf;
  return o;
}

// --- AC3 -------------------------------------------------------------------

Outcome metric_values() {
  Outcome o;
  const std::vector<std::size_t> groups = {16, 9};
  o.require(eagf(groups) == 7.0, "EAGF(16,9) != 7");
  const std::vector<std::size_t> r = {8, 2}, d = {6, 4};
  o.require(spd(r, d) == 0.2, "SPD((0.8,0.2),(0.6,0.4)) != 0.2");
  std::vector<ArticleIndex> list(20);
  for (std::size_t i = 0; i < 20; ++i) list[i] = i;
  const std::set<ArticleIndex> held = {0, 5, 10, 15, 19, 30, 31, 32, 33, 34};
  o.require(precision_at_k({{0, list}}, {{0, held}}, 20) == 0.25, "precision 5/20 != 0.25");
  if (o.pass) o.detail << "EAGF(16,9)=7, SPD=0.2, precision 5/20=0.25, all exact";
  return o;
}

// --- shared default run ------------------------------------------------------

struct DefaultRun {
  Dataset data;
  RunConfig config;
  ExperimentResult result;
  double seconds = 0.0;
};

RunConfig default_config() {
  RunConfig c;
  c.synthetic = SynthConfig{};
  c.methods = {Method::kHypergraph, Method::kHypergraphFair, Method::kHypergraphCoverage,
               Method::kHypergraphDiversified};
  return c;
}

std::size_t lane_of(const ExperimentResult& r, Method m) {
  for (std::size_t i = 0; i < r.methods.size(); ++i) {
    if (r.methods[i] == m) return i;
  }
  return r.methods.size();
}

const MetricsRow& row(const ExperimentResult& r, Method m, std::size_t round) {
  return r.lanes[lane_of(r, m)][round].metrics;
}

// --- AC4 -------------------------------------------------------------------

Outcome round_one_equivalence(const DefaultRun& run) {
  Outcome o;
  auto check = [&](const ExperimentResult& r, const std::string& name) {
    const auto& plain = r.lanes[lane_of(r, Method::kHypergraph)][0].recommendations;
    for (Method m : {Method::kHypergraphFair, Method::kHypergraphCoverage}) {
      o.require(r.lanes[lane_of(r, m)][0].recommendations == plain,
                std::string(to_string(m)) + " differs from hypergraph in round 1 on " + name);
    }
  };
  check(run.result, "default synthetic");
  std::size_t users = run.result.lanes[0][0].recommendations.size();
  for (std::uint64_t seed : {1, 2, 3}) {
    RunConfig c = testing::small_run();
    c.synthetic->seed = seed;
    c.methods = {Method::kHypergraph, Method::kHypergraphFair, Method::kHypergraphCoverage};
    const Dataset data = generate_synthetic(*c.synthetic);
    auto r = run_experiment(data, c);
    check(r, "small synthetic seed " + std::to_string(seed));
    users += r.lanes[0][0].recommendations.size();
  }
  if (o.pass) o.detail << "identical round-1 lists on 4 datasets (" << users << " user lists)";
  return o;
}

// --- AC5 -------------------------------------------------------------------

Outcome fairness_trend(const DefaultRun& run) {
  Outcome o;
  const auto& plain = row(run.result, Method::kHypergraph, 3);
  const auto& fair = row(run.result, Method::kHypergraphFair, 3);
  const double reduction = plain.spd > 0.0 ? (plain.spd - fair.spd) / plain.spd : 0.0;
  const double drop = (*plain.precision - *fair.precision) / *plain.precision;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "round 4: SPD %.4f -> %.4f (reduction %.1f%%, need >= 30%%), EAGF %.2f -> %.2f, "
                "precision %.4f -> %.4f (drop %.1f%%), run %.0f s",
                plain.spd, fair.spd, 100.0 * reduction, plain.eagf, fair.eagf, *plain.precision,
                *fair.precision, 100.0 * drop, run.seconds);
  o.require(fair.spd < plain.spd && reduction >= 0.30, "SPD reduction below 30%");
  o.require(fair.eagf >= plain.eagf, "EAGF decreased");
  o.require(drop <= 0.25, "precision drop above 25%");
  o.require(run.seconds < 300.0, "run took longer than 5 min");
  o.detail << (o.pass ? "" : " | ") << buf;
  return o;
}

// --- AC6 -------------------------------------------------------------------

Outcome coverage_degradation(const DefaultRun& run) {
  Outcome o;
  std::ostringstream values;
  for (std::size_t t = 2; t < run.result.rounds.size(); ++t) {
    const double fair = *row(run.result, Method::kHypergraphFair, t).precision;
    const double cov = *row(run.result, Method::kHypergraphCoverage, t).precision;
    o.require(cov < fair, "round " + std::to_string(t + 1) + ": coverage not below fair");
    values << " round " << t + 1 << ": " << cov << " < " << fair << ";";
  }
  o.detail << (o.pass ? "precision(coverage) vs precision(fair):" : " |") << values.str();
  return o;
}

// --- AC7 -------------------------------------------------------------------

Outcome diversity_trend(const DefaultRun& run) {
  Outcome o;
  const auto& plain = row(run.result, Method::kHypergraph, 3);
  const auto& div = row(run.result, Method::kHypergraphDiversified, 3);
  const double drop = (*plain.precision - *div.precision) / *plain.precision;
  o.require(div.covered_topics > plain.covered_topics, "covered topics not increased");
  o.require(drop <= 0.10, "precision drop above 10%");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "round 4: covered topics %.2f -> %.2f (+%.1f%%), precision drop %.1f%%",
                plain.covered_topics, div.covered_topics,
                100.0 * (div.covered_topics - plain.covered_topics) / plain.covered_topics,
                100.0 * drop);
  o.detail << (o.pass ? "" : " | ") << buf;
  return o;
}

// --- AC8 -------------------------------------------------------------------

// Recomputes every incremental quantity of `r` from its recommendation log.
void recount(const ExperimentResult& r, const Dataset& data, const std::string& name,
             Outcome& o, std::size_t& checked) {
  const ArticleCatalog& catalog = data.catalog;
  for (std::size_t m = 0; m < r.methods.size(); ++m) {
    const Method method = r.methods[m];
    std::vector<std::vector<ArticleIndex>> log;  // every list so far
    std::map<UserIndex, std::set<TopicIndex>> topics;
    for (std::size_t t = 0; t < r.rounds.size(); ++t) {
      const RoundData& round = r.rounds[t];
      const LaneRound& lane = r.lanes[m][t];
      const std::string where = name + " " + std::string(to_string(method)) + " round " +
                                std::to_string(t + 1);

      // c^{t-1}
      const auto c = oracle::recount_coverage(log, catalog);
      o.require(c == lane.coverage_before, where + ": coverage");

      // p^t
      std::map<AuthorIndex, std::size_t> mentions;
      for (const auto& p : round.train_pairs) {
        for (AuthorIndex a : catalog.articles[p.article].authors) ++mentions[a];
      }
      std::map<AuthorIndex, double> p;
      for (const auto& [a, n] : mentions) {
        p[a] = static_cast<double>(n) / static_cast<double>(round.train_pairs.size());
      }
      o.require(p == round.frequency, where + ": popularity");

      // w^t
      if ((method == Method::kHypergraphFair || method == Method::kHypergraphCoverage) && t > 0) {
        std::map<AuthorIndex, double> w;
        for (const auto& [a, pa] : p) {
          const auto it = c.find(a);
          w[a] = std::max(0.0, pa - (it == c.end() ? 0.0 : it->second));
        }
        o.require(w == lane.weights, where + ": weights");
      } else {
        o.require(lane.weights.empty(), where + ": unexpected weights");
      }

      // groups: descending mentions, ascending id, shortest prefix with >= 20%
      std::vector<std::pair<std::size_t, AuthorIndex>> ranked;
      std::size_t total = 0;
      for (const auto& [a, n] : mentions) {
        ranked.emplace_back(n, a);
        total += n;
      }
      std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
      });
      std::set<AuthorIndex> head, tail;
      std::size_t cumulative = 0;
      for (const auto& [n, a] : ranked) {
        if (cumulative * 5 < total) {
          head.insert(a);
          cumulative += n;
        } else {
          tail.insert(a);
        }
      }
      o.require(head == round.groups.short_head && tail == round.groups.long_tail,
                where + ": groups");

      // group counts over slot-author pairs
      std::size_t rec[2] = {0, 0}, train[2] = {0, 0};
      std::vector<std::vector<ArticleIndex>> lists;
      for (const auto& [u, list] : lane.recommendations) {
        lists.push_back(list);
        for (ArticleIndex art : list) {
          for (AuthorIndex a : catalog.articles[art].authors) {
            rec[0] += head.contains(a);
            rec[1] += tail.contains(a);
          }
        }
      }
      for (const auto& pair : round.train_pairs) {
        for (AuthorIndex a : catalog.articles[pair.article].authors) {
          train[0] += head.contains(a);
          train[1] += tail.contains(a);
        }
      }
      const MetricsRow& metrics = lane.metrics;
      o.require(metrics.recommended_by_group[0] == rec[0] &&
                    metrics.recommended_by_group[1] == rec[1],
                where + ": recommended group counts");
      o.require(round.training_by_group[0] == train[0] && round.training_by_group[1] == train[1],
                where + ": training group counts");

      o.require(metrics.eagf == std::sqrt(double(rec[0])) + std::sqrt(double(rec[1])),
                where + ": EAGF");

      // SPD as an exact fraction
      const long long rt = static_cast<long long>(rec[0] + rec[1]);
      const long long dt = static_cast<long long>(train[0] + train[1]);
      if (rt > 0 && dt > 0) {
        long long num = 0;
        for (int g = 0; g < 2; ++g) {
          num += std::llabs(static_cast<long long>(rec[g]) * dt -
                            static_cast<long long>(train[g]) * rt);
        }
        const double expected = static_cast<double>(num) / static_cast<double>(rt * dt * 2);
        o.require(metrics.spd == expected, where + ": SPD");
      }

      // precision over evaluated users
      if (!round.test.empty()) {
        double sum = 0.0;
        for (const auto& [u, hidden] : round.test) {
          auto it = lane.recommendations.find(u);
          if (it == lane.recommendations.end()) continue;
          std::size_t hits = 0;
          for (std::size_t i = 0; i < std::min(r.k, it->second.size()); ++i) {
            hits += hidden.contains(it->second[i]);
          }
          sum += static_cast<double>(hits) / static_cast<double>(r.k);
        }
        o.require(metrics.precision == sum / static_cast<double>(round.test.size()),
                  where + ": precision");
      } else {
        o.require(!metrics.precision, where + ": precision without evaluable users");
      }

      // topics over the whole log, averaged over users recommended this round
      double topic_sum = 0.0;
      for (const auto& [u, list] : lane.recommendations) {
        for (ArticleIndex art : list) {
          for (TopicIndex tp : catalog.articles[art].topics) topics[u].insert(tp);
        }
        topic_sum += static_cast<double>(topics[u].size());
      }
      const double covered = lane.recommendations.empty()
                                 ? 0.0
                                 : topic_sum / static_cast<double>(lane.recommendations.size());
      o.require(metrics.covered_topics == covered, where + ": covered topics");

      log.insert(log.end(), lists.begin(), lists.end());
      ++checked;
    }
    // final state equals the full log
    o.require(r.final_states[m].coverage.ratios() == oracle::recount_coverage(log, catalog),
              name + " " + std::string(to_string(method)) + ": final coverage");
  }
}

Outcome bookkeeping(const DefaultRun& run) {
  Outcome o;
  std::size_t checked = 0;
  recount(run.result, run.data, "default", o, checked);

  RunConfig c = testing::small_run();
  c.methods = {Method::kHypergraph,         Method::kHypergraphFair,
               Method::kHypergraphCoverage, Method::kHypergraphDiversified,
               Method::kPopularity,         Method::kRandom,
               Method::kCoverageReranking,  Method::kDiversityReranking};
  const Dataset small = generate_synthetic(*c.synthetic);
  recount(run_experiment(small, c), small, "small", o, checked);
  if (o.pass) {
    o.detail << "c, p, w, groups, EAGF, SPD, precision and covered topics recounted exactly for "
             << checked << " (method, round) cells over 2 runs";
  }
  return o;
}

// --- AC9 -------------------------------------------------------------------

Outcome determinism(const DefaultRun& run) {
  Outcome o;
  testing::TempDir dir;
  write_metrics_csv(run.result, dir / "first.csv");
  const auto second = run_experiment(generate_synthetic(*run.config.synthetic), run.config);
  write_metrics_csv(second, dir / "second.csv");
  const std::string a = testing::read_file(dir / "first.csv");
  const std::string b = testing::read_file(dir / "second.csv");
  o.require(!a.empty() && a == b, "metrics.csv differs between runs");
  if (o.pass) o.detail << "two default runs, metrics.csv byte-identical (" << a.size() << " bytes)";
  return o;
}

std::set<std::string> parse_expected(int argc, char** argv) {
  std::set<std::string> out;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") != 0) continue;
    std::stringstream list(argv[i + 1]);
    std::string name;
    while (std::getline(list, name, ',')) {
      if (!name.empty()) out.insert(name);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::err);
  const std::set<std::string> expected = parse_expected(argc, argv);
  std::set<std::string> failed;

  auto report = [&](const std::string& name, const std::string& title, Outcome o) {
    std::printf("%s %s: %s: %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", title.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) failed.insert(name);
  };
  auto guarded = [&](const std::string& name, const std::string& title,
                     const std::function<Outcome()>& fn) {
    try {
      report(name, title, fn());
    } catch (const std::exception& e) {
      Outcome o;
      o.require(false, std::string("exception: ") + e.what());
      report(name, title, std::move(o));
    }
  };

  guarded("AC1", "adjacency correctness", adjacency_correctness);
  guarded("AC2", "solver correctness", solver_correctness);
  guarded("AC3", "metric unit values", metric_values);

  DefaultRun run;
  run.config = default_config();
  const auto start = Clock::now();
  run.data = generate_synthetic(*run.config.synthetic);
  run.result = run_experiment(run.data, run.config);
  run.seconds = seconds_since(start);

  guarded("AC4", "round-1 equivalence", [&] { return round_one_equivalence(run); });
  guarded("AC5", "fairness trend", [&] { return fairness_trend(run); });
  guarded("AC6", "coverage-only degradation", [&] { return coverage_degradation(run); });
  guarded("AC7", "diversity trend", [&] { return diversity_trend(run); });
  guarded("AC8", "coverage bookkeeping", [&] { return bookkeeping(run); });
  guarded("AC9", "determinism", [&] { return determinism(run); });

  std::printf("%zu of 9 criteria pass\n", 9 - failed.size());
  for (const auto& name : expected) {
    if (!failed.contains(name)) std::printf("note: %s was expected to fail but passed\n", name.c_str());
  }
  for (const auto& name : failed) {
    if (!expected.contains(name)) return 1;
  }
  return 0;
}

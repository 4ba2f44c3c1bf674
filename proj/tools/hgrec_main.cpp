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

// Command line front end: synth, simulate, recommend, report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hgrec/config.hpp"
#include "hgrec/data_io.hpp"
#include "hgrec/diversity.hpp"
#include "hgrec/error.hpp"
#include "hgrec/fairness.hpp"
#include "hgrec/graph_builder.hpp"
#include "hgrec/ranker.hpp"
#include "hgrec/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

int exit_code(const hgrec::Error& e) {
  switch (hgrec::category_of(e.code())) {
    case hgrec::ErrorCategory::kConfig: return kExitConfig;
    case hgrec::ErrorCategory::kData: return kExitData;
    case hgrec::ErrorCategory::kRuntime: return kExitRuntime;
  }
  return kExitRuntime;
}

hgrec::Dataset load_data(const hgrec::RunConfig& config) {
  if (config.events) {
    hgrec::LoadReport report;
    auto data = hgrec::load(*config.events, *config.articles, &report);
    spdlog::info("loaded {} events ({} dangling dropped), {} users, {} articles",
                 data.log.events.size(), report.dangling_dropped, data.num_users(),
                 data.catalog.num_articles());
    return data;
  }
  return hgrec::generate_synthetic(*config.synthetic);
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::vector<std::string> methods;
  std::optional<double> theta;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> k;
};

int simulate(const SimulateArgs& args) {
  hgrec::RunConfig config = hgrec::load_config(args.config);
  if (!args.out.empty()) config.out = args.out;
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const auto& name : args.methods) {
      auto m = hgrec::parse_method(name);
      if (!m) throw hgrec::Error(hgrec::Errc::kConfigError, "unknown method '" + name + "'");
      config.methods.push_back(*m);
    }
  }
  if (args.theta) {
    config.solver.theta = *args.theta;
    config.theta_grid.clear();
  }
  if (args.seed) config.seed = *args.seed;
  if (args.rounds) config.rounds = *args.rounds;
  if (args.k) config.k = *args.k;
  if (!config.out) throw hgrec::Error(hgrec::Errc::kConfigError, "no output directory");
  hgrec::validate(config);

  const fs::path dir = *config.out;
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "config.json");
    out << hgrec::config_to_json(config).dump(2) << '\n';
  }
  const hgrec::Dataset data = load_data(config);
  const auto result = hgrec::run_experiment(data, config);
  hgrec::write_outputs(result, data, dir);
  std::cout << hgrec::render_report(hgrec::read_metrics_csv(dir / "metrics.csv"));
  return kExitOk;
}

struct RecommendArgs {
  std::string config;
  std::string user;
  std::string mode = "plain";
  std::string state;
  bool exclude_seen = true;
  bool as_json = false;
  std::optional<std::size_t> k;
};

int recommend(const RecommendArgs& args) {
  hgrec::RunConfig config = hgrec::load_config(args.config);
  if (args.k) config.k = *args.k;
  hgrec::validate(config);
  const hgrec::Dataset data = load_data(config);

  std::optional<hgrec::UserIndex> user;
  for (std::size_t u = 0; u < data.user_names.size(); ++u) {
    if (data.user_names[u] == args.user) user = u;
  }
  if (!user) throw hgrec::Error(hgrec::Errc::kUnknownUser, args.user);

  const hgrec::Hypergraph h = hgrec::assemble(data.log.events, data.catalog, config.graph);
  const auto pairs = hgrec::unique_pairs(data.log.events);

  // Lane state written by `simulate`, if given.
  json lane = json::object();
  const std::string lane_name = args.mode == "plain"        ? "hypergraph"
                                : args.mode == "fair"       ? "hypergraph_fair"
                                : args.mode == "coverage"   ? "hypergraph_coverage"
                                                            : "hypergraph_diversified";
  if (!args.state.empty()) {
    std::ifstream in(args.state);
    if (!in) throw hgrec::Error(hgrec::Errc::kIoError, "cannot open " + args.state);
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw hgrec::Error(hgrec::Errc::kParseError, args.state);
    if (doc.contains("methods") && doc["methods"].contains(lane_name)) {
      lane = doc["methods"][lane_name];
    } else {
      spdlog::warn("state file has no '{}' lane; starting from empty state", lane_name);
    }
  }

  hgrec::QueryVector query(h.num_vertices());
  if (args.mode == "plain") {
    query = hgrec::build_adapted_query(h, *user, {}, nullptr, hgrec::AdaptationMode::kPlain);
  } else if (args.mode == "fair" || args.mode == "coverage") {
    std::map<hgrec::AuthorIndex, std::size_t> slots;
    if (lane.contains("author_slots")) {
      for (std::size_t a = 0; a < data.catalog.num_authors(); ++a) {
        const auto& name = data.catalog.author_names[a];
        if (lane["author_slots"].contains(name)) slots[a] = lane["author_slots"][name].get<std::size_t>();
      }
    }
    const auto coverage = hgrec::CoverageState::from_counts(
        slots, lane.value("total_slots", std::size_t{0}));
    const auto weights =
        hgrec::coverage_weights({hgrec::author_frequency(pairs, data.catalog), coverage.ratios()});
    if (args.mode == "fair") {
      const auto relevance = hgrec::author_relevance(h, *user, config.solver, config.relevance);
      query = hgrec::build_adapted_query(h, *user, weights, &relevance,
                                         hgrec::AdaptationMode::kFair);
    } else {
      query = hgrec::build_adapted_query(h, *user, weights, nullptr,
                                         hgrec::AdaptationMode::kCoverageOnly);
    }
  } else if (args.mode == "diversified") {
    std::set<hgrec::TopicIndex> history;
    if (lane.contains("topics") && lane["topics"].contains(args.user)) {
      std::map<std::string, hgrec::TopicIndex> topic_ids;
      for (std::size_t t = 0; t < data.catalog.num_topics(); ++t) {
        topic_ids[data.catalog.topic_names[t]] = t;
      }
      for (const auto& name : lane["topics"][args.user]) {
        auto it = topic_ids.find(name.get<std::string>());
        if (it != topic_ids.end()) history.insert(it->second);
      }
    }
    query = hgrec::diversify_query(h, *user, history, config.diversity.n_samples,
                                   config.diversity.weight, config.seed);
  } else {
    throw hgrec::Error(hgrec::Errc::kConfigError, "unknown mode '" + args.mode + "'");
  }

  const hgrec::ScoreVector f = hgrec::solve(h, query, config.solver);
  std::set<std::size_t> exclude;
  if (args.exclude_seen) {
    for (const auto& p : pairs) {
      if (p.user == *user) exclude.insert(*h.find(hgrec::VertexKind::kArticle, p.article));
    }
  }
  auto ranked = hgrec::extract_scores(h, f, hgrec::VertexKind::kArticle, exclude);
  if (ranked.size() > config.k) ranked.resize(config.k);

  if (args.as_json) {
    json items = json::array();
    for (const auto& r : ranked) {
      items.push_back({{"article", data.catalog.article_names[r.vertex.index]}, {"score", r.score}});
    }
    std::cout << json{{"user", args.user}, {"mode", args.mode}, {"recommendations", items}}.dump()
              << '\n';
  } else {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      std::cout << i + 1 << '\t' << data.catalog.article_names[ranked[i].vertex.index] << '\t'
                << ranked[i].score << '\n';
    }
  }
  return kExitOk;
}

int report(const std::string& dir) {
  const auto records = hgrec::read_metrics_csv(fs::path(dir) / "metrics.csv");
  const std::string text = hgrec::render_report(records);
  std::ofstream(fs::path(dir) / "report.md") << text;
  std::cout << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("hgrec");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("HGREC_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }

  CLI::App app{"Hypergraph news recommender with author coverage re-weighting"};
  app.require_subcommand(1);

  hgrec::SynthConfig synth;
  std::string synth_out = ".";
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic events/articles pair");
  synth_cmd->add_option("--users", synth.n_users)->capture_default_str();
  synth_cmd->add_option("--articles", synth.n_articles)->capture_default_str();
  synth_cmd->add_option("--authors", synth.n_authors)->capture_default_str();
  synth_cmd->add_option("--topics", synth.n_topics)->capture_default_str();
  synth_cmd->add_option("--days", synth.timespan_days)->capture_default_str();
  synth_cmd->add_option("--exponent", synth.popularity_exponent)->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output directory")->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the simulated rounds");
  sim_cmd->add_option("--config", sim.config, "JSON run configuration")->required();
  sim_cmd->add_option("--out", sim.out, "Output directory (overrides config)");
  sim_cmd->add_option("--methods", sim.methods, "Methods to run (overrides config)")
      ->delimiter(',');
  sim_cmd->add_option("--theta", sim.theta);
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--rounds", sim.rounds);
  sim_cmd->add_option("-k,--k", sim.k);

  RecommendArgs rec;
  auto* rec_cmd = app.add_subcommand("recommend", "Top-k articles for one user");
  rec_cmd->add_option("--config", rec.config, "JSON run configuration")->required();
  rec_cmd->add_option("--user", rec.user, "User id")->required();
  rec_cmd->add_option("--mode", rec.mode)
      ->check(CLI::IsMember({"plain", "fair", "coverage", "diversified"}))
      ->capture_default_str();
  rec_cmd->add_option("--state", rec.state, "state.json from a simulate run");
  rec_cmd->add_option("--exclude-seen", rec.exclude_seen)->capture_default_str();
  rec_cmd->add_flag("--json", rec.as_json);
  rec_cmd->add_option("-k,--k", rec.k);

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Summarize metrics.csv of a run");
  report_cmd->add_option("--out,dir", report_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*synth_cmd) {
      fs::create_directories(synth_out);
      const auto data = hgrec::generate_synthetic(synth);
      hgrec::write_events(fs::path(synth_out) / "events.jsonl", data);
      hgrec::write_articles(fs::path(synth_out) / "articles.jsonl", data.catalog);
      std::cout << data.log.events.size() << " events, " << data.num_users() << " users, "
                << data.catalog.num_articles() << " articles written to " << synth_out << '\n';
      return kExitOk;
    }
    if (*sim_cmd) return simulate(sim);
    if (*rec_cmd) return recommend(rec);
    if (*report_cmd) return report(report_dir);
  } catch (const hgrec::Error& e) {
    spdlog::error("{}", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

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

#include "hgrec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "hgrec/error.hpp"

namespace hgrec {

using nlohmann::json;

namespace {

constexpr std::string_view kMethodNames[] = {
    "hypergraph",  "hypergraph_fair", "hypergraph_coverage", "hypergraph_diversified",
    "popularity",  "random",          "coverage_reranking",  "diversity_reranking",
};

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::kConfigError, what); }

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(std::string("invalid value for '") + key + "'");
  }
}

std::size_t get_count(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    config_error(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

void reject_unknown(const json& doc, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) config_error("unknown key '" + key + "' in " + std::string(where));
  }
}

}  // namespace

std::string_view to_string(Method method) { return kMethodNames[static_cast<std::size_t>(method)]; }

std::optional<Method> parse_method(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kMethodNames); ++i) {
    if (kMethodNames[i] == name) return static_cast<Method>(i);
  }
  return std::nullopt;
}

json synth_to_json(const SynthConfig& c) {
  return {{"users", c.n_users},
          {"articles", c.n_articles},
          {"authors", c.n_authors},
          {"topics", c.n_topics},
          {"days", c.timespan_days},
          {"exponent", c.popularity_exponent},
          {"seed", c.seed},
          {"embedding_dim", c.embedding_dim},
          {"heavy_user_share", c.heavy_user_share},
          {"heavy_daily_reads", c.heavy_daily_reads},
          {"light_daily_reads", c.light_daily_reads},
          {"output_share", c.output_share},
          {"start", c.start}};
}

SynthConfig synth_from_json(const json& doc) {
  if (!doc.is_object()) config_error("'synthetic' must be an object");
  reject_unknown(doc,
                 {"users", "articles", "authors", "topics", "days", "exponent", "seed",
                  "embedding_dim", "heavy_user_share", "heavy_daily_reads", "light_daily_reads",
                  "output_share", "start"},
                 "synthetic");
  SynthConfig c;
  if (doc.contains("users")) c.n_users = get_count(doc, "users");
  if (doc.contains("articles")) c.n_articles = get_count(doc, "articles");
  if (doc.contains("authors")) c.n_authors = get_count(doc, "authors");
  if (doc.contains("topics")) c.n_topics = get_count(doc, "topics");
  if (doc.contains("days")) c.timespan_days = get_count(doc, "days");
  if (doc.contains("exponent")) c.popularity_exponent = get_as<double>(doc, "exponent");
  if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("embedding_dim")) c.embedding_dim = get_count(doc, "embedding_dim");
  if (doc.contains("heavy_user_share")) c.heavy_user_share = get_as<double>(doc, "heavy_user_share");
  if (doc.contains("heavy_daily_reads")) {
    c.heavy_daily_reads = get_as<double>(doc, "heavy_daily_reads");
  }
  if (doc.contains("light_daily_reads")) {
    c.light_daily_reads = get_as<double>(doc, "light_daily_reads");
  }
  if (doc.contains("output_share")) c.output_share = get_as<double>(doc, "output_share");
  if (doc.contains("start")) c.start = get_as<Timestamp>(doc, "start");
  return c;
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) config_error("configuration must be a JSON object");
  reject_unknown(doc,
                 {"events", "articles", "synthetic", "edges", "knn_k_users", "knn_k_articles",
                  "theta", "theta_grid", "solver", "tol", "max_iters", "methods", "k", "rounds",
                  "holdout", "rerank_pool", "relevance", "diversity", "seed", "out"},
                 "configuration");
  RunConfig c;
  if (doc.contains("events")) c.events = get_as<std::string>(doc, "events");
  if (doc.contains("articles")) c.articles = get_as<std::string>(doc, "articles");
  if (doc.contains("synthetic")) c.synthetic = synth_from_json(doc.at("synthetic"));
  if (doc.contains("edges")) {
    c.graph.edges.clear();
    for (const auto& name : get_as<std::vector<std::string>>(doc, "edges")) {
      auto kind = parse_hyperedge_kind(name);
      if (!kind) config_error("unknown hyperedge kind '" + name + "'");
      c.graph.edges.insert(*kind);
    }
  }
  if (doc.contains("knn_k_users")) c.graph.knn_k_users = get_count(doc, "knn_k_users");
  if (doc.contains("knn_k_articles")) c.graph.knn_k_articles = get_count(doc, "knn_k_articles");
  if (doc.contains("theta")) {
    c.solver.theta = get_as<double>(doc, "theta");
    c.theta_grid.clear();  // a fixed theta turns the sweep off unless a grid is given too
  }
  if (doc.contains("theta_grid")) c.theta_grid = get_as<std::vector<double>>(doc, "theta_grid");
  if (doc.contains("solver")) {
    const auto name = get_as<std::string>(doc, "solver");
    if (name == "iterative") {
      c.solver.method = SolverMethod::kIterative;
    } else if (name == "direct") {
      c.solver.method = SolverMethod::kDirect;
    } else {
      config_error("solver must be 'iterative' or 'direct'");
    }
  }
  if (doc.contains("tol")) c.solver.tol = get_as<double>(doc, "tol");
  if (doc.contains("max_iters")) c.solver.max_iters = get_count(doc, "max_iters");
  if (doc.contains("methods")) {
    c.methods.clear();
    for (const auto& name : get_as<std::vector<std::string>>(doc, "methods")) {
      auto m = parse_method(name);
      if (!m) config_error("unknown method '" + name + "'");
      c.methods.push_back(*m);
    }
  }
  if (doc.contains("k")) c.k = get_count(doc, "k");
  if (doc.contains("rounds")) c.rounds = get_count(doc, "rounds");
  if (doc.contains("holdout")) c.holdout = get_count(doc, "holdout");
  if (doc.contains("rerank_pool")) c.rerank_pool = get_count(doc, "rerank_pool");
  if (doc.contains("relevance")) {
    const auto name = get_as<std::string>(doc, "relevance");
    if (name == "minmax") {
      c.relevance = RelevanceNormalization::kMinMax;
    } else if (name == "sum") {
      c.relevance = RelevanceNormalization::kSumToOne;
    } else {
      config_error("relevance must be 'minmax' or 'sum'");
    }
  }
  if (doc.contains("diversity")) {
    const json& d = doc.at("diversity");
    if (!d.is_object()) config_error("'diversity' must be an object");
    reject_unknown(d, {"n_samples", "weight"}, "diversity");
    if (d.contains("n_samples")) c.diversity.n_samples = get_count(d, "n_samples");
    if (d.contains("weight")) c.diversity.weight = get_as<double>(d, "weight");
  }
  if (doc.contains("seed")) c.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("out")) c.out = get_as<std::string>(doc, "out");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error(path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

json config_to_json(const RunConfig& c) {
  json doc;
  if (c.events) doc["events"] = c.events->string();
  if (c.articles) doc["articles"] = c.articles->string();
  if (c.synthetic) doc["synthetic"] = synth_to_json(*c.synthetic);
  json edges = json::array();
  for (HyperedgeKind kind : c.graph.edges) edges.push_back(std::string(to_string(kind)));
  doc["edges"] = edges;
  doc["knn_k_users"] = c.graph.knn_k_users;
  doc["knn_k_articles"] = c.graph.knn_k_articles;
  doc["theta"] = c.solver.theta;
  doc["theta_grid"] = c.theta_grid;
  doc["solver"] = c.solver.method == SolverMethod::kDirect ? "direct" : "iterative";
  doc["tol"] = c.solver.tol;
  doc["max_iters"] = c.solver.max_iters;
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(std::string(to_string(m)));
  doc["methods"] = methods;
  doc["k"] = c.k;
  doc["rounds"] = c.rounds;
  doc["holdout"] = c.holdout;
  doc["rerank_pool"] = c.rerank_pool;
  doc["relevance"] = c.relevance == RelevanceNormalization::kMinMax ? "minmax" : "sum";
  doc["diversity"] = {{"n_samples", c.diversity.n_samples}, {"weight", c.diversity.weight}};
  doc["seed"] = c.seed;
  if (c.out) doc["out"] = c.out->string();
  return doc;
}

void validate(const RunConfig& c, bool require_data) {
  if (require_data) {
    if (c.events.has_value() != c.articles.has_value()) {
      config_error("'events' and 'articles' must be given together");
    }
    if (!c.events && !c.synthetic) config_error("no data: give events/articles or 'synthetic'");
    if (c.events) {
      for (const auto& p : {*c.events, *c.articles}) {
        if (!std::filesystem::exists(p)) config_error("missing data file " + p.string());
      }
    }
  }
  if (c.graph.edges.empty()) config_error("'edges' selects no hyperedge kind");
  if (c.graph.knn_k_users == 0 || c.graph.knn_k_articles == 0) config_error("kNN k must be >= 1");
  if (!(c.solver.theta > 0.0) || !std::isfinite(c.solver.theta)) config_error("theta must be > 0");
  for (double t : c.theta_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) config_error("theta_grid values must be > 0");
  }
  if (!(c.solver.tol > 0.0)) config_error("tol must be > 0");
  if (c.solver.max_iters == 0) config_error("max_iters must be >= 1");
  if (c.methods.empty()) config_error("method list is empty");
  std::set<Method> unique(c.methods.begin(), c.methods.end());
  if (unique.size() != c.methods.size()) config_error("method listed twice");
  if (c.k == 0) config_error("k must be >= 1");
  if (c.rounds == 0) config_error("rounds must be >= 1");
  if (c.rerank_pool != 0 && c.rerank_pool < c.k) config_error("rerank_pool must be >= k");
  if (c.diversity.weight < 0.0 || !std::isfinite(c.diversity.weight)) {
    config_error("diversity.weight must be >= 0");
  }
  if (c.synthetic) {
    const auto& s = *c.synthetic;
    if (s.n_users == 0 || s.n_articles == 0 || s.n_authors == 0 || s.n_topics == 0 ||
        s.timespan_days == 0) {
      config_error("synthetic sizes must be >= 1");
    }
  }
}

}  // namespace hgrec

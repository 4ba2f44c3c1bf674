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

#include "hgrec/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "hgrec/error.hpp"
#include "hgrec/random.hpp"

namespace hgrec {
namespace {

using nlohmann::json;

class Interner {
 public:
  std::size_t id(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(names_); }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> names_;
};

std::string line_context(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::string require_id(const json& obj, const char* key, const std::filesystem::path& path,
                       std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !(it->is_string() || it->is_number_integer())) {
    throw Error(Errc::kParseError, line_context(path, line) + ": missing '" + key + "'");
  }
  std::string id = it->is_string() ? it->get<std::string>() : std::to_string(it->get<long long>());
  if (id.empty()) throw Error(Errc::kParseError, line_context(path, line) + ": empty '" + key + "'");
  return id;
}

std::vector<std::string> string_list(const json& obj, const char* key,
                                     const std::filesystem::path& path, std::size_t line) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) {
    throw Error(Errc::kParseError, line_context(path, line) + ": '" + key + "' is not a list");
  }
  for (const json& v : *it) {
    if (!v.is_string()) {
      throw Error(Errc::kParseError, line_context(path, line) + ": '" + key + "' holds non-string");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(Errc::kParseError, line_context(path, line) + ": " + e.what());
    }
    if (!obj.is_object()) throw Error(Errc::kParseError, line_context(path, line) + ": not an object");
    fn(obj, line);
  }
}

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (text.empty()) return std::nullopt;
  {
    Timestamp epoch = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), epoch);
    if (ec == std::errc{} && p == text.data() + text.size()) return epoch;
  }
  // YYYY-MM-DD[THH:MM:SS[.fff]][Z|+HH:MM|-HH:MM]
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!parse_int(text.substr(0, 4), year) || !parse_int(text.substr(5, 2), month) ||
      !parse_int(text.substr(8, 2), day)) {
    return std::nullopt;
  }
  std::string_view rest = text.substr(10);
  if (!rest.empty() && (rest[0] == 'T' || rest[0] == ' ')) {
    if (rest.size() < 9 || rest[3] != ':' || rest[6] != ':') return std::nullopt;
    if (!parse_int(rest.substr(1, 2), hour) || !parse_int(rest.substr(4, 2), minute) ||
        !parse_int(rest.substr(7, 2), second)) {
      return std::nullopt;
    }
    rest = rest.substr(9);
    if (!rest.empty() && rest[0] == '.') {
      std::size_t n = 1;
      while (n < rest.size() && rest[n] >= '0' && rest[n] <= '9') ++n;
      if (n == 1) return std::nullopt;
      rest = rest.substr(n);
    }
  }
  int offset = 0;
  if (rest == "Z") {
    rest = {};
  } else if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
    int oh = 0, om = 0;
    if (rest.size() != 6 || rest[3] != ':' || !parse_int(rest.substr(1, 2), oh) ||
        !parse_int(rest.substr(4, 2), om)) {
      return std::nullopt;
    }
    offset = (rest[0] == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    rest = {};
  }
  if (!rest.empty()) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return static_cast<Timestamp>(days) * kSecondsPerDay + hour * 3600 + minute * 60 + second -
         offset;
}

std::string format_timestamp(Timestamp t) {
  const Timestamp days = t >= 0 ? t / kSecondsPerDay : (t - kSecondsPerDay + 1) / kSecondsPerDay;
  const Timestamp secs = t - days * kSecondsPerDay;
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{static_cast<int>(days)}}};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), static_cast<long long>(secs / 3600),
                static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
  return buf;
}

Dataset load(const std::filesystem::path& events_path, const std::filesystem::path& articles_path,
             LoadReport* report) {
  Dataset data;
  Interner articles, authors, topics, tags;
  std::optional<std::size_t> embedding_dim;

  for_each_line(articles_path, [&](const json& obj, std::size_t line) {
    const std::string id = require_id(obj, "article_id", articles_path, line);
    const std::size_t index = articles.id(id);
    if (index < data.catalog.articles.size()) {
      throw Error(Errc::kParseError,
                  line_context(articles_path, line) + ": duplicate article '" + id + "'");
    }
    Article art;
    for (const auto& a : string_list(obj, "authors", articles_path, line)) {
      art.authors.push_back(authors.id(a));
    }
    for (const auto& t : string_list(obj, "topics", articles_path, line)) {
      art.topics.push_back(topics.id(t));
    }
    for (const auto& t : string_list(obj, "iptc_tags", articles_path, line)) {
      art.iptc_tags.push_back(tags.id(t));
    }
    if (auto it = obj.find("embedding"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) {
        throw Error(Errc::kParseError, line_context(articles_path, line) + ": bad embedding");
      }
      std::vector<double> emb;
      for (const json& v : *it) {
        if (!v.is_number()) {
          throw Error(Errc::kParseError, line_context(articles_path, line) + ": bad embedding");
        }
        emb.push_back(v.get<double>());
      }
      if (embedding_dim && *embedding_dim != emb.size()) {
        throw Error(Errc::kParseError, line_context(articles_path, line) +
                                           ": embedding length " + std::to_string(emb.size()) +
                                           " != " + std::to_string(*embedding_dim));
      }
      embedding_dim = emb.size();
      art.embedding = std::move(emb);
    }
    data.catalog.articles.push_back(std::move(art));
  });

  std::unordered_map<std::string, std::size_t> article_index;
  auto article_names = articles.take();
  for (std::size_t i = 0; i < article_names.size(); ++i) article_index[article_names[i]] = i;

  Interner users;
  LoadReport local;
  for_each_line(events_path, [&](const json& obj, std::size_t line) {
    const std::string user = require_id(obj, "user_id", events_path, line);
    const std::string article = require_id(obj, "article_id", events_path, line);
    auto ts_it = obj.find("timestamp");
    std::optional<Timestamp> ts;
    if (ts_it != obj.end()) {
      if (ts_it->is_number_integer()) {
        ts = ts_it->get<Timestamp>();
      } else if (ts_it->is_string()) {
        ts = parse_timestamp(ts_it->get<std::string>());
      }
    }
    if (!ts) throw Error(Errc::kParseError, line_context(events_path, line) + ": bad timestamp");
    ++local.events_read;
    auto a = article_index.find(article);
    if (a == article_index.end()) {
      ++local.dangling_dropped;
      return;
    }
    data.log.events.push_back({users.id(user), a->second, *ts});
  });
  if (local.dangling_dropped > 0) {
    spdlog::warn("DanglingArticle: dropped {} events referencing unknown articles",
                 local.dangling_dropped);
  }
  std::stable_sort(data.log.events.begin(), data.log.events.end(),
                   [](const Interaction& x, const Interaction& y) { return x.timestamp < y.timestamp; });

  data.user_names = users.take();
  data.catalog.article_names = std::move(article_names);
  data.catalog.author_names = authors.take();
  data.catalog.topic_names = topics.take();
  data.catalog.tag_names = tags.take();
  if (report) *report = local;
  return data;
}

void write_events(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  for (const Interaction& ev : data.log.events) {
    json obj = {{"user_id", data.user_names.at(ev.user)},
                {"article_id", data.catalog.article_names.at(ev.article)},
                {"timestamp", ev.timestamp}};
    out << obj.dump() << '\n';
  }
}

void write_articles(const std::filesystem::path& path, const ArticleCatalog& catalog) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  for (std::size_t i = 0; i < catalog.articles.size(); ++i) {
    const Article& art = catalog.articles[i];
    json obj;
    obj["article_id"] = catalog.article_names.at(i);
    auto names = [](const std::vector<std::size_t>& ids, const std::vector<std::string>& table) {
      json list = json::array();
      for (std::size_t id : ids) list.push_back(table.at(id));
      return list;
    };
    obj["authors"] = names(art.authors, catalog.author_names);
    obj["topics"] = names(art.topics, catalog.topic_names);
    if (!art.iptc_tags.empty()) obj["iptc_tags"] = names(art.iptc_tags, catalog.tag_names);
    if (art.embedding) obj["embedding"] = *art.embedding;
    out << obj.dump() << '\n';
  }
}

Dataset canonicalize(Dataset data) {
  auto relabel = [](std::vector<std::size_t>& ids, std::vector<std::size_t>& map,
                    std::vector<std::string>& names_out, const std::vector<std::string>& names) {
    for (std::size_t& id : ids) {
      if (map[id] == SIZE_MAX) {
        map[id] = names_out.size();
        names_out.push_back(names[id]);
      }
      id = map[id];
    }
  };
  std::vector<std::size_t> author_map(data.catalog.num_authors(), SIZE_MAX);
  std::vector<std::size_t> topic_map(data.catalog.num_topics(), SIZE_MAX);
  std::vector<std::size_t> tag_map(data.catalog.num_tags(), SIZE_MAX);
  std::vector<std::string> authors, topics, tags;
  for (Article& art : data.catalog.articles) {
    relabel(art.authors, author_map, authors, data.catalog.author_names);
    relabel(art.topics, topic_map, topics, data.catalog.topic_names);
    relabel(art.iptc_tags, tag_map, tags, data.catalog.tag_names);
  }
  data.catalog.author_names = std::move(authors);
  data.catalog.topic_names = std::move(topics);
  data.catalog.tag_names = std::move(tags);

  std::stable_sort(data.log.events.begin(), data.log.events.end(),
                   [](const Interaction& x, const Interaction& y) { return x.timestamp < y.timestamp; });
  std::vector<std::size_t> user_map(data.num_users(), SIZE_MAX);
  std::vector<std::string> users;
  for (Interaction& ev : data.log.events) {
    if (user_map[ev.user] == SIZE_MAX) {
      user_map[ev.user] = users.size();
      users.push_back(data.user_names[ev.user]);
    }
    ev.user = user_map[ev.user];
  }
  data.user_names = std::move(users);
  return data;
}

namespace {

std::size_t poisson(Rng& rng, double mean) {
  // Knuth's multiplication method; means here stay small.
  const double limit = std::exp(-mean);
  std::size_t k = 0;
  double product = rng.uniform();
  while (product > limit) {
    ++k;
    product *= rng.uniform();
  }
  return k;
}

std::vector<double> cumulative_of(const std::vector<double>& weights) {
  std::vector<double> cum(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cum.begin());
  return cum;
}

// Distinct draws from a weighted population.
std::vector<std::size_t> distinct_weighted(Rng& rng, const std::vector<double>& cumulative,
                                           std::size_t count) {
  std::set<std::size_t> picked;
  count = std::min(count, cumulative.size());
  while (picked.size() < count) picked.insert(rng.weighted(cumulative));
  std::vector<std::size_t> out;
  // draw order is irrelevant downstream; keep ascending for stable output
  out.assign(picked.begin(), picked.end());
  return out;
}

}  // namespace

Dataset generate_synthetic(const SynthConfig& config) {
  if (config.n_users == 0 || config.n_articles == 0 || config.n_authors == 0 ||
      config.n_topics == 0 || config.timespan_days == 0) {
    throw Error(Errc::kInvalidArgument, "synthetic dataset sizes must be >= 1");
  }
  Rng rng(config.seed);
  Dataset data;
  ArticleCatalog& cat = data.catalog;
  const Timestamp span = static_cast<Timestamp>(config.timespan_days) * kSecondsPerDay;
  const Timestamp end = config.start + span;

  std::vector<double> author_output(config.n_authors), author_pull(config.n_authors);
  for (std::size_t a = 0; a < config.n_authors; ++a) {
    const double rank = static_cast<double>(a + 1);
    author_output[a] = std::pow(rank, -config.popularity_exponent * config.output_share);
    author_pull[a] = std::pow(rank, -config.popularity_exponent * (1.0 - config.output_share));
    cat.author_names.push_back("author" + std::to_string(a));
  }
  const auto output_cum = cumulative_of(author_output);
  std::vector<double> topic_weight(config.n_topics);
  for (std::size_t t = 0; t < config.n_topics; ++t) {
    topic_weight[t] = std::pow(static_cast<double>(t + 1), -0.8);
    cat.topic_names.push_back("topic" + std::to_string(t));
  }
  const auto topic_cum = cumulative_of(topic_weight);

  const std::size_t dim = config.embedding_dim;
  auto gaussian_vector = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    return v;
  };
  std::vector<std::vector<double>> topic_vec(config.n_topics), author_vec(config.n_authors);
  for (auto& v : topic_vec) v = gaussian_vector(dim);
  for (auto& v : author_vec) v = gaussian_vector(dim);

  // Articles: every author writes at least one; 15% get a second author.
  std::vector<Timestamp> published(config.n_articles);
  for (std::size_t i = 0; i < config.n_articles; ++i) {
    Article art;
    const std::size_t first = i < config.n_authors ? i : rng.weighted(output_cum);
    art.authors.push_back(first);
    if (config.n_authors > 1 && rng.uniform() < 0.15) {
      std::size_t second = rng.below(config.n_authors - 1);
      if (second >= first) ++second;
      art.authors.push_back(second);
    }
    art.topics = distinct_weighted(rng, topic_cum, 1 + rng.below(5));
    std::vector<double> emb(dim, 0.0);
    for (std::size_t t : art.topics) {
      for (std::size_t d = 0; d < dim; ++d) emb[d] += topic_vec[t][d];
    }
    for (std::size_t d = 0; d < dim; ++d) emb[d] += 0.5 * author_vec[first][d] + 0.3 * rng.normal();
    if (dim > 0) art.embedding = std::move(emb);
    published[i] = config.start - kSecondsPerDay +
                   static_cast<Timestamp>(rng.uniform() * static_cast<double>(span));
    cat.article_names.push_back("article" + std::to_string(i));
    cat.articles.push_back(std::move(art));
  }
  std::vector<std::size_t> by_time(config.n_articles);
  std::iota(by_time.begin(), by_time.end(), std::size_t{0});
  std::stable_sort(by_time.begin(), by_time.end(),
                   [&](std::size_t x, std::size_t y) { return published[x] < published[y]; });

  // Users: topic preferences and a heavy/light activity level.
  struct Reader {
    std::set<std::size_t> likes;
    double daily_reads = 0.0;
  };
  std::vector<Reader> readers(config.n_users);
  for (std::size_t u = 0; u < config.n_users; ++u) {
    auto prefs = distinct_weighted(rng, topic_cum, 3 + rng.below(6));
    readers[u].likes.insert(prefs.begin(), prefs.end());
    readers[u].daily_reads = rng.uniform() < config.heavy_user_share ? config.heavy_daily_reads
                                                                     : config.light_daily_reads;
    data.user_names.push_back("user" + std::to_string(u));
  }

  constexpr double kFreshnessDays = 1.5;
  constexpr double kWindowDays = 3.0;
  constexpr double kTopicAffinity = 4.0;
  std::vector<std::set<ArticleIndex>> seen(config.n_users);
  std::vector<double> weights;
  std::vector<ArticleIndex> pool;
  for (std::size_t day = 0; day < config.timespan_days; ++day) {
    const Timestamp day_start = config.start + static_cast<Timestamp>(day) * kSecondsPerDay;
    for (std::size_t u = 0; u < config.n_users; ++u) {
      const std::size_t reads = poisson(rng, readers[u].daily_reads);
      std::vector<Timestamp> times(reads);
      for (Timestamp& t : times) {
        t = day_start + static_cast<Timestamp>(rng.uniform() * static_cast<double>(kSecondsPerDay));
      }
      std::sort(times.begin(), times.end());
      for (Timestamp t : times) {
        pool.clear();
        weights.clear();
        for (std::size_t a : by_time) {
          if (published[a] > t) break;
          const double age = static_cast<double>(t - published[a]) / kSecondsPerDay;
          if (age > kWindowDays || seen[u].contains(a)) continue;
          std::size_t shared = 0;
          for (std::size_t topic : cat.articles[a].topics) shared += readers[u].likes.contains(topic);
          pool.push_back(a);
          weights.push_back(author_pull[cat.articles[a].authors.front()] *
                            std::exp(-age / kFreshnessDays) *
                            (1.0 + kTopicAffinity * static_cast<double>(shared)));
        }
        if (pool.empty()) continue;
        const ArticleIndex chosen = pool[rng.weighted(cumulative_of(weights))];
        seen[u].insert(chosen);
        data.log.events.push_back({u, chosen, std::min(t, end - 1)});
      }
    }
  }
  return canonicalize(std::move(data));
}

}  // namespace hgrec

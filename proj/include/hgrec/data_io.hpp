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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hgrec/dataset.hpp"

namespace hgrec {

struct LoadReport {
  std::size_t events_read = 0;
  std::size_t dangling_dropped = 0;
};

// Reads `events.jsonl` and `articles.jsonl`.
//
//   events:   {"user_id": str, "article_id": str, "timestamp": int | str}
//   articles: {"article_id": str, "authors": [str], "topics": [str],
//              "iptc_tags": [str]?, "embedding": [number]?}
//
// Timestamps are epoch seconds or ISO-8601 ("2017-01-03T08:15:00Z", with an
// optional fraction and UTC offset). Ids are interned in order of first
// appearance; events are stably sorted by timestamp. Events naming an article
// missing from the catalog are dropped and counted in the report.
Dataset load(const std::filesystem::path& events_path, const std::filesystem::path& articles_path,
             LoadReport* report = nullptr);

void write_events(const std::filesystem::path& path, const Dataset& data);
void write_articles(const std::filesystem::path& path, const ArticleCatalog& catalog);

std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// Relabels users, authors, topics and tags in order of first appearance
// (events for users, catalog order for the rest) and drops unused ones, so a
// write/load cycle reproduces the dataset exactly.
Dataset canonicalize(Dataset data);

struct SynthConfig {
  std::size_t n_users = 3600;
  std::size_t n_articles = 700;
  std::size_t n_authors = 150;
  std::size_t n_topics = 850;
  std::size_t timespan_days = 28;
  double popularity_exponent = 1.2;
  std::uint64_t seed = 7;
  std::size_t embedding_dim = 16;
  // Share of users reading heavily enough to be evaluated.
  double heavy_user_share = 0.10;
  double heavy_daily_reads = 12.0;
  double light_daily_reads = 0.5;
  // Part of the popularity exponent carried by how many articles an author
  // writes; the rest scales each read. Interaction share stays a power law.
  double output_share = 0.5;
  Timestamp start = 1483228800;  // 2017-01-01T00:00:00Z
};

// Skewed-popularity news log. Author popularity follows (rank+1)^-exponent:
// author a writes articles in proportion to pop_a^output_share (at least one
// each), and each read picks a fresh, unread article with probability
// proportional to pop^(1 - output_share) of its first author, its freshness
// and the reader's topic affinity. Articles carry one or two authors, one to
// five topics and an embedding derived from their topics and first author.
Dataset generate_synthetic(const SynthConfig& config);

}  // namespace hgrec

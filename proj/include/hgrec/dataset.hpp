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
#include <optional>
#include <string>
#include <vector>

namespace hgrec {

using UserIndex = std::size_t;
using ArticleIndex = std::size_t;
using AuthorIndex = std::size_t;
using TopicIndex = std::size_t;
using TagIndex = std::size_t;

// Seconds since the Unix epoch.
using Timestamp = std::int64_t;

inline constexpr Timestamp kSecondsPerDay = 86400;

struct Interaction {
  UserIndex user = 0;
  ArticleIndex article = 0;
  Timestamp timestamp = 0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

struct InteractionLog {
  std::vector<Interaction> events;  // sorted by (timestamp, user, article)
  bool deduplicated = false;
};

struct Article {
  std::vector<AuthorIndex> authors;
  std::vector<TopicIndex> topics;
  std::vector<TagIndex> iptc_tags;
  std::optional<std::vector<double>> embedding;

  friend bool operator==(const Article&, const Article&) = default;
};

struct ArticleCatalog {
  std::vector<Article> articles;
  std::vector<std::string> article_names;
  std::vector<std::string> author_names;
  std::vector<std::string> topic_names;
  std::vector<std::string> tag_names;

  std::size_t num_articles() const { return articles.size(); }
  std::size_t num_authors() const { return author_names.size(); }
  std::size_t num_topics() const { return topic_names.size(); }
  std::size_t num_tags() const { return tag_names.size(); }
};

struct Dataset {
  InteractionLog log;
  ArticleCatalog catalog;
  std::vector<std::string> user_names;

  std::size_t num_users() const { return user_names.size(); }
};

// A binary (user, article) membership; repeat reads collapse to one pair.
struct UserArticle {
  UserIndex user = 0;
  ArticleIndex article = 0;

  friend auto operator<=>(const UserArticle&, const UserArticle&) = default;
};

// Sorted, duplicate-free pairs of the given events.
std::vector<UserArticle> unique_pairs(const std::vector<Interaction>& events);

}  // namespace hgrec

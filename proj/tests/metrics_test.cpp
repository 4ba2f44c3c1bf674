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

#include <random>

#include "doctest.h"
#include "hgrec/error.hpp"
#include "hgrec/metrics.hpp"

using namespace hgrec;

namespace {

// One single-author article per entry of `authors`.
ArticleCatalog catalog_of(const std::vector<AuthorIndex>& authors) {
  ArticleCatalog c;
  for (AuthorIndex a : authors) {
    Article art;
    art.authors = {a};
    c.articles.push_back(art);
  }
  return c;
}

std::vector<UserArticle> pairs_with_counts(const std::vector<std::size_t>& counts) {
  std::vector<UserArticle> train;
  UserIndex u = 0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    for (std::size_t i = 0; i < counts[a]; ++i) train.push_back({u++, a});
  }
  return train;
}

}  // namespace

TEST_CASE("precision at k") {
  std::vector<ArticleIndex> list(20);
  for (std::size_t i = 0; i < 20; ++i) list[i] = i;
  std::set<ArticleIndex> five = {0, 1, 2, 3, 4, 100, 101, 102, 103, 104};
  CHECK(precision_at_k({{0, list}}, {{0, five}}, 20) == 0.25);
  CHECK(precision_at_k({{0, list}}, {{0, {50, 51}}}, 20) == 0.0);
  std::set<ArticleIndex> ten(list.begin(), list.begin() + 10);
  CHECK(precision_at_k({{0, list}}, {{0, ten}}, 20) == 0.5);
  // an evaluated user without a list scores zero
  CHECK(precision_at_k({{0, list}}, {{0, ten}, {1, ten}}, 20) == 0.25);
  try {
    precision_at_k({{0, list}}, {}, 20);
    FAIL("expected NoEvaluableUsers");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNoEvaluableUsers);
  }
}

TEST_CASE("EAGF") {
  std::vector<std::size_t> a = {16, 9};
  CHECK(eagf(a) == 7.0);
  std::vector<std::size_t> b = {0, 9};
  CHECK(eagf(b) == 3.0);
  std::vector<std::size_t> c = {25, 0};
  CHECK(eagf(c) == 5.0);
  CHECK(eagf(a) > eagf(c));
  for (std::size_t x = 0; x < 50; ++x) {
    std::vector<std::size_t> lo = {x, 7}, hi = {x + 1, 7};
    CHECK(eagf(hi) >= eagf(lo));
  }
}

TEST_CASE("SPD") {
  std::vector<std::size_t> r = {8, 2}, d = {6, 4};
  CHECK(spd(r, d) == 0.2);
  std::vector<std::size_t> r2 = {3, 1}, d2 = {300, 100};
  CHECK(spd(r2, d2) == 0.0);
  std::vector<std::size_t> r3 = {10, 0}, d3 = {5, 5};
  CHECK(spd(r3, d3) == 0.5);
  std::vector<std::size_t> empty = {0, 0};
  try {
    spd(empty, d);
    FAIL("expected EmptyRecommendations");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kEmptyRecommendations);
  }
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<std::size_t> n(0, 1000);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::size_t> x = {n(gen) + 1, n(gen)}, y = {n(gen) + 1, n(gen)};
    const double s = spd(x, y);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    const double direct = 0.5 * (std::abs(double(x[0]) / double(x[0] + x[1]) -
                                          double(y[0]) / double(y[0] + y[1])) +
                                 std::abs(double(x[1]) / double(x[0] + x[1]) -
                                          double(y[1]) / double(y[0] + y[1])));
    CHECK(s == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("covered topics") {
  CHECK(covered_topics({{0, {1, 2, 3}}, {1, {1, 2, 3, 4, 5}}}) == 4.0);
  CHECK(covered_topics({}) == 0.0);
}

TEST_CASE("Pareto split") {
  SUBCASE("skewed") {
    auto c = catalog_of({0, 1, 2});
    auto g = split_groups(pairs_with_counts({20, 50, 30}), c);
    CHECK(g.short_head == std::set<AuthorIndex>{1});
    CHECK(g.long_tail == std::set<AuthorIndex>{0, 2});
  }
  SUBCASE("uniform") {
    auto c = catalog_of({0, 1, 2, 3, 4});
    auto g = split_groups(pairs_with_counts({1, 1, 1, 1, 1}), c);
    CHECK(g.short_head == std::set<AuthorIndex>{0});
    CHECK(g.long_tail.size() == 4);
  }
  SUBCASE("single author") {
    auto c = catalog_of({3});
    auto g = split_groups(pairs_with_counts({4}), c);
    CHECK(g.short_head == std::set<AuthorIndex>{3});
    CHECK(g.long_tail.empty());
  }
  SUBCASE("the prefix grows until it holds a fifth") {
    auto c = catalog_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto g = split_groups(pairs_with_counts({15, 14, 13, 12, 11, 10, 9, 8, 5, 3}), c);
    CHECK(g.short_head == std::set<AuthorIndex>{0, 1});  // 15 < 20, 29 >= 20
  }
}

TEST_CASE("group counts use slot-author pairs") {
  ArticleCatalog c = catalog_of({0, 1, 2});
  c.articles.push_back({{0, 2}, {}, {}, {}});
  AuthorGroups g{{0}, {1}};
  std::vector<std::vector<ArticleIndex>> lists = {{0, 1, 2}, {3}};
  auto counts = count_by_group(lists, c, g);
  CHECK(counts[kShortHead] == 2);  // author 2 is in neither group
  CHECK(counts[kLongTail] == 1);
  std::vector<UserArticle> train = {{0, 3}, {1, 3}, {0, 1}};
  auto d = count_by_group(train, c, g);
  CHECK(d[kShortHead] == 2);
  CHECK(d[kLongTail] == 1);
  CHECK(author_mentions(train, c) == std::map<AuthorIndex, std::size_t>{{0, 2}, {1, 1}, {2, 2}});
}

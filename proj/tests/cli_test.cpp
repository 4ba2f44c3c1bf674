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

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "doctest.h"
#include "hgrec/simulation.hpp"
#include "support.hpp"

using hgrec::testing::read_file;
using hgrec::testing::TempDir;
using hgrec::testing::write_file;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const TempDir& dir) {
  const auto out = dir / "stdout.txt";
  const std::string cmd = std::string(HGREC_BIN) + " " + args + " > " + out.string() + " 2> " +
                          (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  return r;
}

std::string small_config(const TempDir& dir, const std::string& extra = "") {
  const auto path = dir / "config.json";
  write_file(path, R"({"events": ")" + (dir / "events.jsonl").string() + R"(", "articles": ")" +
                       (dir / "articles.jsonl").string() +
                       R"(", "k": 10, "knn_k_users": 5, "knn_k_articles": 5, "theta": 1.0)" +
                       extra + "}");
  return path.string();
}

}  // namespace

TEST_CASE("command line") {
  TempDir dir;
  const std::string d = dir.path().string();

  auto synth = run("synth --users 300 --articles 120 --authors 20 --topics 60 --days 8 --seed 3 "
                   "--out " + d, dir);
  REQUIRE(synth.code == 0);
  CHECK(synth.out.find("events") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "events.jsonl"));
  CHECK(std::filesystem::exists(dir / "articles.jsonl"));

  const std::string config = small_config(dir);

  SUBCASE("simulate a single method") {
    auto sim = run("simulate --config " + config + " --methods hypergraph --out " + d + "/run",
                   dir);
    REQUIRE(sim.code == 0);
    auto records = hgrec::read_metrics_csv(dir / "run/metrics.csv");
    CHECK(records.size() == 4);
    for (const auto& r : records) CHECK(r.method == "hypergraph");
    CHECK(std::filesystem::exists(dir / "run/config.json"));
    CHECK(sim.out.find("hypergraph") != std::string::npos);

    auto rep = run("report --out " + d + "/run", dir);
    CHECK(rep.code == 0);
    CHECK(rep.out == read_file(dir / "run/report.md"));

    auto rec = run("recommend --config " + config + " --user user0 --json -k 5 --state " + d +
                       "/run/state.json",
                   dir);
    CHECK(rec.code == 0);
    auto doc = nlohmann::json::parse(rec.out);
    CHECK(doc["recommendations"].size() == 5);
  }
  SUBCASE("recommend in every mode") {
    auto sim = run("simulate --config " + config +
                       " --methods hypergraph_fair,hypergraph_coverage,hypergraph_diversified "
                       "--rounds 2 --out " + d + "/lanes",
                   dir);
    REQUIRE(sim.code == 0);
    for (const char* mode : {"plain", "fair", "coverage", "diversified"}) {
      auto rec = run("recommend --config " + config + " --user user1 -k 3 --mode " + mode +
                         " --state " + d + "/lanes/state.json",
                     dir);
      CHECK(rec.code == 0);
    }
  }
  SUBCASE("errors map to exit codes") {
    CHECK(run("", dir).code == 2);
    CHECK(run("simulate", dir).code == 2);
    CHECK(run("simulate --config " + config + " --methods nothing --out " + d + "/x", dir).code ==
          2);
    write_file(dir / "bad.json", R"({"methods": ["hypergraph"], "colour": 1})");
    CHECK(run("simulate --config " + d + "/bad.json --out " + d + "/x", dir).code == 2);
    write_file(dir / "nodata.json", R"({"events": "/nonexistent/e.jsonl",
                                        "articles": "/nonexistent/a.jsonl"})");
    CHECK(run("simulate --config " + d + "/nodata.json --out " + d + "/x", dir).code == 2);
    CHECK(run("recommend --config " + config + " --user nobody", dir).code == 3);
    CHECK(run("report --out " + d + "/empty", dir).code == 3);
    write_file(dir / "broken.jsonl", "{\"user_id\": \"u\"}\n");
    write_file(dir / "broken.json", R"({"events": ")" + (dir / "broken.jsonl").string() +
                                        R"(", "articles": ")" +
                                        (dir / "articles.jsonl").string() + R"("})");
    CHECK(run("simulate --config " + d + "/broken.json --out " + d + "/x", dir).code == 3);
  }
}

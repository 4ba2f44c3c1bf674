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
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hgrec/dataset.hpp"
#include "hgrec/hypergraph.hpp"

namespace hgrec {

// Sparse seed vector over the global vertex indices of one hypergraph.
class QueryVector {
 public:
  explicit QueryVector(std::size_t dimension) : dimension_(dimension) {}

  static QueryVector unit(std::size_t dimension, std::size_t vertex);

  // Adds `weight` to the entry at `vertex`. Zero weights are not stored.
  void add(std::size_t vertex, double weight);

  std::size_t dimension() const { return dimension_; }
  const std::map<std::size_t, double>& entries() const { return entries_; }
  double at(std::size_t vertex) const;

  Eigen::VectorXd to_dense() const;

  friend bool operator==(const QueryVector&, const QueryVector&) = default;

 private:
  std::size_t dimension_;
  std::map<std::size_t, double> entries_;
};

struct ScoreVector {
  Eigen::VectorXd scores;
  double theta = 1.0;
};

enum class SolverMethod { kDirect, kIterative };

struct SolverOptions {
  double theta = 1.0;
  SolverMethod method = SolverMethod::kIterative;
  double tol = 1e-10;
  std::size_t max_iters = 10000;
};

// f* = theta/(1+theta) (I - A/(1+theta))^{-1} y.
// Direct factorizes the dense system; Iterative runs the fixed point
// f <- alpha A f + (1-alpha) y with alpha = 1/(1+theta).
ScoreVector solve(const Hypergraph& h, const QueryVector& y, const SolverOptions& options);

// Column-wise solve for a block of seed vectors (one query per column).
Eigen::MatrixXd solve_block(const Hypergraph& h, const Eigen::MatrixXd& seeds,
                            const SolverOptions& options);

struct RankedVertex {
  VertexId vertex;
  double score = 0.0;
};

// Vertices of one kind by descending score, ties by ascending global index.
std::vector<RankedVertex> extract_scores(const Hypergraph& h, const ScoreVector& f, VertexKind kind,
                                         const std::set<std::size_t>& exclude = {});

enum class RelevanceNormalization { kMinMax, kSumToOne };

// Min-max maps a constant slice to all ones; sum-to-one maps an all-zero slice
// to the uniform distribution.
std::map<std::size_t, double> normalize_relevance(const std::map<std::size_t, double>& scores,
                                                  RelevanceNormalization normalization);

// Normalized author scores for one user, keyed by author index.
std::map<AuthorIndex, double> author_relevance(
    const Hypergraph& h, UserIndex user, const SolverOptions& options,
    RelevanceNormalization normalization = RelevanceNormalization::kMinMax);

}  // namespace hgrec

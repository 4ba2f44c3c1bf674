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

#include "hgrec/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "hgrec/error.hpp"

namespace hgrec {

QueryVector QueryVector::unit(std::size_t dimension, std::size_t vertex) {
  QueryVector q(dimension);
  q.add(vertex, 1.0);
  return q;
}

void QueryVector::add(std::size_t vertex, double weight) {
  if (vertex >= dimension_) {
    throw Error(Errc::kDimensionMismatch,
                "query entry " + std::to_string(vertex) + " outside " + std::to_string(dimension_));
  }
  if (!std::isfinite(weight)) throw Error(Errc::kInvalidArgument, "non-finite query weight");
  if (weight == 0.0) return;
  entries_[vertex] += weight;
}

double QueryVector::at(std::size_t vertex) const {
  auto it = entries_.find(vertex);
  return it == entries_.end() ? 0.0 : it->second;
}

Eigen::VectorXd QueryVector::to_dense() const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension_));
  for (const auto& [v, w] : entries_) y[static_cast<Eigen::Index>(v)] = w;
  return y;
}

Eigen::MatrixXd solve_block(const Hypergraph& h, const Eigen::MatrixXd& seeds,
                            const SolverOptions& options) {
  const auto n = static_cast<Eigen::Index>(h.num_vertices());
  if (seeds.rows() != n) {
    throw Error(Errc::kDimensionMismatch, "query length " + std::to_string(seeds.rows()) +
                                              " != " + std::to_string(n));
  }
  if (!(options.theta > 0.0) || !std::isfinite(options.theta)) {
    throw Error(Errc::kInvalidArgument, "theta must be positive");
  }
  const double alpha = 1.0 / (1.0 + options.theta);
  const double beta = options.theta / (1.0 + options.theta);

  if (options.method == SolverMethod::kDirect) {
    Eigen::MatrixXd system = -alpha * Eigen::MatrixXd(h.adjacency());
    system.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
      throw Error(Errc::kNonConvergence, "I - alpha A is not positive definite");
    }
    return llt.solve(beta * seeds);
  }

  const RowMatrix base = beta * seeds;
  RowMatrix f = base;
  RowMatrix next(f.rows(), f.cols());
  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    h.apply_adjacency(f, next);
    next = alpha * next + base;
    const double delta = f.size() == 0 ? 0.0 : (next - f).cwiseAbs().maxCoeff();
    f.swap(next);
    if (delta <= options.tol) return f;
  }
  throw Error(Errc::kNonConvergence,
              "no convergence after " + std::to_string(options.max_iters) + " iterations");
}

ScoreVector solve(const Hypergraph& h, const QueryVector& y, const SolverOptions& options) {
  if (y.dimension() != h.num_vertices()) {
    throw Error(Errc::kDimensionMismatch, "query dimension " + std::to_string(y.dimension()) +
                                              " != " + std::to_string(h.num_vertices()));
  }
  Eigen::MatrixXd f = solve_block(h, y.to_dense(), options);
  return {f.col(0), options.theta};
}

std::vector<RankedVertex> extract_scores(const Hypergraph& h, const ScoreVector& f, VertexKind kind,
                                         const std::set<std::size_t>& exclude) {
  std::vector<RankedVertex> out;
  for (std::size_t g : h.vertices_of(kind)) {
    if (exclude.contains(g)) continue;
    out.push_back({h.vertices()[g], f.scores[static_cast<Eigen::Index>(g)]});
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedVertex& a, const RankedVertex& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.vertex.global_index < b.vertex.global_index;
  });
  return out;
}

std::map<std::size_t, double> normalize_relevance(const std::map<std::size_t, double>& scores,
                                                  RelevanceNormalization normalization) {
  std::map<std::size_t, double> out;
  if (scores.empty()) return out;
  if (normalization == RelevanceNormalization::kMinMax) {
    auto [lo, hi] = std::minmax_element(scores.begin(), scores.end(),
                                        [](auto& a, auto& b) { return a.second < b.second; });
    const double low = lo->second;
    const double span = hi->second - low;
    for (const auto& [id, s] : scores) out[id] = span > 0.0 ? (s - low) / span : 1.0;
    return out;
  }
  double total = 0.0;
  for (const auto& [id, s] : scores) total += s;
  for (const auto& [id, s] : scores) {
    out[id] = total > 0.0 ? s / total : 1.0 / static_cast<double>(scores.size());
  }
  return out;
}

std::map<AuthorIndex, double> author_relevance(const Hypergraph& h, UserIndex user,
                                               const SolverOptions& options,
                                               RelevanceNormalization normalization) {
  auto g = h.find(VertexKind::kUser, user);
  if (!g) throw Error(Errc::kUnknownUser, "user " + std::to_string(user) + " not in hypergraph");
  const ScoreVector f = solve(h, QueryVector::unit(h.num_vertices(), *g), options);
  std::map<std::size_t, double> raw;
  for (std::size_t a : h.vertices_of(VertexKind::kAuthor)) {
    raw[h.vertices()[a].index] = f.scores[static_cast<Eigen::Index>(a)];
  }
  return normalize_relevance(raw, normalization);
}

}  // namespace hgrec

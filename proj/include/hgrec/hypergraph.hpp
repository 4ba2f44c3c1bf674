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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hgrec {

enum class VertexKind : std::uint8_t { kUser, kArticle, kAuthor, kTopic, kIptcTag };
inline constexpr std::size_t kNumVertexKinds = 5;

std::string_view to_string(VertexKind kind);

// A vertex is addressed either by (kind, index-within-kind) or by its global
// row in the incidence matrix.
struct VertexId {
  VertexKind kind = VertexKind::kUser;
  std::size_t index = 0;
  std::size_t global_index = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
};

enum class HyperedgeKind : std::uint8_t { kE1, kE2, kE3, kE4, kE5, kE6 };
inline constexpr std::size_t kNumHyperedgeKinds = 6;

std::string_view to_string(HyperedgeKind kind);
std::optional<HyperedgeKind> parse_hyperedge_kind(std::string_view name);

// Members are given as (kind, index) pairs; global indices are resolved when
// the hypergraph is built.
struct VertexKey {
  VertexKind kind = VertexKind::kUser;
  std::size_t index = 0;

  friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
};

struct Hyperedge {
  std::size_t id = 0;
  std::vector<VertexKey> members;
  double weight = 1.0;
  HyperedgeKind kind = HyperedgeKind::kE1;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;
using RowSparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Hypergraph;

// Builds and validates a hypergraph. Vertex global indices follow the order of
// `vertices`. `materialize` overrides the size-based choice of whether A is
// stored explicitly.
Hypergraph build_hypergraph(std::vector<VertexKey> vertices, std::vector<Hyperedge> hyperedges,
                            std::optional<bool> materialize = std::nullopt);

// Immutable weighted hypergraph with the normalized adjacency operator
//   A = Dv^{-1/2} H W De^{-1} H^T Dv^{-1/2}.
// Below `kImplicitThreshold` vertices A is also materialized at build time.
// Products with A always go through the factored form S diag(w/delta) S^T.
class Hypergraph {
 public:
  static constexpr std::size_t kImplicitThreshold = 5000;

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_hyperedges() const { return edges_.size(); }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Hyperedge>& hyperedges() const { return edges_; }
  const SparseMatrix& incidence() const { return incidence_; }
  const Eigen::VectorXd& vertex_degrees() const { return vertex_degrees_; }
  const Eigen::VectorXd& hyperedge_degrees() const { return edge_degrees_; }

  std::optional<std::size_t> find(VertexKind kind, std::size_t index) const;
  std::optional<std::size_t> find(VertexKey key) const { return find(key.kind, key.index); }

  // Global indices of all vertices of one kind, in ascending local index.
  const std::vector<std::size_t>& vertices_of(VertexKind kind) const {
    return by_kind_[static_cast<std::size_t>(kind)];
  }

  bool has_materialized_adjacency() const { return adjacency_.has_value(); }

  // Materialized adjacency. Computed on demand when the graph was built in
  // factored mode.
  RowSparseMatrix adjacency() const;

  // out = A * x for a block of column vectors.
  void apply_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& x,
                       Eigen::Ref<Eigen::MatrixXd> out) const;
  Eigen::VectorXd apply_adjacency(const Eigen::VectorXd& x) const;
  // Row-major blocks: the fast path for many right-hand sides.
  void apply_adjacency(const RowMatrix& x, RowMatrix& out) const;

 private:
  friend Hypergraph build_hypergraph(std::vector<VertexKey>, std::vector<Hyperedge>,
                                     std::optional<bool>);

  std::vector<VertexId> vertices_;
  std::vector<Hyperedge> edges_;
  std::array<std::vector<std::size_t>, kNumVertexKinds> by_kind_;
  // local index -> global index, per kind; npos when absent
  std::array<std::vector<std::size_t>, kNumVertexKinds> lookup_;
  SparseMatrix incidence_;
  // S = Dv^{-1/2} H and its transpose; A = S diag(w / delta(e)) S^T
  RowSparseMatrix scaled_incidence_;
  RowSparseMatrix scaled_incidence_t_;
  // w(e) / delta(e)
  Eigen::VectorXd edge_scale_;
  Eigen::VectorXd vertex_degrees_;
  Eigen::VectorXd edge_degrees_;
  std::optional<RowSparseMatrix> adjacency_;
};

// Exactly symmetric materialization of A computed pairwise per hyperedge.
RowSparseMatrix compute_adjacency(const Hypergraph& h);

// f^T (I - A) f
double laplacian_quadratic(const Hypergraph& h, const Eigen::VectorXd& f);

}  // namespace hgrec

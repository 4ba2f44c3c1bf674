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

#include "hgrec/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hgrec/error.hpp"

namespace hgrec {
namespace {

constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

std::string describe(VertexKey key) {
  return std::string(to_string(key.kind)) + "#" + std::to_string(key.index);
}

}  // namespace

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::kUser: return "user";
    case VertexKind::kArticle: return "article";
    case VertexKind::kAuthor: return "author";
    case VertexKind::kTopic: return "topic";
    case VertexKind::kIptcTag: return "iptc";
  }
  return "?";
}

std::string_view to_string(HyperedgeKind kind) {
  static constexpr std::string_view kNames[] = {"E1", "E2", "E3", "E4", "E5", "E6"};
  return kNames[static_cast<std::size_t>(kind)];
}

std::optional<HyperedgeKind> parse_hyperedge_kind(std::string_view name) {
  for (std::size_t i = 0; i < kNumHyperedgeKinds; ++i) {
    auto kind = static_cast<HyperedgeKind>(i);
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<std::size_t> Hypergraph::find(VertexKind kind, std::size_t index) const {
  const auto& table = lookup_[static_cast<std::size_t>(kind)];
  if (index >= table.size() || table[index] == kAbsent) return std::nullopt;
  return table[index];
}

Hypergraph build_hypergraph(std::vector<VertexKey> vertices, std::vector<Hyperedge> hyperedges,
                            std::optional<bool> materialize) {
  Hypergraph h;
  const std::size_t nv = vertices.size();
  const std::size_t ne = hyperedges.size();

  h.vertices_.reserve(nv);
  for (std::size_t g = 0; g < nv; ++g) {
    const VertexKey key = vertices[g];
    auto& table = h.lookup_[static_cast<std::size_t>(key.kind)];
    if (key.index >= table.size()) table.resize(key.index + 1, kAbsent);
    if (table[key.index] != kAbsent) {
      throw Error(Errc::kDuplicateVertex, describe(key));
    }
    table[key.index] = g;
    h.vertices_.push_back({key.kind, key.index, g});
  }
  for (auto& table : h.lookup_) {
    for (std::size_t local = 0; local < table.size(); ++local) {
      if (table[local] == kAbsent) continue;
      const VertexKind kind = h.vertices_[table[local]].kind;
      h.by_kind_[static_cast<std::size_t>(kind)].push_back(table[local]);
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  h.edge_degrees_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ne));
  h.edge_scale_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ne));
  h.vertex_degrees_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
  for (std::size_t e = 0; e < ne; ++e) {
    Hyperedge& edge = hyperedges[e];
    if (edge.members.empty()) {
      throw Error(Errc::kEmptyHyperedge, "hyperedge " + std::to_string(edge.id));
    }
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      throw Error(Errc::kInvalidWeight, "hyperedge " + std::to_string(edge.id));
    }
    std::sort(edge.members.begin(), edge.members.end());
    edge.members.erase(std::unique(edge.members.begin(), edge.members.end()), edge.members.end());
    for (const VertexKey& key : edge.members) {
      auto g = h.find(key);
      if (!g) {
        throw Error(Errc::kUnknownVertex,
                    describe(key) + " in hyperedge " + std::to_string(edge.id));
      }
      triplets.emplace_back(static_cast<int>(*g), static_cast<int>(e), 1.0);
      h.vertex_degrees_[static_cast<Eigen::Index>(*g)] += edge.weight;
    }
    const auto degree = static_cast<double>(edge.members.size());
    h.edge_degrees_[static_cast<Eigen::Index>(e)] = degree;
    h.edge_scale_[static_cast<Eigen::Index>(e)] = edge.weight / degree;
  }
  for (std::size_t g = 0; g < nv; ++g) {
    if (!(h.vertex_degrees_[static_cast<Eigen::Index>(g)] > 0.0)) {
      throw Error(Errc::kOrphanVertex, describe({h.vertices_[g].kind, h.vertices_[g].index}));
    }
  }

  h.incidence_.resize(static_cast<Eigen::Index>(nv), static_cast<Eigen::Index>(ne));
  h.incidence_.setFromTriplets(triplets.begin(), triplets.end());
  h.incidence_.makeCompressed();

  const Eigen::VectorXd inv_sqrt = h.vertex_degrees_.cwiseSqrt().cwiseInverse();
  h.scaled_incidence_ = inv_sqrt.asDiagonal() * h.incidence_;
  h.scaled_incidence_.makeCompressed();
  h.scaled_incidence_t_ = h.scaled_incidence_.transpose();
  h.scaled_incidence_t_.makeCompressed();
  h.edges_ = std::move(hyperedges);

  const bool store = materialize.value_or(nv <= Hypergraph::kImplicitThreshold);
  if (store) h.adjacency_ = compute_adjacency(h);
  return h;
}

RowSparseMatrix Hypergraph::adjacency() const {
  if (adjacency_) return *adjacency_;
  return compute_adjacency(*this);
}

void Hypergraph::apply_adjacency(const Eigen::Ref<const Eigen::MatrixXd>& x,
                                 Eigen::Ref<Eigen::MatrixXd> out) const {
  if (x.rows() != static_cast<Eigen::Index>(num_vertices()) || out.rows() != x.rows() ||
      out.cols() != x.cols()) {
    throw Error(Errc::kDimensionMismatch, "adjacency operand has wrong shape");
  }
  RowMatrix result;
  apply_adjacency(RowMatrix(x), result);
  out = result;
}

void Hypergraph::apply_adjacency(const RowMatrix& x, RowMatrix& out) const {
  if (x.rows() != static_cast<Eigen::Index>(num_vertices())) {
    throw Error(Errc::kDimensionMismatch, "adjacency operand has wrong shape");
  }
  RowMatrix per_edge = scaled_incidence_t_ * x;
  per_edge = edge_scale_.asDiagonal() * per_edge;
  out.noalias() = scaled_incidence_ * per_edge;
}

Eigen::VectorXd Hypergraph::apply_adjacency(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(x.size());
  apply_adjacency(x, out);
  return out;
}

RowSparseMatrix compute_adjacency(const Hypergraph& h) {
  // Row-wise accumulation. Entry (i,j) and (j,i) visit the same shared
  // hyperedges in the same order with the same commutative product, so the
  // result is bitwise symmetric.
  const auto nv = static_cast<Eigen::Index>(h.num_vertices());
  const SparseMatrix& inc = h.incidence();
  const RowSparseMatrix rows = inc;
  const Eigen::VectorXd inv_sqrt = h.vertex_degrees().cwiseSqrt().cwiseInverse();
  const auto& edges = h.hyperedges();

  RowSparseMatrix a(nv, nv);
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> acc(static_cast<std::size_t>(nv), 0.0);
  std::vector<char> touched(static_cast<std::size_t>(nv), 0);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < nv; ++i) {
    cols.clear();
    for (RowSparseMatrix::InnerIterator it(rows, i); it; ++it) {
      const Eigen::Index e = it.col();
      const double scale = edges[static_cast<std::size_t>(e)].weight / h.hyperedge_degrees()[e];
      for (SparseMatrix::InnerIterator jt(inc, e); jt; ++jt) {
        const Eigen::Index j = jt.row();
        const auto uj = static_cast<std::size_t>(j);
        if (!touched[uj]) {
          touched[uj] = 1;
          cols.push_back(j);
        }
        acc[uj] += scale * (inv_sqrt[i] * inv_sqrt[j]);
      }
    }
    std::sort(cols.begin(), cols.end());
    for (Eigen::Index j : cols) {
      const auto uj = static_cast<std::size_t>(j);
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), acc[uj]);
      acc[uj] = 0.0;
      touched[uj] = 0;
    }
  }
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

double laplacian_quadratic(const Hypergraph& h, const Eigen::VectorXd& f) {
  if (f.size() != static_cast<Eigen::Index>(h.num_vertices())) {
    throw Error(Errc::kDimensionMismatch, "score vector length " + std::to_string(f.size()) +
                                              " != " + std::to_string(h.num_vertices()));
  }
  return f.squaredNorm() - f.dot(h.apply_adjacency(f));
}

}  // namespace hgrec

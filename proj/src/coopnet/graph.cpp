// Copyright 2026 The coopnet Authors
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

#include "coopnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "coopnet/errors.hpp"

namespace coopnet {

Graph::Graph(std::vector<std::string> node_ids, std::vector<Edge> edges)
    : ids_(std::move(node_ids)), edges_(std::move(edges)) {
  const std::size_t n = ids_.size();
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n) {
      throw DataError("edge endpoint " + std::to_string(e.v) +
                      " out of range for " + std::to_string(n) + " nodes");
    }
    if (e.u == e.v) throw DataError("self-loop on node " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw DataError("edge weight must be positive and finite");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw DataError("parallel edge (" + std::to_string(edges_[k].u) + "," +
                      std::to_string(edges_[k].v) + ")");
    }
  }

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  strength_.assign(n, 0.0);
  // Edges are sorted, so each adjacency list comes out sorted by neighbor.
  for (const auto& e : edges_) adjacency_[fill[e.v]++] = {e.u, e.weight};
  for (const auto& e : edges_) adjacency_[fill[e.u]++] = {e.v, e.weight};
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    for (const auto& nb : neighbors(i)) strength_[i] += nb.weight;
  }
  for (const auto& e : edges_) total_weight_ += e.weight;
}

Graph build_graph(const SimilarityMatrix& s,
                  const std::vector<std::string>& entity_ids,
                  Weighting weighting) {
  if (entity_ids.size() != s.n()) {
    throw DataError("similarity matrix covers " + std::to_string(s.n()) +
                    " entities, ids list " + std::to_string(entity_ids.size()));
  }
  std::vector<Edge> edges;
  edges.reserve(s.entries().size());
  for (const auto& e : s.entries()) {
    edges.push_back({e.a, e.b, weighting == Weighting::kBinary ? 1.0 : e.value});
  }
  return Graph(entity_ids, std::move(edges));
}

}  // namespace coopnet

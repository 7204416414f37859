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

#ifndef COOPNET_GRAPH_HPP_
#define COOPNET_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coopnet/similarity.hpp"

namespace coopnet {

struct Edge {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::uint32_t node = 0;
  double weight = 0.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Undirected weighted simple graph. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Edges are normalized to u < v and sorted. Throws DataError on self-loops,
  // parallel edges, out-of-range endpoints and non-positive or non-finite
  // weights.
  Graph(std::vector<std::string> node_ids, std::vector<Edge> edges);

  std::size_t n() const noexcept { return ids_.size(); }
  std::size_t m() const noexcept { return edges_.size(); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t i) const noexcept {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }

  std::size_t degree(std::size_t i) const noexcept {
    return offsets_[i + 1] - offsets_[i];
  }
  double weighted_degree(std::size_t i) const noexcept { return strength_[i]; }
  // Sum of edge weights (m in the 2m convention).
  double total_weight() const noexcept { return total_weight_; }

 private:
  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
};

enum class Weighting { kBinary, kSimilarity };

// One edge per similarity entry; entities without entries stay as isolated
// nodes.
Graph build_graph(const SimilarityMatrix& s,
                  const std::vector<std::string>& entity_ids,
                  Weighting weighting = Weighting::kSimilarity);

enum class ExportFormat { kGexf, kGraphml, kDot, kJsonl };

// Accepts gexf, graphml, dot, jsonl. Throws FormatError otherwise.
ExportFormat parse_format(std::string_view name);
std::string_view format_name(ExportFormat f);

// Optional `positions` and `community` must be empty or cover every node.
// community[i] < 0 marks an unassigned node.
void export_graph(std::ostream& out, const Graph& g, ExportFormat format,
                  std::span<const Point> positions = {},
                  std::span<const int> community = {});

// Reads the JSON-lines export back (node ids, edges, weights).
Graph read_graph_jsonl(std::istream& in);

}  // namespace coopnet

#endif  // COOPNET_GRAPH_HPP_

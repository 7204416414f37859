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

#ifndef COOPNET_COMMUNITY_HPP_
#define COOPNET_COMMUNITY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "coopnet/graph.hpp"

namespace coopnet {

inline constexpr int kUnassigned = -1;

// Assignment of nodes to communities. Ids are dense and canonical: community
// 0 holds node 0's group, then ids follow the smallest member node. Isolated
// nodes carry kUnassigned and belong to no community.
class Partition {
 public:
  Partition() = default;

  // Renumbers canonically. Negative labels become kUnassigned. Each level is
  // renumbered the same way.
  static Partition from_labels(std::span<const int> labels,
                               std::vector<std::vector<int>> levels = {});

  std::size_t n() const noexcept { return community_of_.size(); }
  std::size_t n_communities() const noexcept { return communities_.size(); }
  std::size_t unassigned_count() const noexcept;

  int community_of(std::size_t node) const noexcept { return community_of_[node]; }
  std::span<const int> labels() const noexcept { return community_of_; }
  std::span<const std::uint32_t> members(std::size_t c) const noexcept {
    return communities_[c];
  }
  // Labelings of the original nodes after each aggregation pass, finest
  // first. The last one equals labels().
  const std::vector<std::vector<int>>& levels() const noexcept { return levels_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> community_of_;
  std::vector<std::vector<std::uint32_t>> communities_;
  std::vector<std::vector<int>> levels_;
};

// Canonical renumbering of arbitrary labels (ids by smallest member node);
// negative labels map to kUnassigned.
std::vector<int> canonical_labels(std::span<const int> labels);

// Weighted graph that may carry self-loops, as produced by aggregation.
// loop(i) is the diagonal entry A_ii and counts fully into degree(i).
class CommunityGraph {
 public:
  CommunityGraph() = default;
  explicit CommunityGraph(const Graph& g);
  // `adjacency[i]` must not contain i; symmetric weights are the caller's
  // responsibility.
  CommunityGraph(std::vector<std::vector<Neighbor>> adjacency,
                 std::vector<double> loops);

  std::size_t n() const noexcept { return adjacency_.size(); }
  std::span<const Neighbor> neighbors(std::size_t i) const noexcept {
    return adjacency_[i];
  }
  double loop(std::size_t i) const noexcept { return loops_[i]; }
  double degree(std::size_t i) const noexcept { return degree_[i]; }
  // Sum of all degrees (2m).
  double total_degree() const noexcept { return total_degree_; }

 private:
  void finish();

  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> loops_;
  std::vector<double> degree_;
  double total_degree_ = 0.0;
};

// Newman-Girvan modularity, resolution 1:
//   Q = sum_c [ in_c / 2m - (tot_c / 2m)^2 ]
// with in_c the sum of A_ij over ordered pairs inside c (loops once) and tot_c
// the summed degree of c. Nodes labelled negative must have degree 0.
// Throws UndefinedModularityError when the graph has no edge weight.
double modularity(const CommunityGraph& g, std::span<const int> labels);
double modularity(const Graph& g, const Partition& p);

enum class NodeOrder { kInput, kShuffle };

struct LouvainConfig {
  std::size_t max_passes = 100;
  // Minimum modularity gain for a move to be accepted (strictly above).
  double min_gain = 0.0;
  NodeOrder node_order = NodeOrder::kInput;
  std::uint64_t seed = 0;
  // Safety bound on sweeps within one local pass.
  std::size_t max_sweeps = 10000;
};

struct MoveEvent {
  std::size_t level = 0;
  std::uint32_t node = 0;
  int from = 0;
  int to = 0;
  double delta_q = 0.0;
};

// Called after every accepted move with the labels of the current level.
using MoveObserver = std::function<void(const MoveEvent&, std::span<const int>)>;

struct LocalPassResult {
  std::vector<int> labels;
  std::size_t moved = 0;
  std::size_t sweeps = 0;
};

// Local moving phase. Labels must lie in [0, n). Nodes are visited in the
// configured order and moved to the neighbouring community of largest
// positive gain (ties to the smaller id) until a sweep moves nothing.
LocalPassResult louvain_local_pass(const CommunityGraph& g, std::vector<int> labels,
                                   const LouvainConfig& cfg, std::size_t level = 0,
                                   const MoveObserver& observer = {});

// One node per community (labels dense in [0, k)). Inter-community weights
// are summed; each supernode's loop is twice its internal weight plus the
// loops it absorbed, which keeps Q invariant.
CommunityGraph aggregate(const CommunityGraph& g, std::span<const int> labels);

// Alternates local passes and aggregation until a pass moves nothing or
// max_passes is reached. Throws UndefinedModularityError on an edgeless graph.
Partition louvain(const Graph& g, const LouvainConfig& cfg = {},
                  const MoveObserver& observer = {});

// `entity_id,community_id,level0_id,...`; unassigned encoded as -1.
void write_partition(std::ostream& out, const std::vector<std::string>& ids,
                     const Partition& p);
Partition read_partition(std::istream& in, const std::vector<std::string>& ids);

}  // namespace coopnet

#endif  // COOPNET_COMMUNITY_HPP_

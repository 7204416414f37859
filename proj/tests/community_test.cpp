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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "coopnet/community.hpp"
#include "coopnet/errors.hpp"
#include "test_util.hpp"

namespace coopnet {
namespace {

using testing::brute_modularity;
using testing::make_graph;

Graph two_triangles() {
  return make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
}

// Blocks of `size` nodes, dense inside, a few edges across.
Graph planted_blocks(std::mt19937_64& rng, int blocks, int size, double p_in,
                     double p_out) {
  std::bernoulli_distribution in(p_in), out(p_out);
  std::vector<Edge> edges;
  const auto n = static_cast<std::uint32_t>(blocks * size);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const bool same = i / size == j / size;
      if (same ? in(rng) : out(rng)) edges.push_back({i, j, 1.0});
    }
  }
  return Graph(testing::numbered_ids(n), edges);
}

TEST(PartitionTest, CanonicalNumbering) {
  const std::vector<int> raw = {7, 3, 7, -5, 3, 9};
  const auto p = Partition::from_labels(raw);
  EXPECT_EQ(std::vector<int>(p.labels().begin(), p.labels().end()),
            (std::vector<int>{0, 1, 0, -1, 1, 2}));
  EXPECT_EQ(p.n_communities(), 3u);
  EXPECT_EQ(p.unassigned_count(), 1u);
  ASSERT_EQ(p.members(1).size(), 2u);
  EXPECT_EQ(p.members(1)[0], 1u);
  ASSERT_EQ(p.levels().size(), 1u);
  EXPECT_EQ(canonical_labels(raw), p.levels()[0]);
}

TEST(PartitionTest, CsvRoundTrip) {
  const std::vector<std::string> ids = {"a", "b", "c", "d"};
  const auto p = Partition::from_labels(std::vector<int>{1, 1, 0, -1},
                                        {{0, 1, 2, -1}, {1, 1, 0, -1}});
  std::ostringstream out;
  write_partition(out, ids, p);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "entity_id,community_id,level0_id,level1_id");
  std::istringstream in(out.str());
  EXPECT_EQ(read_partition(in, ids), p);
  std::istringstream short_in("entity_id,community_id,level0_id\na,0,0\n");
  EXPECT_THROW(read_partition(short_in, ids), DataError);
}

TEST(ModularityTest, WorkedExamples) {
  const auto g = two_triangles();
  EXPECT_NEAR(modularity(g, Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1})),
              0.5, 1e-15);
  EXPECT_NEAR(modularity(g, Partition::from_labels(std::vector<int>(6, 0))), 0.0, 1e-15);
  const auto edge = make_graph(2, {{0, 1}});
  EXPECT_NEAR(modularity(edge, Partition::from_labels(std::vector<int>{0, 1})), -0.5,
              1e-15);
  const auto empty = make_graph(3, {});
  EXPECT_THROW(modularity(empty, Partition::from_labels(std::vector<int>{0, 1, 2})),
               UndefinedModularityError);
}

TEST(ModularityTest, MatchesNewmanDoubleSum) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> size(2, 20);
  for (int t = 0; t < 200; ++t) {
    const auto g = testing::random_graph(rng, size(rng), 0.3, t % 2 == 1);
    if (g.m() == 0) continue;
    const auto labels = testing::random_labels(rng, g.n(), 4);
    const auto p = Partition::from_labels(labels);
    EXPECT_NEAR(modularity(g, p), brute_modularity(g, labels), 1e-12);
    EXPECT_GE(modularity(g, p), -0.5 - 1e-12);
    EXPECT_LE(modularity(g, p), 1.0);
  }
}

TEST(AggregateTest, PreservesModularity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_graph(rng, 18, 0.25, true);
    if (g.m() == 0) continue;
    const auto labels = canonical_labels(testing::random_labels(rng, g.n(), 5));
    const CommunityGraph cg(g);
    const auto agg = aggregate(cg, labels);
    std::vector<int> identity(agg.n());
    std::iota(identity.begin(), identity.end(), 0);
    EXPECT_NEAR(modularity(agg, identity), modularity(cg, labels), 1e-12);
    EXPECT_NEAR(agg.total_degree(), cg.total_degree(), 1e-9);
    // Every node in one community: Q = 0 on both levels.
    EXPECT_NEAR(modularity(agg, std::vector<int>(agg.n(), 0)), 0.0, 1e-12);
  }
}

TEST(AggregateTest, LoopsCountInternalWeightTwice) {
  const CommunityGraph cg(two_triangles());
  const auto agg = aggregate(cg, std::vector<int>{0, 0, 0, 1, 1, 1});
  ASSERT_EQ(agg.n(), 2u);
  EXPECT_EQ(agg.loop(0), 6.0);
  EXPECT_EQ(agg.degree(0), 6.0);
  EXPECT_TRUE(agg.neighbors(0).empty());
}

TEST(LocalPassTest, TrianglesFromSingletons) {
  const CommunityGraph cg(two_triangles());
  std::vector<int> start(6);
  std::iota(start.begin(), start.end(), 0);
  const auto r = louvain_local_pass(cg, start, {});
  EXPECT_EQ(canonical_labels(r.labels), (std::vector<int>{0, 0, 0, 1, 1, 1}));
  EXPECT_GT(r.moved, 0u);
}

TEST(LocalPassTest, StarCollapsesToOneCommunity) {
  // K1,3: any leaf joining the hub gains; in the end all four share one
  // community (Q = 0 beats every split that strands a leaf).
  const CommunityGraph cg(make_graph(4, {{0, 1}, {0, 2}, {0, 3}}));
  std::vector<int> start = {0, 1, 2, 3};
  const auto r = louvain_local_pass(cg, start, {});
  const auto labels = canonical_labels(r.labels);
  EXPECT_NEAR(modularity(cg, labels), 0.0, 1e-12);
}

TEST(LocalPassTest, ObserverSeesPositiveGainsMatchingQ) {
  std::mt19937_64 rng(13);
  const auto g = planted_blocks(rng, 3, 8, 0.7, 0.05);
  const CommunityGraph cg(g);
  std::vector<int> start(g.n());
  std::iota(start.begin(), start.end(), 0);
  double q = modularity(cg, start);
  std::size_t moves = 0;
  louvain_local_pass(cg, start, {}, 0, [&](const MoveEvent& e, std::span<const int> labels) {
    const double now = modularity(cg, std::vector<int>(labels.begin(), labels.end()));
    EXPECT_GT(e.delta_q, 0.0);
    EXPECT_NEAR(now - q, e.delta_q, 1e-12);
    q = now;
    ++moves;
  });
  EXPECT_GT(moves, 0u);
}

TEST(LouvainTest, RecoversPlantedBlocks) {
  std::mt19937_64 rng(99);
  const auto g = planted_blocks(rng, 4, 10, 0.8, 0.02);
  const auto p = louvain(g);
  ASSERT_EQ(p.n_communities(), 4u);
  for (std::uint32_t i = 0; i < g.n(); ++i) {
    EXPECT_EQ(p.community_of(i), p.community_of(i / 10 * 10));
  }
}

TEST(LouvainTest, IsolatedNodesAreUnassigned) {
  const Graph g(testing::numbered_ids(5), {{0, 1, 1.0}, {1, 2, 1.0}});
  const auto p = louvain(g);
  EXPECT_EQ(p.community_of(3), kUnassigned);
  EXPECT_EQ(p.community_of(4), kUnassigned);
  EXPECT_EQ(p.unassigned_count(), 2u);
  EXPECT_THROW(louvain(make_graph(3, {})), UndefinedModularityError);
}

TEST(LouvainTest, LevelsCoarsenAndEndWithTheResult) {
  std::mt19937_64 rng(5);
  const auto g = planted_blocks(rng, 6, 6, 0.6, 0.05);
  const auto p = louvain(g);
  ASSERT_FALSE(p.levels().empty());
  EXPECT_EQ(p.levels().back(), std::vector<int>(p.labels().begin(), p.labels().end()));
  // Each level merges whole communities of the previous one, and Q never
  // drops from one level to the next.
  double prev_q = -1.0;
  for (std::size_t l = 0; l < p.levels().size(); ++l) {
    const auto& level = p.levels()[l];
    const double q = brute_modularity(g, level);
    EXPECT_GE(q, prev_q - 1e-12);
    prev_q = q;
    if (l == 0) continue;
    const auto& finer = p.levels()[l - 1];
    for (std::size_t i = 0; i < g.n(); ++i) {
      for (std::size_t j = 0; j < g.n(); ++j) {
        if (finer[i] == finer[j]) EXPECT_EQ(level[i], level[j]);
      }
    }
  }
}

TEST(LouvainTest, QNeverDecreasesAcrossMovesAndLevels) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto g = testing::random_graph(rng, 25, 0.15, t % 2 == 0);
    if (g.m() == 0) continue;
    std::size_t current_level = 0;
    double last_q = -1.0;
    LouvainConfig cfg;
    cfg.node_order = t % 3 == 0 ? NodeOrder::kShuffle : NodeOrder::kInput;
    cfg.seed = static_cast<std::uint64_t>(t);
    louvain(g, cfg, [&](const MoveEvent& e, std::span<const int>) {
      EXPECT_GE(e.level, current_level);
      current_level = e.level;
      EXPECT_GT(e.delta_q, 0.0);
    });
    const auto p = louvain(g, cfg);
    for (const auto& level : p.levels()) {
      const double q = brute_modularity(g, level);
      EXPECT_GE(q, last_q - 1e-12);
      last_q = q;
    }
  }
}

TEST(LouvainTest, DeterministicForFixedSeed) {
  std::mt19937_64 rng(8);
  const auto g = testing::random_graph(rng, 60, 0.08, true);
  LouvainConfig cfg;
  cfg.node_order = NodeOrder::kShuffle;
  cfg.seed = 1234;
  EXPECT_EQ(louvain(g, cfg), louvain(g, cfg));
  EXPECT_EQ(louvain(g), louvain(g));
}

TEST(LouvainTest, MinGainStopsSmallMoves) {
  const auto g = two_triangles();
  LouvainConfig cfg;
  cfg.min_gain = 1.0;  // no move can gain that much
  const auto p = louvain(g, cfg);
  EXPECT_EQ(p.n_communities(), 6u);
}

TEST(LouvainTest, KarateClubReachesKnownModularity) {
  const auto g = testing::karate_graph(COOPNET_TEST_DATA_DIR);
  ASSERT_EQ(g.m(), 78u);
  const auto p = louvain(g);
  EXPECT_GE(modularity(g, p), 0.40);
}

}  // namespace
}  // namespace coopnet

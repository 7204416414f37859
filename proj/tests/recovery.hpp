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

// Planted-recovery harness shared by the synthgen tests and the acceptance
// suite: generate, detect, score.

#ifndef COOPNET_TESTS_RECOVERY_HPP_
#define COOPNET_TESTS_RECOVERY_HPP_

#include <algorithm>
#include <random>

#include "coopnet/community.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/metrics.hpp"
#include "coopnet/seeding.hpp"
#include "coopnet/similarity.hpp"
#include "coopnet/synthgen.hpp"

namespace coopnet::testing {

struct Recovery {
  double accuracy = 0.0;
  // Mean accuracy of the same partition against shuffled labels.
  double chance = 0.0;
  std::size_t communities = 0;
};

inline Recovery recover(const SynthConfig& cfg, double quantile = 0.95,
                        int permutations = 20) {
  const auto data = generate(cfg);
  const auto& m = data.matrix;
  const auto d = pairwise_distances(m, DistanceMode::kPlain);
  const auto s = reciprocal_similarity(d);
  const auto sparse = sparsify(s, quantile_cutoff(empirical_cdf(s), quantile));
  const auto g = build_graph(sparse, m.entity_ids());
  LouvainConfig lc;
  lc.seed = derive_seed(cfg.seed, "louvain");
  const auto p = g.m() > 0 ? louvain(g, lc)
                           : Partition::from_labels(std::vector<int>(g.n(), kUnassigned));

  Recovery r;
  r.communities = p.n_communities();
  r.accuracy = label_agreement(p, data.metadata).accuracy;
  std::mt19937_64 rng(derive_seed(cfg.seed, "permutation"));
  auto shuffled = data.metadata;
  for (int t = 0; t < permutations; ++t) {
    std::vector<std::optional<std::string>> labels;
    for (const auto& x : shuffled) labels.push_back(x.label);
    std::shuffle(labels.begin(), labels.end(), rng);
    for (std::size_t i = 0; i < labels.size(); ++i) shuffled[i].label = labels[i];
    r.chance += label_agreement(p, shuffled).accuracy;
  }
  r.chance /= permutations;
  return r;
}

}  // namespace coopnet::testing

#endif  // COOPNET_TESTS_RECOVERY_HPP_

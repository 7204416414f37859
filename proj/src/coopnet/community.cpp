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

#include "coopnet/community.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "coopnet/errors.hpp"
#include "coopnet/seeding.hpp"
#include "coopnet/text.hpp"

namespace coopnet {

std::vector<int> canonical_labels(std::span<const int> labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(labels.size(), kUnassigned);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto [it, inserted] =
        remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

Partition Partition::from_labels(std::span<const int> labels,
                                 std::vector<std::vector<int>> levels) {
  Partition p;
  p.community_of_ = canonical_labels(labels);
  for (std::size_t i = 0; i < p.community_of_.size(); ++i) {
    const int c = p.community_of_[i];
    if (c < 0) continue;
    if (static_cast<std::size_t>(c) >= p.communities_.size()) {
      p.communities_.resize(static_cast<std::size_t>(c) + 1);
    }
    p.communities_[static_cast<std::size_t>(c)].push_back(
        static_cast<std::uint32_t>(i));
  }
  for (auto& level : levels) {
    if (level.size() != labels.size()) {
      throw DataError("partition level size mismatch");
    }
    level = canonical_labels(level);
  }
  if (levels.empty()) levels.push_back(p.community_of_);
  p.levels_ = std::move(levels);
  return p;
}

std::size_t Partition::unassigned_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(community_of_.begin(), community_of_.end(), kUnassigned));
}

CommunityGraph::CommunityGraph(const Graph& g)
    : adjacency_(g.n()), loops_(g.n(), 0.0) {
  for (std::size_t i = 0; i < g.n(); ++i) {
    const auto nb = g.neighbors(i);
    adjacency_[i].assign(nb.begin(), nb.end());
  }
  finish();
}

CommunityGraph::CommunityGraph(std::vector<std::vector<Neighbor>> adjacency,
                               std::vector<double> loops)
    : adjacency_(std::move(adjacency)), loops_(std::move(loops)) {
  if (loops_.size() != adjacency_.size()) {
    throw DataError("loop vector size mismatch");
  }
  finish();
}

void CommunityGraph::finish() {
  degree_.assign(adjacency_.size(), 0.0);
  total_degree_ = 0.0;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    double d = loops_[i];
    for (const auto& nb : adjacency_[i]) d += nb.weight;
    degree_[i] = d;
    total_degree_ += d;
  }
}

double modularity(const CommunityGraph& g, std::span<const int> labels) {
  if (labels.size() != g.n()) throw DataError("label vector size mismatch");
  const double two_m = g.total_degree();
  if (!(two_m > 0.0)) {
    throw UndefinedModularityError("modularity is undefined without edges");
  }
  int max_label = -1;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (labels[i] < 0 && g.degree(i) != 0.0) {
      throw DataError("node " + std::to_string(i) +
                      " has edges but no community");
    }
    max_label = std::max(max_label, labels[i]);
  }
  std::vector<double> in(static_cast<std::size_t>(max_label + 1), 0.0);
  std::vector<double> tot(in.size(), 0.0);
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (labels[i] < 0) continue;
    const auto c = static_cast<std::size_t>(labels[i]);
    tot[c] += g.degree(i);
    in[c] += g.loop(i);
    for (const auto& nb : g.neighbors(i)) {
      if (labels[nb.node] == labels[i]) in[c] += nb.weight;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < in.size(); ++c) {
    const double frac = tot[c] / two_m;
    q += in[c] / two_m - frac * frac;
  }
  return q;
}

double modularity(const Graph& g, const Partition& p) {
  if (g.m() == 0) {
    throw UndefinedModularityError("modularity is undefined without edges");
  }
  return modularity(CommunityGraph(g), p.labels());
}

LocalPassResult louvain_local_pass(const CommunityGraph& g, std::vector<int> labels,
                                   const LouvainConfig& cfg, std::size_t level,
                                   const MoveObserver& observer) {
  const std::size_t n = g.n();
  if (labels.size() != n) throw DataError("label vector size mismatch");
  if (cfg.min_gain < 0.0) throw ConfigError("min_gain must be >= 0");
  for (int c : labels) {
    if (c < 0 || static_cast<std::size_t>(c) >= n) {
      throw DataError("local pass labels must lie in [0, n)");
    }
  }
  LocalPassResult result;
  const double two_m = g.total_degree();
  if (!(two_m > 0.0)) {
    result.labels = std::move(labels);
    return result;
  }
  const double m = two_m / 2.0;

  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    tot[static_cast<std::size_t>(labels[i])] += g.degree(i);
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  if (cfg.node_order == NodeOrder::kShuffle) {
    std::mt19937_64 rng(derive_seed(cfg.seed, "louvain-level-" + std::to_string(level)));
    std::shuffle(order.begin(), order.end(), rng);
  }

  std::vector<double> link(n, 0.0);
  std::vector<int> touched;
  touched.reserve(64);

  for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    std::size_t moved_this_sweep = 0;
    ++result.sweeps;
    for (const auto i : order) {
      const double k = g.degree(i);
      if (k == 0.0) continue;
      const int old_c = labels[i];

      touched.clear();
      for (const auto& nb : g.neighbors(i)) {
        const int c = labels[nb.node];
        if (link[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
        link[static_cast<std::size_t>(c)] += nb.weight;
      }
      std::sort(touched.begin(), touched.end());

      tot[static_cast<std::size_t>(old_c)] -= k;
      auto gain = [&](int c) {
        return link[static_cast<std::size_t>(c)] -
               tot[static_cast<std::size_t>(c)] * k / two_m;
      };
      const double stay = gain(old_c);
      // Gains are compared in edge-weight units; the slack absorbs rounding
      // so that a zero-gain move never registers as positive.
      const double slack = 1e-12 * std::max(1.0, k);
      int best = old_c;
      double best_gain = stay;
      for (int c : touched) {
        if (c == old_c) continue;
        const double gc = gain(c);
        // Candidates ascend by id, so a tie keeps the smaller one.
        if (gc > best_gain + slack) {
          best = c;
          best_gain = gc;
        }
      }
      const double delta_q = (best_gain - stay) / m;
      if (best != old_c && best_gain - stay > slack && delta_q > cfg.min_gain) {
        labels[i] = best;
        tot[static_cast<std::size_t>(best)] += k;
        ++moved_this_sweep;
        if (observer) observer({level, i, old_c, best, delta_q}, labels);
      } else {
        tot[static_cast<std::size_t>(old_c)] += k;
      }
      for (int c : touched) link[static_cast<std::size_t>(c)] = 0.0;
    }
    result.moved += moved_this_sweep;
    if (moved_this_sweep == 0) break;
  }
  result.labels = std::move(labels);
  return result;
}

CommunityGraph aggregate(const CommunityGraph& g, std::span<const int> labels) {
  if (labels.size() != g.n()) throw DataError("label vector size mismatch");
  int k = 0;
  for (int c : labels) {
    if (c < 0) throw DataError("aggregate requires every node labelled");
    k = std::max(k, c + 1);
  }
  const auto nk = static_cast<std::size_t>(k);
  std::vector<double> loops(nk, 0.0);
  std::vector<std::unordered_map<std::uint32_t, double>> weights(nk);
  for (std::size_t i = 0; i < g.n(); ++i) {
    const auto ci = static_cast<std::size_t>(labels[i]);
    loops[ci] += g.loop(i);
    for (const auto& nb : g.neighbors(i)) {
      const auto cj = static_cast<std::size_t>(labels[nb.node]);
      if (ci == cj) {
        loops[ci] += nb.weight;  // visited from both endpoints: 2x internal
      } else {
        weights[ci][static_cast<std::uint32_t>(cj)] += nb.weight;
      }
    }
  }
  std::vector<std::vector<Neighbor>> adjacency(nk);
  for (std::size_t c = 0; c < nk; ++c) {
    for (const auto& [d, w] : weights[c]) adjacency[c].push_back({d, w});
    std::sort(adjacency[c].begin(), adjacency[c].end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return CommunityGraph(std::move(adjacency), std::move(loops));
}

Partition louvain(const Graph& g, const LouvainConfig& cfg,
                  const MoveObserver& observer) {
  if (g.m() == 0) {
    throw UndefinedModularityError("louvain needs at least one edge");
  }
  if (cfg.min_gain < 0.0) throw ConfigError("min_gain must be >= 0");

  CommunityGraph level_graph(g);
  // Community of every original node at the current level.
  std::vector<int> projection(g.n());
  std::iota(projection.begin(), projection.end(), 0);
  std::vector<std::vector<int>> levels;

  for (std::size_t pass = 0; pass < cfg.max_passes; ++pass) {
    std::vector<int> start(level_graph.n());
    std::iota(start.begin(), start.end(), 0);
    auto local = louvain_local_pass(level_graph, std::move(start), cfg, pass, observer);
    if (local.moved == 0) break;
    const auto dense = canonical_labels(local.labels);
    for (auto& c : projection) c = dense[static_cast<std::size_t>(c)];
    levels.push_back(projection);
    level_graph = aggregate(level_graph, dense);
  }

  // Isolated nodes never join anything; they are reported as unassigned.
  auto mark_isolated = [&](std::vector<int> labels) {
    for (std::size_t i = 0; i < g.n(); ++i) {
      if (g.degree(i) == 0) labels[i] = kUnassigned;
    }
    return labels;
  };
  for (auto& level : levels) level = mark_isolated(level);
  auto final_labels = mark_isolated(projection);
  if (levels.empty()) levels.push_back(final_labels);
  return Partition::from_labels(final_labels, std::move(levels));
}

void write_partition(std::ostream& out, const std::vector<std::string>& ids,
                     const Partition& p) {
  if (ids.size() != p.n()) throw DataError("partition/id count mismatch");
  out << "entity_id,community_id";
  for (std::size_t l = 0; l < p.levels().size(); ++l) out << ",level" << l << "_id";
  out << '\n';
  for (std::size_t i = 0; i < p.n(); ++i) {
    out << ids[i] << ',' << p.community_of(i);
    for (const auto& level : p.levels()) out << ',' << level[i];
    out << '\n';
  }
}

Partition read_partition(std::istream& in, const std::vector<std::string>& ids) {
  text::CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw EmptyDatasetError("empty partition file");
  if (header.size() < 2 || header[0] != "entity_id" ||
      header[1] != "community_id") {
    throw ParseError(reader.line(), "expected header 'entity_id,community_id,...'");
  }
  const std::size_t n_levels = header.size() - 2;
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);

  std::vector<int> labels(ids.size(), kUnassigned);
  std::vector<std::vector<int>> levels(n_levels, std::vector<int>(ids.size(), kUnassigned));
  std::vector<bool> seen(ids.size(), false);
  std::vector<std::string> fields;
  auto parse_label = [&](const std::string& s) {
    auto v = text::parse_int(s);
    if (!v || *v < -1 || *v > 0x7fffffff) {
      throw ParseError(reader.line(), "bad community id '" + s + "'");
    }
    return static_cast<int>(*v);
  };
  while (reader.next(fields)) {
    if (fields.size() != header.size()) {
      throw ParseError(reader.line(), "expected " + std::to_string(header.size()) +
                                          " fields");
    }
    auto it = index.find(fields[0]);
    if (it == index.end()) {
      throw ParseError(reader.line(), "unknown entity '" + fields[0] + "'");
    }
    if (seen[it->second]) {
      throw ParseError(reader.line(), "duplicate entity '" + fields[0] + "'");
    }
    seen[it->second] = true;
    labels[it->second] = parse_label(fields[1]);
    for (std::size_t l = 0; l < n_levels; ++l) {
      levels[l][it->second] = parse_label(fields[2 + l]);
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen[i]) throw DataError("partition misses entity '" + ids[i] + "'");
  }
  return Partition::from_labels(labels, std::move(levels));
}

}  // namespace coopnet

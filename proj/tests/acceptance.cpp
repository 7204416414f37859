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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "coopnet/community.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/layout.hpp"
#include "coopnet/metrics.hpp"
#include "coopnet/pipeline.hpp"
#include "coopnet/similarity.hpp"
#include "coopnet/synthgen.hpp"
#include "recovery.hpp"
#include "test_util.hpp"

namespace {

using namespace coopnet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Tolerances and limits, pinned.
constexpr double kOracleTolerance = 1e-12;
constexpr double kMetricOracleSeconds = 10.0;
constexpr double kKarateMinQ = 0.40;
constexpr double kKarateSeconds = 1.0;
constexpr double kPlantedMinAccuracy = 0.90;
constexpr double kChanceGap = 0.1;
constexpr double kPlantedSeconds = 60.0;
constexpr std::size_t kSparsifyN = 10000;
constexpr std::size_t kSparsifyKeep = 500;
constexpr double kEquilibrium = 2.0;
constexpr double kEquilibriumTolerance = 0.01;
constexpr std::size_t kLayoutIterations = 1000;
constexpr double kCentroidDrift = 1e-9;
constexpr double kLayoutSeconds = 1.0;
constexpr double kDeskSeconds = 30.0;
constexpr double kOptimumMargin = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. Conductance and modularity against brute-force enumeration.
Outcome metric_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> size(2, 20);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  std::uniform_int_distribution<int> groups(1, 6);
  double worst = 0.0;
  int graphs = 0;
  while (graphs < 200) {
    const auto g = testing::random_graph(rng, size(rng), density(rng), graphs % 2 == 1);
    if (g.m() == 0) continue;
    ++graphs;
    const auto p = Partition::from_labels(testing::random_labels(rng, g.n(), groups(rng)));
    const std::vector<int> labels(p.labels().begin(), p.labels().end());
    worst = std::max(worst, std::abs(modularity(g, p) - testing::brute_modularity(g, labels)));
    for (bool weighted : {false, true}) {
      const auto counting = weighted ? Counting::kWeighted : Counting::kBinary;
      for (std::size_t c = 0; c < p.n_communities(); ++c) {
        const auto r = conductance(g, p, static_cast<int>(c), counting);
        const auto o = testing::brute_conductance(g, labels, static_cast<int>(c), weighted);
        worst = std::max({worst, std::abs(r.epsilon_aa - o.aa), std::abs(r.epsilon_ab - o.ab)});
        if (r.value.has_value() != (o.aa > 0)) worst = HUGE_VAL;
        if (r.value) worst = std::max(worst, std::abs(*r.value - o.ab / o.aa));
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kOracleTolerance && secs < kMetricOracleSeconds,
          fmt("200 graphs, max |diff| %.3g (tol %.0e), %.2f s (limit %.0f s)", worst,
              kOracleTolerance, secs, kMetricOracleSeconds)};
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j, ++bit) {
      if (mask >> bit & 1) edges.push_back({i, j, 1.0});
    }
  }
  return Graph(testing::numbered_ids(n), edges);
}

// 2. Exact optimum on small connected graphs, and monotone Q.
Outcome louvain_optimum(const std::string& data_dir) {
  std::ifstream in(data_dir + "/small_graphs.txt");
  std::size_t n = 0;
  std::uint64_t mask = 0;
  std::size_t total = 0, unique = 0, recovered = 0, monotone_violations = 0;
  std::vector<std::string> misses;
  while (in >> n >> mask) {
    ++total;
    const auto g = graph_from_mask(n, mask);
    const CommunityGraph cg(g);
    double best = -HUGE_VAL;
    std::size_t at_best = 0;
    std::vector<int> best_labels;
    testing::for_each_set_partition(n, [&](const std::vector<int>& labels) {
      const double q = modularity(cg, labels);
      if (q > best + kOptimumMargin) {
        best = q;
        at_best = 1;
        best_labels = labels;
      } else if (q > best - kOptimumMargin) {
        ++at_best;
      }
    });

    double last_q = -HUGE_VAL;
    std::size_t last_level = 0;
    double running_q = modularity(cg, [&] {
      std::vector<int> id(n);
      for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
      return id;
    }());
    // Q over the original nodes after every move, across levels.
    std::vector<std::vector<int>> level_maps;
    const auto p = louvain(g, {}, [&](const MoveEvent& e, std::span<const int>) {
      if (e.level < last_level) ++monotone_violations;
      last_level = e.level;
      if (!(e.delta_q > 0.0)) ++monotone_violations;
      running_q += e.delta_q;
    });
    for (const auto& level : p.levels()) {
      const double q = testing::brute_modularity(g, level);
      if (q < last_q - kOracleTolerance) ++monotone_violations;
      last_q = q;
    }
    if (std::abs(running_q - modularity(g, p)) > 1e-9) ++monotone_violations;

    if (at_best != 1) continue;
    ++unique;
    if (canonical_labels(best_labels) == std::vector<int>(p.labels().begin(), p.labels().end())) {
      ++recovered;
    } else if (misses.size() < 3) {
      misses.push_back(fmt("n=%zu mask=%llu Q*=%.4f got %.4f", n,
                           static_cast<unsigned long long>(mask), best, modularity(g, p)));
    }
  }
  std::string detail = fmt("%zu/%zu unique-optimum graphs recovered (%zu graphs scanned), "
                           "%zu monotonicity violations",
                           recovered, unique, total, monotone_violations);
  for (const auto& m : misses) detail += "; miss: " + m;
  return {total > 0 && recovered == unique && monotone_violations == 0, detail};
}

// 3. Karate club.
Outcome karate(const std::string& data_dir) {
  const auto g = testing::karate_graph(data_dir);
  const auto t0 = Clock::now();
  const auto p = louvain(g);
  const double secs = seconds_since(t0);
  const double q = modularity(g, p);
  return {g.m() == 78 && q >= kKarateMinQ && secs < kKarateSeconds,
          fmt("Q = %.4f (min %.2f), %zu communities, %.4f s", q, kKarateMinQ,
              p.n_communities(), secs)};
}

// 4. Planted recovery on the preset.
Outcome planted() {
  const auto t0 = Clock::now();
  double min_acc = 1.0, mean_acc = 0.0, worst_gap = 0.0, mean_null = 0.0, mean_chance = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = tseba_like_preset();
    cfg.seed = seed;
    cfg.p_cross = 0.1 * cfg.p_core;
    const auto r = testing::recover(cfg, 0.95, 1);
    min_acc = std::min(min_acc, r.accuracy);
    mean_acc += r.accuracy / 10.0;

    cfg.p_cross = cfg.p_core;
    const auto null = testing::recover(cfg, 0.95, 20);
    worst_gap = std::max(worst_gap, std::abs(null.accuracy - null.chance));
    mean_null += null.accuracy / 10.0;
    mean_chance += null.chance / 10.0;
  }
  const double secs = seconds_since(t0);
  return {min_acc >= kPlantedMinAccuracy && worst_gap <= kChanceGap && secs < kPlantedSeconds,
          fmt("p_cross=0.1*p_core: min accuracy %.4f, mean %.4f (min %.2f); "
              "p_cross=p_core: mean accuracy %.4f vs chance %.4f, worst gap %.4f (max %.1f); "
              "%.1f s",
              min_acc, mean_acc, kPlantedMinAccuracy, mean_null, mean_chance, worst_gap,
              kChanceGap, secs)};
}

// 5. Sparsification keeps exactly ceil(0.05 N) tie-free values.
Outcome sparsification() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool ok = true;
  std::size_t kept_min = kSparsifyN, kept_max = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // 10 000 pairs over 142 entities (10 011 possible pairs).
    const std::uint32_t n = 142;
    std::vector<SimilarityEntry> entries;
    std::set<double> seen;
    for (std::uint32_t a = 0; a < n && entries.size() < kSparsifyN; ++a) {
      for (std::uint32_t b = a + 1; b < n && entries.size() < kSparsifyN; ++b) {
        double v = u(rng);
        while (!seen.insert(v).second) v = u(rng);
        entries.push_back({a, b, v});
      }
    }
    const SimilarityMatrix s(n, entries);
    const double cutoff = quantile_cutoff(empirical_cdf(s), 0.95);
    const auto kept = sparsify(s, cutoff);
    double min_kept = HUGE_VAL;
    for (const auto& e : kept.entries()) min_kept = std::min(min_kept, e.value);
    kept_min = std::min(kept_min, kept.entries().size());
    kept_max = std::max(kept_max, kept.entries().size());
    ok = ok && s.entries().size() == kSparsifyN && kept.entries().size() == kSparsifyKeep &&
         min_kept > cutoff;
  }
  return {ok, fmt("20 samples of N=%zu: retained %zu..%zu (want %zu), min retained > cutoff",
                  kSparsifyN, kept_min, kept_max, kSparsifyKeep)};
}

// 6. Two-node equilibrium, centroid drift, determinism.
Outcome layout_equilibrium() {
  const auto t0 = Clock::now();
  const Graph g(testing::numbered_ids(2), {{0, 1, 1.0}});
  FA2Params prm;
  prm.k_repulsion = 1.0;
  prm.gravity = 0.0;
  prm.iterations = kLayoutIterations;
  auto st = init_positions(g, prm.seed, prm.speed);
  double drift = 0.0;
  std::size_t steps = 0;
  for (; steps < prm.iterations; ++steps) {
    const Point before{(st.positions[0].x + st.positions[1].x) / 2,
                       (st.positions[0].y + st.positions[1].y) / 2};
    st = fa2_step(g, st, prm);
    const Point after{(st.positions[0].x + st.positions[1].x) / 2,
                      (st.positions[0].y + st.positions[1].y) / 2};
    drift = std::max(drift, std::hypot(after.x - before.x, after.y - before.y));
    if (st.last_max_displacement < prm.tolerance) {
      ++steps;
      break;
    }
  }
  const double d = std::hypot(st.positions[0].x - st.positions[1].x,
                              st.positions[0].y - st.positions[1].y);
  const auto a = fa2_run(g, prm);
  const auto b = fa2_run(g, prm);
  const bool identical = a.state.positions == b.state.positions &&
                         a.state.positions == st.positions;
  const double secs = seconds_since(t0);
  const bool ok = std::abs(d - kEquilibrium) <= kEquilibriumTolerance * kEquilibrium &&
                  steps <= kLayoutIterations && drift < kCentroidDrift && identical &&
                  secs < kLayoutSeconds;
  return {ok, fmt("distance %.6f after %zu steps (target 2 +- 1%%), max centroid drift "
                  "%.3g/step, bit-identical %s, %.4f s",
                  d, steps, drift, identical ? "yes" : "no", secs)};
}

std::string slurp(const fs::path& p) { return testing::read_file(p.string()); }

PipelineConfig preset_run(const fs::path& out) {
  PipelineConfig cfg;
  cfg.synth = nlohmann::json{{"preset", "tseba-like"}};
  cfg.seed = 2026;
  cfg.formats = {ExportFormat::kGexf, ExportFormat::kGraphml};
  cfg.out_dir = out.string();
  return cfg;
}

// 7. Two runs from one manifest are byte-identical.
Outcome determinism(const fs::path& scratch) {
  const auto first = scratch / "first";
  const auto second = scratch / "second";
  run_pipeline(preset_run(first));
  auto manifest = nlohmann::json::parse(slurp(first / "manifest.json"));
  manifest["config"]["output"]["dir"] = second.string();
  run_pipeline(pipeline_config_from_json(manifest));
  std::vector<std::string> differing;
  for (const char* name : {"partition.csv", "report.json", "graph.gexf", "graph.graphml",
                           "positions.csv"}) {
    const auto a = slurp(first / name);
    if (a.empty() || a != slurp(second / name)) differing.push_back(name);
  }
  std::string detail = differing.empty() ? "partition.csv, report.json, graph.gexf, "
                                           "graph.graphml, positions.csv identical"
                                         : "differing:";
  for (const auto& d : differing) detail += " " + d;
  return {differing.empty(), detail};
}

// 8. Desk-scale full pipeline.
Outcome desk_scale(const fs::path& scratch) {
  const auto t0 = Clock::now();
  const auto manifest = run_pipeline(preset_run(scratch / "desk"));
  const double secs = seconds_since(t0);
  const auto& s = manifest.at("stats");
  const auto entities = s.at("entities").get<std::size_t>();
  const auto features = s.at("features").get<std::size_t>();
  const double density = s.at("density").get<double>();
  const bool ok = entities == 509 && features == 759 && density > 0.05 && density < 0.065 &&
                  secs < kDeskSeconds;
  return {ok, fmt("%zux%zu, density %.4f, %zu edges, layout %s after %zu steps, "
                  "%.2f s (limit %.0f s)",
                  entities, features, density, s.at("edges").get<std::size_t>(),
                  s.at("layout_stop").get<std::string>().c_str(),
                  s.at("layout_steps").get<std::size_t>(), secs, kDeskSeconds)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string data_dir = argc > 1 ? argv[1] : COOPNET_TEST_DATA_DIR;
  const auto scratch =
      fs::temp_directory_path() / ("coopnet_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 metric oracle", metric_oracle},
      {"AC2 louvain exact optimum", [&] { return louvain_optimum(data_dir); }},
      {"AC3 karate club", [&] { return karate(data_dir); }},
      {"AC4 planted recovery", planted},
      {"AC5 sparsification", sparsification},
      {"AC6 layout equilibrium", layout_equilibrium},
      {"AC7 pipeline determinism", [&] { return determinism(scratch); }},
      {"AC8 desk-scale performance", [&] { return desk_scale(scratch); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::error_code ec;
  fs::remove_all(scratch, ec);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

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

#include "coopnet/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coopnet/errors.hpp"
#include "coopnet/seeding.hpp"
#include "coopnet/synthgen.hpp"

namespace coopnet {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view distance_mode_name(DistanceMode m) {
  return m == DistanceMode::kPlain ? "plain" : "weighted";
}
DistanceMode parse_distance_mode(std::string_view s) {
  if (s == "plain") return DistanceMode::kPlain;
  if (s == "weighted") return DistanceMode::kWeighted;
  throw ConfigError("unknown distance mode '" + std::string(s) + "'");
}
std::string_view zero_policy_name(ZeroPolicy p) {
  return p == ZeroPolicy::kCapToOne ? "cap_to_one" : "exclude_pair";
}
ZeroPolicy parse_zero_policy(std::string_view s) {
  if (s == "cap_to_one") return ZeroPolicy::kCapToOne;
  if (s == "exclude_pair") return ZeroPolicy::kExcludePair;
  throw ConfigError("unknown zero policy '" + std::string(s) + "'");
}
std::string_view weighting_name(Weighting w) {
  return w == Weighting::kBinary ? "binary" : "similarity";
}
Weighting parse_weighting(std::string_view s) {
  if (s == "binary") return Weighting::kBinary;
  if (s == "similarity") return Weighting::kSimilarity;
  throw ConfigError("unknown weighting '" + std::string(s) + "'");
}
std::string_view node_order_name(NodeOrder o) {
  return o == NodeOrder::kInput ? "input" : "shuffle";
}
NodeOrder parse_node_order(std::string_view s) {
  if (s == "input") return NodeOrder::kInput;
  if (s == "shuffle") return NodeOrder::kShuffle;
  throw ConfigError("unknown node order '" + std::string(s) + "'");
}

json to_json(const PipelineConfig& c) {
  json formats = json::array();
  for (auto f : c.formats) formats.push_back(format_name(f));
  return {
      {"seed", c.seed},
      {"input",
       {{"affiliation", c.affiliation_path},
        {"metadata", c.metadata_path},
        {"synth", c.synth ? *c.synth : json(nullptr)}}},
      {"grade_min", c.scale.min},
      {"grade_max", c.scale.max},
      {"label_set", c.label_set},
      {"similarity",
       {{"mode", distance_mode_name(c.distance_mode)},
        {"zero_policy", zero_policy_name(c.zero_policy)},
        {"quantile", c.quantile},
        {"threads", c.threads}}},
      {"graph", {{"weighting", weighting_name(c.weighting)}}},
      {"louvain",
       {{"max_passes", c.louvain.max_passes},
        {"min_gain", c.louvain.min_gain},
        {"node_order", node_order_name(c.louvain.node_order)}}},
      {"metrics",
       {{"counting", counting_name(c.metrics.counting)},
        {"purity_threshold", c.metrics.agreement.purity_threshold},
        {"ignore_labels", c.metrics.agreement.ignore_labels}}},
      {"layout",
       {{"enabled", c.layout_enabled},
        {"k_repulsion", c.layout.k_repulsion},
        {"gravity", c.layout.gravity},
        {"edge_weight_influence", c.layout.edge_weight_influence},
        {"iterations", c.layout.iterations},
        {"speed", c.layout.speed},
        {"tolerance", c.layout.tolerance},
        {"jitter_tolerance", c.layout.jitter_tolerance},
        {"max_step_fraction", c.layout.max_step_fraction}}},
      {"output",
       {{"dir", c.out_dir},
        {"formats", formats},
        {"dump_similarity", c.dump_similarity},
        {"dump_cdf", c.dump_cdf}}},
  };
}

namespace {

void check_keys(const json& given, const json& known, const std::string& path) {
  for (auto it = given.begin(); it != given.end(); ++it) {
    const auto key = path.empty() ? it.key() : path + "." + it.key();
    if (!known.contains(it.key())) throw ConfigError("unknown config key '" + key + "'");
    if (key == "input.synth") continue;
    if (it->is_object() && known.at(it.key()).is_object()) {
      check_keys(*it, known.at(it.key()), key);
    }
  }
}

}  // namespace

PipelineConfig pipeline_config_from_json(const json& raw) {
  const json& user = raw.contains("config") && raw.contains("coopnet_version")
                         ? raw.at("config")
                         : raw;
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  const json defaults = to_json(PipelineConfig{});
  check_keys(user, defaults, "");
  json j = defaults;
  j.merge_patch(user);

  PipelineConfig c;
  try {
    c.seed = j.at("seed").get<std::uint64_t>();
    const auto& in = j.at("input");
    c.affiliation_path = in.at("affiliation").get<std::string>();
    c.metadata_path = in.at("metadata").get<std::string>();
    // merge_patch drops nulls, so a missing key means "no synth".
    if (in.contains("synth") && !in.at("synth").is_null()) {
      c.synth = in.at("synth");
      if (!c.synth->is_object()) throw ConfigError("input.synth must be an object");
    }
    c.scale = {j.at("grade_min").get<double>(), j.at("grade_max").get<double>()};
    c.label_set = j.at("label_set").get<std::vector<std::string>>();

    const auto& s = j.at("similarity");
    c.distance_mode = parse_distance_mode(s.at("mode").get<std::string>());
    c.zero_policy = parse_zero_policy(s.at("zero_policy").get<std::string>());
    c.quantile = s.at("quantile").get<double>();
    c.threads = s.at("threads").get<unsigned>();

    c.weighting = parse_weighting(j.at("graph").at("weighting").get<std::string>());

    const auto& lv = j.at("louvain");
    c.louvain.max_passes = lv.at("max_passes").get<std::size_t>();
    c.louvain.min_gain = lv.at("min_gain").get<double>();
    c.louvain.node_order = parse_node_order(lv.at("node_order").get<std::string>());

    const auto& mt = j.at("metrics");
    c.metrics.counting = parse_counting(mt.at("counting").get<std::string>());
    c.metrics.agreement.purity_threshold = mt.at("purity_threshold").get<double>();
    c.metrics.agreement.ignore_labels =
        mt.at("ignore_labels").get<std::vector<std::string>>();

    const auto& ly = j.at("layout");
    c.layout_enabled = ly.at("enabled").get<bool>();
    c.layout.k_repulsion = ly.at("k_repulsion").get<double>();
    c.layout.gravity = ly.at("gravity").get<double>();
    c.layout.edge_weight_influence = ly.at("edge_weight_influence").get<double>();
    c.layout.iterations = ly.at("iterations").get<std::size_t>();
    c.layout.speed = ly.at("speed").get<double>();
    c.layout.tolerance = ly.at("tolerance").get<double>();
    c.layout.jitter_tolerance = ly.at("jitter_tolerance").get<double>();
    c.layout.max_step_fraction = ly.at("max_step_fraction").get<double>();

    const auto& out = j.at("output");
    c.out_dir = out.at("dir").get<std::string>();
    c.formats.clear();
    for (const auto& f : out.at("formats")) {
      c.formats.push_back(parse_format(f.get<std::string>()));
    }
    c.dump_similarity = out.at("dump_similarity").get<bool>();
    c.dump_cdf = out.at("dump_cdf").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (!(c.quantile >= 0.0 && c.quantile < 1.0)) {
    throw ConfigError("similarity.quantile must lie in [0, 1)");
  }
  if (!(c.scale.min < c.scale.max)) throw ConfigError("grade_min must be < grade_max");
  if (c.louvain.min_gain < 0.0) throw ConfigError("louvain.min_gain must be >= 0");
  if (!(c.metrics.agreement.purity_threshold >= 0.0 &&
        c.metrics.agreement.purity_threshold <= 1.0)) {
    throw ConfigError("metrics.purity_threshold must lie in [0, 1]");
  }
  validate(c.layout);
  return c;
}

namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string(what) + " file '" + path + "' not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class StageTimer {
 public:
  explicit StageTimer(json& timings) : timings_(timings) {}

  template <typename F>
  auto run(const char* stage, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        record(stage, start);
      } else {
        auto result = body();
        record(stage, start);
        return result;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("stage '") + stage + "': " + e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorKind::kInternal,
                  std::string("stage '") + stage + "': " + e.what());
    }
  }

 private:
  void record(const char* stage, std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    timings_[stage] = std::chrono::duration<double, std::milli>(elapsed).count();
  }

  json& timings_;
};

}  // namespace

namespace {

SynthConfig synth_config(const PipelineConfig& cfg) {
  if (!cfg.synth) throw ConfigError("no synthetic input configured");
  auto scfg = synth_config_from_json(*cfg.synth);
  scfg.seed = derive_seed(cfg.seed, "synth");
  scfg.scale = cfg.scale;
  return scfg;
}

}  // namespace

SynthResult pipeline_synth(const PipelineConfig& cfg) {
  return generate(synth_config(cfg));
}

PipelineOutputs run_pipeline_in_memory(const PipelineConfig& cfg) {
  PipelineOutputs out;
  json timings = json::object();
  json stats = json::object();
  json warnings = json::array();
  StageTimer timer(timings);

  const json seeds = {
      {"root", cfg.seed},
      {"synth", derive_seed(cfg.seed, "synth")},
      {"louvain", derive_seed(cfg.seed, "louvain")},
      {"layout", derive_seed(cfg.seed, "layout")},
  };

  // Checked here, not when parsing, so stage commands can name inputs on
  // the command line.
  if (!cfg.synth && cfg.affiliation_path.empty()) {
    throw ConfigError("either input.affiliation or input.synth is required");
  }
  AffiliationMatrix matrix;
  std::vector<EntityMetadata> metadata;
  timer.run("ingest", [&] {
    if (cfg.synth) {
      auto synth = pipeline_synth(cfg);
      std::ostringstream aff, meta, truth;
      write_affiliation(aff, synth.matrix);
      write_metadata(meta, synth.metadata);
      write_partition(truth, synth.matrix.entity_ids(), synth.truth);
      out.files["affiliation.csv"] = aff.str();
      out.files["metadata.csv"] = meta.str();
      out.files["truth.csv"] = truth.str();
      // Validate exactly what a later standalone run would read back.
      std::istringstream aff_in(aff.str());
      matrix = load_affiliation(aff_in).matrix;
      std::istringstream meta_in(meta.str());
      metadata = align_metadata(matrix.entity_ids(),
                                load_metadata(meta_in, {cfg.scale, cfg.label_set}));
      stats["synth_config"] = to_json(synth_config(cfg));
    } else {
      std::istringstream aff_in(read_file(cfg.affiliation_path, "affiliation"));
      auto loaded = load_affiliation(aff_in);
      matrix = std::move(loaded.matrix);
      stats["declarations"] = loaded.diagnostics.declarations;
      stats["duplicate_declarations"] = loaded.diagnostics.duplicates;
      if (!cfg.metadata_path.empty()) {
        std::istringstream meta_in(read_file(cfg.metadata_path, "metadata"));
        metadata = align_metadata(
            matrix.entity_ids(), load_metadata(meta_in, {cfg.scale, cfg.label_set}));
      }
    }
    const auto ms = matrix_stats(matrix);
    stats["entities"] = ms.n_entities;
    stats["features"] = ms.n_features;
    stats["cells"] = ms.n_cells;
    stats["density"] = ms.density;
  });

  const auto& ids = matrix.entity_ids();
  SimilarityMatrix dense = timer.run("similarity", [&] {
    const auto d = pairwise_distances(matrix, cfg.distance_mode, {}, cfg.threads);
    return reciprocal_similarity(d, cfg.zero_policy);
  });

  SimilarityMatrix sparse = timer.run("cutoff", [&] {
    const auto cdf = empirical_cdf(dense);
    const double cutoff = quantile_cutoff(cdf, cfg.quantile);
    auto s = sparsify(dense, cutoff);
    stats["cutoff"] = cutoff;
    stats["similarity_pairs"] = dense.entries().size();
    stats["retained_pairs"] = s.entries().size();
    stats["retained_fraction"] = s.retained_fraction();
    if (s.entries().empty()) warnings.push_back("cutoff removed every pair");
    if (cfg.dump_cdf) {
      std::ostringstream os;
      write_cdf(os, cdf);
      out.files["cdf.csv"] = os.str();
    }
    if (cfg.dump_similarity) {
      std::ostringstream os;
      write_similarity(os, s, ids, 10);
      out.files["similarity.csv"] = os.str();
    }
    return s;
  });

  Graph graph = timer.run("graph", [&] {
    auto g = build_graph(sparse, ids, cfg.weighting);
    stats["edges"] = g.m();
    return g;
  });

  Partition partition = timer.run("detect", [&] {
    auto lcfg = cfg.louvain;
    lcfg.seed = seeds.at("louvain").get<std::uint64_t>();
    auto p = louvain(graph, lcfg);
    stats["communities"] = p.n_communities();
    stats["unassigned"] = p.unassigned_count();
    stats["levels"] = p.levels().size();
    stats["modularity"] = modularity(graph, p);
    std::ostringstream os;
    write_partition(os, ids, p);
    out.files["partition.csv"] = os.str();
    return p;
  });

  timer.run("metrics", [&] {
    const auto report = coopetition_report(graph, partition, metadata, cfg.metrics);
    out.files["report.json"] = to_json(report).dump(2) + "\n";
    out.files["report.txt"] = to_text(report);
  });

  std::vector<Point> positions;
  if (cfg.layout_enabled) {
    timer.run("layout", [&] {
      auto params = cfg.layout;
      params.seed = seeds.at("layout").get<std::uint64_t>();
      auto result = fa2_run(graph, params);
      stats["layout_stop"] = stop_reason_name(result.stop);
      stats["layout_steps"] = result.steps;
      positions = std::move(result.state.positions);
      std::ostringstream os;
      write_positions(os, ids, positions);
      out.files["positions.csv"] = os.str();
    });
  }

  timer.run("export", [&] {
    for (auto f : cfg.formats) {
      std::ostringstream os;
      export_graph(os, graph, f, positions, partition.labels());
      out.files["graph." + std::string(format_name(f))] = os.str();
    }
  });

  json files = json::array();
  for (const auto& [name, _] : out.files) files.push_back(name);
  files.push_back("manifest.json");
  out.manifest = {
      {"coopnet_version", kVersion},
      {"config", to_json(cfg)},
      {"seeds", seeds},
      {"stats", stats},
      {"warnings", warnings},
      {"timings_ms", timings},
      {"outputs", files},
  };
  return out;
}

json run_pipeline(const PipelineConfig& cfg) {
  auto outputs = run_pipeline_in_memory(cfg);
  outputs.files["manifest.json"] = outputs.manifest.dump(2) + "\n";

  std::vector<fs::path> written;
  try {
    fs::create_directories(cfg.out_dir);
    for (const auto& [name, body] : outputs.files) {
      const auto path = fs::path(cfg.out_dir) / name;
      std::ofstream os(path, std::ios::binary | std::ios::trunc);
      if (!os) throw DataError("cannot write '" + path.string() + "'");
      written.push_back(path);
      os << body;
      if (!os.flush()) throw DataError("cannot write '" + path.string() + "'");
    }
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
      throw Error(err->kind(), std::string("stage 'write': ") + e.what());
    }
    throw DataError(std::string("stage 'write': ") + e.what());
  }
  return outputs.manifest;
}

}  // namespace coopnet

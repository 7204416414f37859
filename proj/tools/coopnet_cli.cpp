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

// Command-line front end. Every stage of a run is a subcommand reading and
// writing files, and `run` performs the whole chain in one go.

#include <coopnet/coopnet.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;

// A failed library call; carries the status to turn into an exit code.
struct Failure : std::runtime_error {
  Failure(coopnet_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
  coopnet_status status;
};

void check(coopnet_status s, const std::string& context) {
  if (s != COOPNET_OK) throw Failure(s, context + ": " + coopnet_last_error());
}

int exit_code(coopnet_status s) {
  switch (s) {
    case COOPNET_OK: return 0;
    case COOPNET_ERR_CONFIG: return 2;
    case COOPNET_ERR_DATA: return 3;
    case COOPNET_ERR_NUMERIC: return 4;
    case COOPNET_ERR_INVALID_ARGUMENT: return kExitUsage;
    case COOPNET_ERR_INTERNAL: return 1;
  }
  return 1;
}

struct StringDeleter {
  void operator()(char* s) const { coopnet_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Matrix = std::unique_ptr<coopnet_matrix_t,
                               HandleDeleter<coopnet_matrix_t, coopnet_matrix_free>>;
using Metadata =
    std::unique_ptr<coopnet_metadata_t,
                    HandleDeleter<coopnet_metadata_t, coopnet_metadata_free>>;
using Similarity =
    std::unique_ptr<coopnet_similarity_t,
                    HandleDeleter<coopnet_similarity_t, coopnet_similarity_free>>;
using Graph = std::unique_ptr<coopnet_graph_t,
                              HandleDeleter<coopnet_graph_t, coopnet_graph_free>>;
using Partition =
    std::unique_ptr<coopnet_partition_t,
                    HandleDeleter<coopnet_partition_t, coopnet_partition_free>>;
using Layout = std::unique_ptr<coopnet_layout_t,
                               HandleDeleter<coopnet_layout_t, coopnet_layout_free>>;
using Report = std::unique_ptr<coopnet_report_t,
                               HandleDeleter<coopnet_report_t, coopnet_report_free>>;

std::string take(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(COOPNET_ERR_CONFIG, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Files written so far by this invocation; removed again on failure.
std::vector<fs::path> g_written;

void write_text(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure(COOPNET_ERR_DATA, "cannot write '" + path.string() + "'");
  g_written.push_back(path);
  out << body;
  if (!out.flush()) {
    throw Failure(COOPNET_ERR_DATA, "cannot write '" + path.string() + "'");
  }
}

// ---- Configuration ---------------------------------------------------------

// Parses an override value: JSON when it parses, a bare string otherwise.
json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return text;
  }
}

void set_dotted(json& cfg, const std::string& key, const json& value) {
  json* node = &cfg;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const auto part = key.substr(start, dot - start);
    if (part.empty()) throw Failure(COOPNET_ERR_CONFIG, "bad option key '" + key + "'");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    if (!node->contains(part) || !(*node)[part].is_object()) {
      (*node)[part] = json::object();
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

struct ConfigOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> quantile;
  std::optional<std::string> out_dir;
};

void add_config_options(CLI::App* cmd, ConfigOptions& o) {
  cmd->add_option("-c,--config", o.config_path,
                  "JSON config file or run manifest");
  cmd->add_option("--seed", o.seed, "Root seed of the run");
  cmd->add_option("--quantile", o.quantile, "Similarity quantile to cut at");
  cmd->add_option("-o,--out-dir", o.out_dir, "Output directory");
  cmd->allow_extras();
}

// Config file, then `--key=value` overrides, then the named flags; returns
// the validated configuration with all defaults present.
json resolve_config(const CLI::App* cmd, const ConfigOptions& o) {
  json cfg = json::object();
  if (!o.config_path.empty()) {
    try {
      cfg = json::parse(read_text(o.config_path));
    } catch (const json::exception& e) {
      throw Failure(COOPNET_ERR_CONFIG,
                    "config '" + o.config_path + "': " + e.what());
    }
    if (cfg.contains("config") && cfg.contains("coopnet_version")) {
      cfg = cfg["config"];
    }
  }
  const auto extras = cmd->remaining();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const auto& arg = extras[i];
    if (arg.rfind("--", 0) != 0) {
      throw Failure(COOPNET_ERR_CONFIG, "unexpected argument '" + arg + "'");
    }
    auto body = arg.substr(2);
    std::string value;
    if (const auto eq = body.find('='); eq != std::string::npos) {
      value = body.substr(eq + 1);
      body.resize(eq);
    } else if (i + 1 < extras.size() && extras[i + 1].rfind("--", 0) != 0) {
      value = extras[++i];
    } else {
      throw Failure(COOPNET_ERR_CONFIG, "option '" + arg + "' needs a value");
    }
    set_dotted(cfg, body, parse_value(value));
  }
  if (o.seed) cfg["seed"] = *o.seed;
  if (o.quantile) cfg["similarity"]["quantile"] = *o.quantile;
  if (o.out_dir) cfg["output"]["dir"] = *o.out_dir;

  char* normalized = nullptr;
  check(coopnet_pipeline_normalize_config(cfg.dump().c_str(), &normalized), "config");
  return json::parse(take(normalized));
}

fs::path out_dir(const json& cfg) { return cfg["output"]["dir"].get<std::string>(); }

coopnet_distance_mode distance_mode(const json& cfg) {
  return cfg["similarity"]["mode"] == "weighted" ? COOPNET_DISTANCE_WEIGHTED
                                                 : COOPNET_DISTANCE_PLAIN;
}

coopnet_zero_policy zero_policy(const json& cfg) {
  return cfg["similarity"]["zero_policy"] == "exclude_pair" ? COOPNET_ZERO_EXCLUDE_PAIR
                                                            : COOPNET_ZERO_CAP_TO_ONE;
}

coopnet_weighting weighting(const json& cfg) {
  return cfg["graph"]["weighting"] == "binary" ? COOPNET_WEIGHTING_BINARY
                                               : COOPNET_WEIGHTING_SIMILARITY;
}

// ---- Stage inputs ----------------------------------------------------------

std::string affiliation_path(const json& cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  const auto path = cfg["input"]["affiliation"].get<std::string>();
  if (path.empty()) {
    throw Failure(COOPNET_ERR_CONFIG,
                  "no affiliation input (use --affiliation or input.affiliation)");
  }
  return path;
}

Matrix load_matrix(const std::string& path) {
  coopnet_matrix_t* m = nullptr;
  check(coopnet_matrix_load(read_text(path).c_str(), &m), "affiliation '" + path + "'");
  return Matrix(m);
}

Metadata load_metadata(const json& cfg, const coopnet_matrix_t* m,
                       const std::string& path) {
  std::vector<std::string> labels = cfg["label_set"].get<std::vector<std::string>>();
  std::vector<const char*> ptrs;
  for (const auto& l : labels) ptrs.push_back(l.c_str());
  coopnet_metadata_t* meta = nullptr;
  check(coopnet_metadata_load(m, read_text(path).c_str(),
                              cfg["grade_min"].get<double>(),
                              cfg["grade_max"].get<double>(),
                              ptrs.empty() ? nullptr : ptrs.data(), ptrs.size(), &meta),
        "metadata '" + path + "'");
  return Metadata(meta);
}

Similarity load_similarity(const coopnet_matrix_t* m, const std::string& path) {
  coopnet_similarity_t* s = nullptr;
  check(coopnet_similarity_load(m, read_text(path).c_str(), &s),
        "similarity '" + path + "'");
  return Similarity(s);
}

Graph load_graph(const std::string& path) {
  coopnet_graph_t* g = nullptr;
  check(coopnet_graph_load_jsonl(read_text(path).c_str(), &g), "graph '" + path + "'");
  return Graph(g);
}

Partition load_partition(const coopnet_graph_t* g, const std::string& path) {
  coopnet_partition_t* p = nullptr;
  check(coopnet_partition_load(g, read_text(path).c_str(), &p),
        "partition '" + path + "'");
  return Partition(p);
}

Layout load_layout(const coopnet_graph_t* g, const std::string& path) {
  coopnet_layout_t* l = nullptr;
  check(coopnet_layout_load(g, read_text(path).c_str(), &l), "positions '" + path + "'");
  return Layout(l);
}

std::vector<coopnet_format> formats(const json& cfg) {
  std::vector<coopnet_format> out;
  for (const auto& name : cfg["output"]["formats"]) {
    coopnet_format f;
    check(coopnet_format_from_name(name.get<std::string>().c_str(), &f), "format");
    out.push_back(f);
  }
  return out;
}

const char* format_ext(coopnet_format f) {
  switch (f) {
    case COOPNET_FORMAT_GEXF: return "gexf";
    case COOPNET_FORMAT_GRAPHML: return "graphml";
    case COOPNET_FORMAT_DOT: return "dot";
    case COOPNET_FORMAT_JSONL: return "jsonl";
  }
  return "out";
}

void note(const std::string& msg) { std::cerr << "coopnet: " << msg << '\n'; }

// ---- Subcommands -----------------------------------------------------------

struct Inputs {
  std::string affiliation;
  std::string metadata;
  std::string similarity;
  std::string graph;
  std::string partition;
  std::string positions;
  std::size_t threshold = 10;
};

void cmd_ingest(const json& cfg, const Inputs& in) {
  const auto path = affiliation_path(cfg, in.affiliation);
  auto m = load_matrix(path);
  char* csv = nullptr;
  check(coopnet_matrix_to_csv(m.get(), &csv), "ingest");
  write_text(out_dir(cfg) / "affiliation.csv", take(csv));
  const auto meta_path =
      in.metadata.empty() ? cfg["input"]["metadata"].get<std::string>() : in.metadata;
  if (!meta_path.empty()) {
    load_metadata(cfg, m.get(), meta_path);
    write_text(out_dir(cfg) / "metadata.csv", read_text(meta_path));
  }
  note(std::to_string(coopnet_matrix_n_entities(m.get())) + " entities, " +
       std::to_string(coopnet_matrix_n_features(m.get())) + " features, " +
       std::to_string(coopnet_matrix_n_cells(m.get())) + " cells (" +
       std::to_string(coopnet_matrix_duplicates(m.get())) + " duplicate declarations)");
}

void cmd_stats(const json& cfg, const Inputs& in) {
  auto m = load_matrix(affiliation_path(cfg, in.affiliation));
  char* out = nullptr;
  check(coopnet_matrix_stats_json(m.get(), in.threshold, &out), "stats");
  std::cout << take(out) << '\n';
}

void cmd_similarity(const json& cfg, const Inputs& in) {
  auto m = load_matrix(affiliation_path(cfg, in.affiliation));
  coopnet_similarity_t* raw = nullptr;
  check(coopnet_similarity_compute(m.get(), distance_mode(cfg), zero_policy(cfg),
                                   cfg["similarity"]["threads"].get<unsigned>(), &raw),
        "stage 'similarity'");
  Similarity s(raw);
  char* csv = nullptr;
  check(coopnet_similarity_to_csv(s.get(), 0, &csv), "stage 'similarity'");
  write_text(out_dir(cfg) / "similarity_full.csv", take(csv));
}

void cmd_cutoff(const json& cfg, const Inputs& in) {
  const auto path = in.similarity.empty()
                        ? (out_dir(cfg) / "similarity_full.csv").string()
                        : in.similarity;
  auto s = load_similarity(nullptr, path);
  double cutoff = 0.0;
  check(coopnet_similarity_cutoff(s.get(), cfg["similarity"]["quantile"].get<double>(),
                                  &cutoff),
        "stage 'cutoff'");
  coopnet_similarity_t* raw = nullptr;
  check(coopnet_similarity_sparsify(s.get(), cutoff, &raw), "stage 'cutoff'");
  Similarity sparse(raw);
  char* csv = nullptr;
  check(coopnet_similarity_to_csv(sparse.get(), 0, &csv), "stage 'cutoff'");
  write_text(out_dir(cfg) / "similarity.csv", take(csv));
  char* cdf = nullptr;
  check(coopnet_similarity_cdf_csv(s.get(), &cdf), "stage 'cutoff'");
  write_text(out_dir(cfg) / "cdf.csv", take(cdf));
  std::ostringstream msg;
  msg.precision(17);
  msg << "cutoff " << cutoff << " keeps " << coopnet_similarity_pairs(sparse.get())
      << " of " << coopnet_similarity_pairs(s.get()) << " pairs";
  note(msg.str());
}

void cmd_graph(const json& cfg, const Inputs& in) {
  const auto dir = out_dir(cfg);
  Graph g;
  if (!in.graph.empty()) {
    g = load_graph(in.graph);
  } else {
    auto m = load_matrix(affiliation_path(cfg, in.affiliation));
    const auto sim_path =
        in.similarity.empty() ? (dir / "similarity.csv").string() : in.similarity;
    auto s = load_similarity(m.get(), sim_path);
    coopnet_graph_t* raw = nullptr;
    check(coopnet_graph_build(m.get(), s.get(), weighting(cfg), &raw), "stage 'graph'");
    g.reset(raw);
  }
  Partition p;
  if (!in.partition.empty()) p = load_partition(g.get(), in.partition);
  Layout l;
  if (!in.positions.empty()) l = load_layout(g.get(), in.positions);

  // The JSON-lines file is the handoff to the later stages.
  bool wrote_jsonl = false;
  for (auto f : formats(cfg)) {
    char* body = nullptr;
    check(coopnet_graph_export(g.get(), f, l.get(), p.get(), &body), "stage 'export'");
    write_text(dir / (std::string("graph.") + format_ext(f)), take(body));
    wrote_jsonl = wrote_jsonl || f == COOPNET_FORMAT_JSONL;
  }
  if (!wrote_jsonl && in.graph.empty()) {
    char* body = nullptr;
    check(coopnet_graph_export(g.get(), COOPNET_FORMAT_JSONL, nullptr, nullptr, &body),
          "stage 'export'");
    write_text(dir / "graph.jsonl", take(body));
  }
  note(std::to_string(coopnet_graph_n_nodes(g.get())) + " nodes, " +
       std::to_string(coopnet_graph_n_edges(g.get())) + " edges");
}

std::string graph_path(const json& cfg, const Inputs& in) {
  return in.graph.empty() ? (out_dir(cfg) / "graph.jsonl").string() : in.graph;
}

void cmd_detect(const json& cfg, const Inputs& in) {
  auto g = load_graph(graph_path(cfg, in));
  auto lc = coopnet_louvain_config_default();
  lc.max_passes = cfg["louvain"]["max_passes"].get<std::size_t>();
  lc.min_gain = cfg["louvain"]["min_gain"].get<double>();
  lc.shuffle_nodes = cfg["louvain"]["node_order"] == "shuffle" ? 1 : 0;
  lc.seed = coopnet_derive_seed(cfg["seed"].get<std::uint64_t>(), "louvain");
  coopnet_partition_t* raw = nullptr;
  check(coopnet_louvain(g.get(), &lc, &raw), "stage 'detect'");
  Partition p(raw);
  char* csv = nullptr;
  check(coopnet_partition_to_csv(g.get(), p.get(), &csv), "stage 'detect'");
  write_text(out_dir(cfg) / "partition.csv", take(csv));
  std::ostringstream msg;
  msg << coopnet_partition_n_communities(p.get()) << " communities, "
      << coopnet_partition_unassigned(p.get()) << " unassigned";
  double q = 0.0;
  if (coopnet_modularity(g.get(), p.get(), &q) == COOPNET_OK) msg << ", Q = " << q;
  note(msg.str());
}

void cmd_metrics(const json& cfg, const Inputs& in) {
  const auto dir = out_dir(cfg);
  auto g = load_graph(graph_path(cfg, in));
  auto p = load_partition(
      g.get(), in.partition.empty() ? (dir / "partition.csv").string() : in.partition);
  const auto meta_path =
      in.metadata.empty() ? cfg["input"]["metadata"].get<std::string>() : in.metadata;
  Metadata meta;
  if (!meta_path.empty()) meta = load_metadata(cfg, nullptr, meta_path);

  const auto& mj = cfg["metrics"];
  const auto ignore = mj["ignore_labels"].get<std::vector<std::string>>();
  std::vector<const char*> ptrs;
  for (const auto& l : ignore) ptrs.push_back(l.c_str());
  auto mc = coopnet_metrics_config_default();
  mc.counting = mj["counting"] == "weighted" ? COOPNET_COUNTING_WEIGHTED
                                             : COOPNET_COUNTING_BINARY;
  mc.purity_threshold = mj["purity_threshold"].get<double>();
  static const char* const kNone[] = {nullptr};
  mc.ignore_labels = ptrs.empty() ? kNone : ptrs.data();
  mc.n_ignore_labels = ptrs.size();

  coopnet_report_t* raw = nullptr;
  check(coopnet_report_build(g.get(), p.get(), meta.get(), &mc, &raw), "stage 'metrics'");
  Report r(raw);
  char* js = nullptr;
  check(coopnet_report_to_json(r.get(), &js), "stage 'metrics'");
  write_text(dir / "report.json", take(js));
  char* txt = nullptr;
  check(coopnet_report_to_text(r.get(), &txt), "stage 'metrics'");
  const auto table = take(txt);
  write_text(dir / "report.txt", table);
  std::cout << table;
}

void cmd_layout(const json& cfg, const Inputs& in) {
  auto g = load_graph(graph_path(cfg, in));
  const auto& lj = cfg["layout"];
  auto params = coopnet_fa2_params_default();
  params.k_repulsion = lj["k_repulsion"].get<double>();
  params.gravity = lj["gravity"].get<double>();
  params.edge_weight_influence = lj["edge_weight_influence"].get<double>();
  params.iterations = lj["iterations"].get<std::size_t>();
  params.speed = lj["speed"].get<double>();
  params.tolerance = lj["tolerance"].get<double>();
  params.jitter_tolerance = lj["jitter_tolerance"].get<double>();
  params.max_step_fraction = lj["max_step_fraction"].get<double>();
  params.seed = coopnet_derive_seed(cfg["seed"].get<std::uint64_t>(), "layout");
  coopnet_layout_t* raw = nullptr;
  check(coopnet_layout_run(g.get(), &params, &raw), "stage 'layout'");
  Layout l(raw);
  char* csv = nullptr;
  check(coopnet_layout_to_csv(g.get(), l.get(), &csv), "stage 'layout'");
  write_text(out_dir(cfg) / "positions.csv", take(csv));
  note(std::string(coopnet_layout_converged(l.get()) ? "converged" : "stopped") +
       " after " + std::to_string(coopnet_layout_steps(l.get())) + " steps");
}

void cmd_synth(json cfg) {
  if (cfg["input"]["synth"].is_null()) cfg["input"]["synth"] = {{"preset", "tseba-like"}};
  char *aff = nullptr, *meta = nullptr, *truth = nullptr;
  check(coopnet_pipeline_synth(cfg.dump().c_str(), &aff, &meta, &truth), "stage 'synth'");
  const auto dir = out_dir(cfg);
  write_text(dir / "affiliation.csv", take(aff));
  write_text(dir / "metadata.csv", take(meta));
  write_text(dir / "truth.csv", take(truth));
}

void cmd_run(const json& cfg) {
  char* manifest = nullptr;
  check(coopnet_pipeline_run(cfg.dump().c_str(), &manifest), "run");
  const auto m = json::parse(take(manifest));
  const auto& s = m["stats"];
  std::ostringstream msg;
  msg << "wrote " << m["outputs"].size() << " files to " << out_dir(cfg).string();
  if (s.contains("communities")) {
    msg << " (" << s["communities"] << " communities, " << s["edges"] << " edges)";
  }
  note(msg.str());
  for (const auto& w : m["warnings"]) note("warning: " + w.get<std::string>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection and co-opetition metrics on affiliation data"};
  app.set_version_flag("--version", coopnet_version());
  app.require_subcommand(1);

  ConfigOptions opts;
  Inputs in;
  auto add = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    add_config_options(cmd, opts);
    return cmd;
  };

  auto* ingest = add("ingest", "Validate an affiliation CSV and write it back canonically");
  ingest->add_option("-a,--affiliation", in.affiliation, "entity_id,feature_id CSV");
  ingest->add_option("-m,--metadata", in.metadata, "entity_id,grade,label CSV");

  auto* stats = add("stats", "Print affiliation matrix statistics as JSON");
  stats->add_option("-a,--affiliation", in.affiliation, "entity_id,feature_id CSV");
  stats->add_option("--threshold", in.threshold,
                    "Count features attended more often than this");

  auto* similarity = add("similarity", "Pairwise reciprocal Hamming similarity");
  similarity->add_option("-a,--affiliation", in.affiliation, "entity_id,feature_id CSV");

  auto* cutoff = add("cutoff", "Cut a similarity list at the configured quantile");
  cutoff->add_option("-s,--similarity", in.similarity,
                     "Full similarity CSV (default <out-dir>/similarity_full.csv)");

  auto* graph = add("graph", "Build the similarity graph or re-export one");
  graph->add_option("-a,--affiliation", in.affiliation, "entity_id,feature_id CSV");
  graph->add_option("-s,--similarity", in.similarity,
                    "Sparse similarity CSV (default <out-dir>/similarity.csv)");
  graph->add_option("-g,--graph", in.graph, "Existing graph.jsonl to re-export");
  graph->add_option("-p,--partition", in.partition, "Partition CSV to attach");
  graph->add_option("--positions", in.positions, "Positions CSV to attach");

  auto* detect = add("detect", "Louvain community detection");
  detect->add_option("-g,--graph", in.graph, "graph.jsonl (default <out-dir>/graph.jsonl)");

  auto* metrics = add("metrics", "Grades, conductance and label agreement per community");
  metrics->add_option("-g,--graph", in.graph, "graph.jsonl (default <out-dir>/graph.jsonl)");
  metrics->add_option("-p,--partition", in.partition,
                      "Partition CSV (default <out-dir>/partition.csv)");
  metrics->add_option("-m,--metadata", in.metadata, "entity_id,grade,label CSV");

  auto* layout = add("layout", "ForceAtlas2 layout");
  layout->add_option("-g,--graph", in.graph, "graph.jsonl (default <out-dir>/graph.jsonl)");

  auto* synth = add("synth", "Generate a synthetic affiliation dataset");
  auto* run = add("run", "Run the whole pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    for (auto* cmd : app.get_subcommands()) {
      const json cfg = resolve_config(cmd, opts);
      if (cmd == ingest) cmd_ingest(cfg, in);
      else if (cmd == stats) cmd_stats(cfg, in);
      else if (cmd == similarity) cmd_similarity(cfg, in);
      else if (cmd == cutoff) cmd_cutoff(cfg, in);
      else if (cmd == graph) cmd_graph(cfg, in);
      else if (cmd == detect) cmd_detect(cfg, in);
      else if (cmd == metrics) cmd_metrics(cfg, in);
      else if (cmd == layout) cmd_layout(cfg, in);
      else if (cmd == synth) cmd_synth(cfg);
      else if (cmd == run) cmd_run(cfg);
    }
  } catch (const Failure& f) {
    std::error_code ec;
    for (const auto& p : g_written) fs::remove(p, ec);
    note(f.what());
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : g_written) fs::remove(p, ec);
    note(e.what());
    return 1;
  }
  return 0;
}

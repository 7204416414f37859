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

#include "coopnet/coopnet.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "coopnet/affiliation.hpp"
#include "coopnet/community.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/layout.hpp"
#include "coopnet/metrics.hpp"
#include "coopnet/pipeline.hpp"
#include "coopnet/seeding.hpp"
#include "coopnet/similarity.hpp"
#include "coopnet/synthgen.hpp"
#include "json.hpp"

struct coopnet_matrix {
  coopnet::AffiliationMatrix matrix;
  coopnet::IngestDiagnostics diagnostics;
};
struct coopnet_metadata {
  std::vector<coopnet::EntityMetadata> records;  // matrix entity order
};
struct coopnet_similarity {
  coopnet::SimilarityMatrix matrix;
  std::vector<std::string> ids;
};
struct coopnet_graph {
  coopnet::Graph graph;
};
struct coopnet_partition {
  coopnet::Partition partition;
};
struct coopnet_layout {
  coopnet::LayoutResult result;
};
struct coopnet_report {
  coopnet::CoopetitionReport report;
};

namespace {

thread_local std::string g_last_error;

coopnet_status status_of(coopnet::ErrorKind kind) {
  switch (kind) {
    case coopnet::ErrorKind::kConfig: return COOPNET_ERR_CONFIG;
    case coopnet::ErrorKind::kData: return COOPNET_ERR_DATA;
    case coopnet::ErrorKind::kNumeric: return COOPNET_ERR_NUMERIC;
    case coopnet::ErrorKind::kInternal: return COOPNET_ERR_INTERNAL;
  }
  return COOPNET_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
coopnet_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return COOPNET_OK;
  } catch (const coopnet::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return COOPNET_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return COOPNET_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return COOPNET_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) {
    throw coopnet::Error(coopnet::ErrorKind::kInternal,
                         std::string("null argument '") + name + "'");
  }
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw coopnet::ConfigError(std::string("cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> string_list(const char* const* items, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; items != nullptr && i < n; ++i) {
    if (items[i] != nullptr) out.emplace_back(items[i]);
  }
  return out;
}

coopnet::LouvainConfig to_cpp(const coopnet_louvain_config* c) {
  coopnet::LouvainConfig out;
  if (c == nullptr) return out;
  out.max_passes = c->max_passes;
  out.min_gain = c->min_gain;
  out.node_order = c->shuffle_nodes ? coopnet::NodeOrder::kShuffle
                                    : coopnet::NodeOrder::kInput;
  out.seed = c->seed;
  return out;
}

coopnet::FA2Params to_cpp(const coopnet_fa2_params* p) {
  coopnet::FA2Params out;
  if (p == nullptr) return out;
  out.k_repulsion = p->k_repulsion;
  out.gravity = p->gravity;
  out.edge_weight_influence = p->edge_weight_influence;
  out.iterations = p->iterations;
  out.speed = p->speed;
  out.tolerance = p->tolerance;
  out.seed = p->seed;
  out.jitter_tolerance = p->jitter_tolerance;
  out.max_step_fraction = p->max_step_fraction;
  return out;
}

coopnet::Counting to_cpp(coopnet_counting c) {
  return c == COOPNET_COUNTING_WEIGHTED ? coopnet::Counting::kWeighted
                                        : coopnet::Counting::kBinary;
}

void load_metadata_into(const coopnet_matrix_t* m, const std::string& text,
                        double grade_min, double grade_max,
                        const char* const* labels, std::size_t n_labels,
                        coopnet_metadata_t** out) {
  require(out, "out");
  std::istringstream in(text);
  coopnet::MetadataOptions opts{{grade_min, grade_max}, string_list(labels, n_labels)};
  auto records = coopnet::load_metadata(in, opts);
  if (m != nullptr) records = coopnet::align_metadata(m->matrix.entity_ids(), records);
  *out = new coopnet_metadata{std::move(records)};
}

}  // namespace

extern "C" {

const char* coopnet_version(void) { return coopnet::kVersion; }
const char* coopnet_last_error(void) { return g_last_error.c_str(); }
void coopnet_string_free(char* s) { std::free(s); }
uint64_t coopnet_derive_seed(uint64_t root, const char* stage) {
  return coopnet::derive_seed(root, stage ? stage : "");
}

coopnet_louvain_config coopnet_louvain_config_default(void) {
  const coopnet::LouvainConfig d;
  return {d.max_passes, d.min_gain, 0, d.seed};
}

coopnet_fa2_params coopnet_fa2_params_default(void) {
  const coopnet::FA2Params d;
  return {d.k_repulsion, d.gravity,     d.edge_weight_influence,
          d.iterations,  d.speed,       d.tolerance,
          d.seed,        d.jitter_tolerance, d.max_step_fraction};
}

coopnet_metrics_config coopnet_metrics_config_default(void) {
  return {COOPNET_COUNTING_BINARY, coopnet::AgreementConfig{}.purity_threshold,
          nullptr, 0};
}

coopnet_status coopnet_matrix_load(const char* csv, coopnet_matrix_t** out) {
  return guarded([&] {
    require(csv, "csv");
    require(out, "out");
    std::istringstream in(csv);
    auto loaded = coopnet::load_affiliation(in);
    *out = new coopnet_matrix{std::move(loaded.matrix), loaded.diagnostics};
  });
}

coopnet_status coopnet_matrix_load_file(const char* path, coopnet_matrix_t** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::istringstream in(slurp(path));
    auto loaded = coopnet::load_affiliation(in);
    *out = new coopnet_matrix{std::move(loaded.matrix), loaded.diagnostics};
  });
}

void coopnet_matrix_free(coopnet_matrix_t* m) { delete m; }
size_t coopnet_matrix_n_entities(const coopnet_matrix_t* m) {
  return m ? m->matrix.n_entities() : 0;
}
size_t coopnet_matrix_n_features(const coopnet_matrix_t* m) {
  return m ? m->matrix.n_features() : 0;
}
size_t coopnet_matrix_n_cells(const coopnet_matrix_t* m) {
  return m ? m->matrix.n_cells() : 0;
}
size_t coopnet_matrix_declarations(const coopnet_matrix_t* m) {
  return m ? m->diagnostics.declarations : 0;
}
size_t coopnet_matrix_duplicates(const coopnet_matrix_t* m) {
  return m ? m->diagnostics.duplicates : 0;
}
const char* coopnet_matrix_entity_id(const coopnet_matrix_t* m, size_t i) {
  if (m == nullptr || i >= m->matrix.n_entities()) return nullptr;
  return m->matrix.entity_ids()[i].c_str();
}

coopnet_status coopnet_matrix_to_csv(const coopnet_matrix_t* m, char** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    std::ostringstream os;
    coopnet::write_affiliation(os, m->matrix);
    *out = dup_string(os.str());
  });
}

coopnet_status coopnet_matrix_stats_json(const coopnet_matrix_t* m,
                                         size_t threshold, char** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    const auto s = coopnet::matrix_stats(m->matrix);
    nlohmann::json j = {
        {"entities", s.n_entities},
        {"features", s.n_features},
        {"cells", s.n_cells},
        {"declarations", m->diagnostics.declarations},
        {"duplicate_declarations", m->diagnostics.duplicates},
        {"density", s.density},
        {"max_feature_count", s.max_feature_count},
        {"features_attended_once", s.features_attended_once},
        {"threshold", threshold},
        {"features_above_threshold", s.features_above(threshold)},
        {"histogram", s.histogram},
    };
    *out = dup_string(j.dump(2));
  });
}

coopnet_status coopnet_metadata_load(const coopnet_matrix_t* m, const char* csv,
                                     double grade_min, double grade_max,
                                     const char* const* labels, size_t n_labels,
                                     coopnet_metadata_t** out) {
  return guarded([&] {
    require(csv, "csv");
    load_metadata_into(m, csv, grade_min, grade_max, labels, n_labels, out);
  });
}

coopnet_status coopnet_metadata_load_file(const coopnet_matrix_t* m,
                                          const char* path, double grade_min,
                                          double grade_max,
                                          const char* const* labels,
                                          size_t n_labels,
                                          coopnet_metadata_t** out) {
  return guarded([&] {
    require(path, "path");
    load_metadata_into(m, slurp(path), grade_min, grade_max, labels, n_labels, out);
  });
}

void coopnet_metadata_free(coopnet_metadata_t* meta) { delete meta; }

coopnet_status coopnet_similarity_compute(const coopnet_matrix_t* m,
                                          coopnet_distance_mode mode,
                                          coopnet_zero_policy policy,
                                          unsigned threads,
                                          coopnet_similarity_t** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    const auto d = coopnet::pairwise_distances(
        m->matrix,
        mode == COOPNET_DISTANCE_WEIGHTED ? coopnet::DistanceMode::kWeighted
                                          : coopnet::DistanceMode::kPlain,
        {}, threads);
    auto s = coopnet::reciprocal_similarity(
        d, policy == COOPNET_ZERO_EXCLUDE_PAIR ? coopnet::ZeroPolicy::kExcludePair
                                               : coopnet::ZeroPolicy::kCapToOne);
    *out = new coopnet_similarity{std::move(s), m->matrix.entity_ids()};
  });
}

coopnet_status coopnet_similarity_load(const coopnet_matrix_t* m, const char* csv,
                                       coopnet_similarity_t** out) {
  return guarded([&] {
    require(csv, "csv");
    require(out, "out");
    std::vector<std::string> ids;
    if (m != nullptr) ids = m->matrix.entity_ids();
    std::istringstream in(csv);
    auto s = coopnet::read_similarity(in, ids, m != nullptr);
    *out = new coopnet_similarity{std::move(s), std::move(ids)};
  });
}

void coopnet_similarity_free(coopnet_similarity_t* s) { delete s; }
size_t coopnet_similarity_pairs(const coopnet_similarity_t* s) {
  return s ? s->matrix.entries().size() : 0;
}

coopnet_status coopnet_similarity_cutoff(const coopnet_similarity_t* s, double q,
                                         double* cutoff) {
  return guarded([&] {
    require(s, "similarity");
    require(cutoff, "cutoff");
    *cutoff = coopnet::quantile_cutoff(coopnet::empirical_cdf(s->matrix), q);
  });
}

coopnet_status coopnet_similarity_cdf_at(const coopnet_similarity_t* s, double x,
                                         double* value) {
  return guarded([&] {
    require(s, "similarity");
    require(value, "value");
    *value = coopnet::empirical_cdf(s->matrix)(x);
  });
}

coopnet_status coopnet_similarity_sparsify(const coopnet_similarity_t* s,
                                           double cutoff,
                                           coopnet_similarity_t** out) {
  return guarded([&] {
    require(s, "similarity");
    require(out, "out");
    *out = new coopnet_similarity{coopnet::sparsify(s->matrix, cutoff), s->ids};
  });
}

coopnet_status coopnet_similarity_to_csv(const coopnet_similarity_t* s, int digits,
                                         char** out) {
  return guarded([&] {
    require(s, "similarity");
    require(out, "out");
    std::ostringstream os;
    coopnet::write_similarity(os, s->matrix, s->ids, digits);
    *out = dup_string(os.str());
  });
}

coopnet_status coopnet_similarity_cdf_csv(const coopnet_similarity_t* s,
                                          char** out) {
  return guarded([&] {
    require(s, "similarity");
    require(out, "out");
    std::ostringstream os;
    coopnet::write_cdf(os, coopnet::empirical_cdf(s->matrix));
    *out = dup_string(os.str());
  });
}

coopnet_status coopnet_graph_build(const coopnet_matrix_t* m,
                                   const coopnet_similarity_t* s,
                                   coopnet_weighting weighting,
                                   coopnet_graph_t** out) {
  return guarded([&] {
    require(m, "matrix");
    require(s, "similarity");
    require(out, "out");
    if (s->ids != m->matrix.entity_ids()) {
      // Similarity loaded without the matrix: re-index onto matrix order.
      std::vector<std::string> ids = m->matrix.entity_ids();
      std::ostringstream os;
      coopnet::write_similarity(os, s->matrix, s->ids, 0);
      std::istringstream in(os.str());
      auto aligned = coopnet::read_similarity(in, ids, true);
      *out = new coopnet_graph{coopnet::build_graph(
          aligned, ids,
          weighting == COOPNET_WEIGHTING_BINARY ? coopnet::Weighting::kBinary
                                                : coopnet::Weighting::kSimilarity)};
      return;
    }
    *out = new coopnet_graph{coopnet::build_graph(
        s->matrix, m->matrix.entity_ids(),
        weighting == COOPNET_WEIGHTING_BINARY ? coopnet::Weighting::kBinary
                                              : coopnet::Weighting::kSimilarity)};
  });
}

coopnet_status coopnet_graph_load_jsonl(const char* text, coopnet_graph_t** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    std::istringstream in(text);
    *out = new coopnet_graph{coopnet::read_graph_jsonl(in)};
  });
}

void coopnet_graph_free(coopnet_graph_t* g) { delete g; }
size_t coopnet_graph_n_nodes(const coopnet_graph_t* g) { return g ? g->graph.n() : 0; }
size_t coopnet_graph_n_edges(const coopnet_graph_t* g) { return g ? g->graph.m() : 0; }

coopnet_status coopnet_graph_export(const coopnet_graph_t* g, coopnet_format format,
                                    const coopnet_layout_t* layout,
                                    const coopnet_partition_t* p, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    if (format < COOPNET_FORMAT_GEXF || format > COOPNET_FORMAT_JSONL) {
      throw coopnet::FormatError("unknown graph format code " +
                                 std::to_string(static_cast<int>(format)));
    }
    std::ostringstream os;
    std::span<const coopnet::Point> positions;
    if (layout != nullptr) positions = layout->result.state.positions;
    std::span<const int> labels;
    if (p != nullptr) labels = p->partition.labels();
    coopnet::export_graph(os, g->graph, static_cast<coopnet::ExportFormat>(format),
                          positions, labels);
    *out = dup_string(os.str());
  });
}

coopnet_status coopnet_format_from_name(const char* name, coopnet_format* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = static_cast<coopnet_format>(coopnet::parse_format(name));
  });
}

coopnet_status coopnet_louvain(const coopnet_graph_t* g,
                               const coopnet_louvain_config* cfg,
                               coopnet_partition_t** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new coopnet_partition{coopnet::louvain(g->graph, to_cpp(cfg))};
  });
}

coopnet_status coopnet_partition_load(const coopnet_graph_t* g, const char* csv,
                                      coopnet_partition_t** out) {
  return guarded([&] {
    require(g, "graph");
    require(csv, "csv");
    require(out, "out");
    std::istringstream in(csv);
    *out = new coopnet_partition{coopnet::read_partition(in, g->graph.ids())};
  });
}

void coopnet_partition_free(coopnet_partition_t* p) { delete p; }
size_t coopnet_partition_n_communities(const coopnet_partition_t* p) {
  return p ? p->partition.n_communities() : 0;
}
size_t coopnet_partition_unassigned(const coopnet_partition_t* p) {
  return p ? p->partition.unassigned_count() : 0;
}
int coopnet_partition_community_of(const coopnet_partition_t* p, size_t node) {
  if (p == nullptr || node >= p->partition.n()) return coopnet::kUnassigned;
  return p->partition.community_of(node);
}

coopnet_status coopnet_partition_to_csv(const coopnet_graph_t* g,
                                        const coopnet_partition_t* p, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(out, "out");
    std::ostringstream os;
    coopnet::write_partition(os, g->graph.ids(), p->partition);
    *out = dup_string(os.str());
  });
}

coopnet_status coopnet_modularity(const coopnet_graph_t* g,
                                  const coopnet_partition_t* p, double* q) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(q, "q");
    *q = coopnet::modularity(g->graph, p->partition);
  });
}

coopnet_status coopnet_conductance(const coopnet_graph_t* g,
                                   const coopnet_partition_t* p, int community,
                                   coopnet_counting counting, double* value,
                                   int* defined) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(value, "value");
    require(defined, "defined");
    const auto r = coopnet::conductance(g->graph, p->partition, community,
                                        to_cpp(counting));
    *defined = r.value.has_value() ? 1 : 0;
    *value = r.value.value_or(0.0);
  });
}

coopnet_status coopnet_report_build(const coopnet_graph_t* g,
                                    const coopnet_partition_t* p,
                                    const coopnet_metadata_t* meta,
                                    const coopnet_metrics_config* cfg,
                                    coopnet_report_t** out) {
  return guarded([&] {
    require(g, "graph");
    require(p, "partition");
    require(out, "out");
    coopnet::MetricsConfig mc;
    if (cfg != nullptr) {
      mc.counting = to_cpp(cfg->counting);
      mc.agreement.purity_threshold = cfg->purity_threshold;
      if (cfg->ignore_labels != nullptr) {
        mc.agreement.ignore_labels =
            string_list(cfg->ignore_labels, cfg->n_ignore_labels);
      }
    }
    std::vector<coopnet::EntityMetadata> records;
    if (meta != nullptr) {
      // Metadata is aligned to matrix order; realign to the graph's nodes.
      records = coopnet::align_metadata(g->graph.ids(), meta->records);
    }
    *out = new coopnet_report{
        coopnet::coopetition_report(g->graph, p->partition, records, mc)};
  });
}

void coopnet_report_free(coopnet_report_t* r) { delete r; }

coopnet_status coopnet_report_to_json(const coopnet_report_t* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(coopnet::to_json(r->report).dump(2) + "\n");
  });
}

coopnet_status coopnet_report_to_text(const coopnet_report_t* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(coopnet::to_text(r->report));
  });
}

coopnet_status coopnet_report_accuracy(const coopnet_report_t* r, double* accuracy,
                                       int* defined) {
  return guarded([&] {
    require(r, "report");
    require(accuracy, "accuracy");
    require(defined, "defined");
    *defined = r->report.accuracy.has_value() ? 1 : 0;
    *accuracy = r->report.accuracy.value_or(0.0);
  });
}

coopnet_status coopnet_layout_run(const coopnet_graph_t* g,
                                  const coopnet_fa2_params* params,
                                  coopnet_layout_t** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new coopnet_layout{coopnet::fa2_run(g->graph, to_cpp(params))};
  });
}

void coopnet_layout_free(coopnet_layout_t* l) { delete l; }
size_t coopnet_layout_steps(const coopnet_layout_t* l) { return l ? l->result.steps : 0; }
int coopnet_layout_converged(const coopnet_layout_t* l) {
  return l && l->result.stop == coopnet::StopReason::kConverged ? 1 : 0;
}

coopnet_status coopnet_layout_position(const coopnet_layout_t* l, size_t node,
                                       double* x, double* y) {
  return guarded([&] {
    require(l, "layout");
    require(x, "x");
    require(y, "y");
    const auto& pos = l->result.state.positions;
    if (node >= pos.size()) throw coopnet::LookupError("node out of range");
    *x = pos[node].x;
    *y = pos[node].y;
  });
}

coopnet_status coopnet_layout_to_csv(const coopnet_graph_t* g,
                                     const coopnet_layout_t* l, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(l, "layout");
    require(out, "out");
    std::ostringstream os;
    coopnet::write_positions(os, g->graph.ids(), l->result.state.positions);
    *out = dup_string(os.str());
  });
}

coopnet_status coopnet_layout_load(const coopnet_graph_t* g, const char* csv,
                                   coopnet_layout_t** out) {
  return guarded([&] {
    require(g, "graph");
    require(csv, "csv");
    require(out, "out");
    std::istringstream in(csv);
    auto* l = new coopnet_layout{};
    l->result.state.positions = coopnet::read_positions(in, g->graph.ids());
    *out = l;
  });
}

coopnet_status coopnet_synth_generate(const char* config_json,
                                      char** affiliation_csv, char** metadata_csv,
                                      char** truth_csv) {
  return guarded([&] {
    require(config_json, "config_json");
    const auto cfg = coopnet::synth_config_from_json(nlohmann::json::parse(config_json));
    const auto r = coopnet::generate(cfg);
    std::ostringstream aff, meta, truth;
    coopnet::write_affiliation(aff, r.matrix);
    coopnet::write_metadata(meta, r.metadata);
    coopnet::write_partition(truth, r.matrix.entity_ids(), r.truth);
    if (affiliation_csv) *affiliation_csv = dup_string(aff.str());
    if (metadata_csv) *metadata_csv = dup_string(meta.str());
    if (truth_csv) *truth_csv = dup_string(truth.str());
  });
}

coopnet_status coopnet_pipeline_default_config(char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(coopnet::to_json(coopnet::PipelineConfig{}).dump(2));
  });
}

coopnet_status coopnet_pipeline_normalize_config(const char* config_json,
                                                 char** out) {
  return guarded([&] {
    require(config_json, "config_json");
    require(out, "out");
    const auto cfg =
        coopnet::pipeline_config_from_json(nlohmann::json::parse(config_json));
    *out = dup_string(coopnet::to_json(cfg).dump(2));
  });
}

coopnet_status coopnet_pipeline_synth(const char* config_json,
                                      char** affiliation_csv, char** metadata_csv,
                                      char** truth_csv) {
  return guarded([&] {
    require(config_json, "config_json");
    const auto cfg =
        coopnet::pipeline_config_from_json(nlohmann::json::parse(config_json));
    const auto r = coopnet::pipeline_synth(cfg);
    std::ostringstream aff, meta, truth;
    coopnet::write_affiliation(aff, r.matrix);
    coopnet::write_metadata(meta, r.metadata);
    coopnet::write_partition(truth, r.matrix.entity_ids(), r.truth);
    if (affiliation_csv) *affiliation_csv = dup_string(aff.str());
    if (metadata_csv) *metadata_csv = dup_string(meta.str());
    if (truth_csv) *truth_csv = dup_string(truth.str());
  });
}

coopnet_status coopnet_pipeline_run(const char* config_json, char** manifest) {
  return guarded([&] {
    require(config_json, "config_json");
    const auto cfg =
        coopnet::pipeline_config_from_json(nlohmann::json::parse(config_json));
    const auto m = coopnet::run_pipeline(cfg);
    if (manifest) *manifest = dup_string(m.dump(2));
  });
}

}  // extern "C"

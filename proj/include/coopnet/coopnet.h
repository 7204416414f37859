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

/*
 * C interface of the coopnet library.
 *
 * Every object is an opaque handle created by a coopnet_*_load / _compute /
 * _build function and released with the matching _free function. Functions
 * that can fail return a coopnet_status; the message of the last failure on
 * the calling thread is available from coopnet_last_error(). Strings returned
 * through char** out-parameters are owned by the caller and released with
 * coopnet_string_free().
 */

#ifndef COOPNET_COOPNET_H_
#define COOPNET_COOPNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(COOPNET_BUILDING)
#    define COOPNET_API __declspec(dllexport)
#  else
#    define COOPNET_API __declspec(dllimport)
#  endif
#else
#  define COOPNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum coopnet_status {
  COOPNET_OK = 0,
  COOPNET_ERR_INTERNAL = 1,
  COOPNET_ERR_CONFIG = 2,
  COOPNET_ERR_DATA = 3,
  COOPNET_ERR_NUMERIC = 4,
  COOPNET_ERR_INVALID_ARGUMENT = 5
} coopnet_status;

typedef enum coopnet_distance_mode {
  COOPNET_DISTANCE_PLAIN = 0,
  COOPNET_DISTANCE_WEIGHTED = 1
} coopnet_distance_mode;

typedef enum coopnet_zero_policy {
  COOPNET_ZERO_CAP_TO_ONE = 0,
  COOPNET_ZERO_EXCLUDE_PAIR = 1
} coopnet_zero_policy;

typedef enum coopnet_weighting {
  COOPNET_WEIGHTING_SIMILARITY = 0,
  COOPNET_WEIGHTING_BINARY = 1
} coopnet_weighting;

typedef enum coopnet_format {
  COOPNET_FORMAT_GEXF = 0,
  COOPNET_FORMAT_GRAPHML = 1,
  COOPNET_FORMAT_DOT = 2,
  COOPNET_FORMAT_JSONL = 3
} coopnet_format;

typedef enum coopnet_counting {
  COOPNET_COUNTING_BINARY = 0,
  COOPNET_COUNTING_WEIGHTED = 1
} coopnet_counting;

typedef struct coopnet_matrix coopnet_matrix_t;
typedef struct coopnet_metadata coopnet_metadata_t;
typedef struct coopnet_similarity coopnet_similarity_t;
typedef struct coopnet_graph coopnet_graph_t;
typedef struct coopnet_partition coopnet_partition_t;
typedef struct coopnet_layout coopnet_layout_t;
typedef struct coopnet_report coopnet_report_t;

typedef struct coopnet_louvain_config {
  size_t max_passes;
  double min_gain;
  int shuffle_nodes; /* 0 = input order */
  uint64_t seed;
} coopnet_louvain_config;

typedef struct coopnet_fa2_params {
  double k_repulsion;
  double gravity;
  double edge_weight_influence;
  size_t iterations;
  double speed;
  double tolerance;
  uint64_t seed;
  double jitter_tolerance;
  double max_step_fraction;
} coopnet_fa2_params;

typedef struct coopnet_metrics_config {
  coopnet_counting counting;
  double purity_threshold;
  /* Labels excluded from scoring; NULL keeps the default {"mixed","none"}. */
  const char* const* ignore_labels;
  size_t n_ignore_labels;
} coopnet_metrics_config;

/* ---- General ------------------------------------------------------------ */

COOPNET_API const char* coopnet_version(void);
COOPNET_API const char* coopnet_last_error(void);
COOPNET_API void coopnet_string_free(char* s);
/* Seed for a named stage ("synth", "louvain", "layout") of a run. */
COOPNET_API uint64_t coopnet_derive_seed(uint64_t root, const char* stage);

COOPNET_API coopnet_louvain_config coopnet_louvain_config_default(void);
COOPNET_API coopnet_fa2_params coopnet_fa2_params_default(void);
COOPNET_API coopnet_metrics_config coopnet_metrics_config_default(void);

/* ---- Affiliation data --------------------------------------------------- */

/* `entity_id,feature_id` CSV text. */
COOPNET_API coopnet_status coopnet_matrix_load(const char* csv,
                                               coopnet_matrix_t** out);
COOPNET_API coopnet_status coopnet_matrix_load_file(const char* path,
                                                    coopnet_matrix_t** out);
COOPNET_API void coopnet_matrix_free(coopnet_matrix_t* m);
COOPNET_API size_t coopnet_matrix_n_entities(const coopnet_matrix_t* m);
COOPNET_API size_t coopnet_matrix_n_features(const coopnet_matrix_t* m);
COOPNET_API size_t coopnet_matrix_n_cells(const coopnet_matrix_t* m);
/* Ingest diagnostics; 0 for matrices not loaded from text. */
COOPNET_API size_t coopnet_matrix_declarations(const coopnet_matrix_t* m);
COOPNET_API size_t coopnet_matrix_duplicates(const coopnet_matrix_t* m);
COOPNET_API const char* coopnet_matrix_entity_id(const coopnet_matrix_t* m,
                                                 size_t i);
COOPNET_API coopnet_status coopnet_matrix_to_csv(const coopnet_matrix_t* m,
                                                 char** out);
/* JSON object with density, histogram and features attended more than
 * `threshold` times. */
COOPNET_API coopnet_status coopnet_matrix_stats_json(const coopnet_matrix_t* m,
                                                     size_t threshold,
                                                     char** out);

/* `entity_id,grade,label` CSV aligned to the matrix entity order, or kept in
 * file order when m is NULL. An empty label set (labels == NULL) accepts any
 * label. */
COOPNET_API coopnet_status coopnet_metadata_load(
    const coopnet_matrix_t* m, const char* csv, double grade_min,
    double grade_max, const char* const* labels, size_t n_labels,
    coopnet_metadata_t** out);
COOPNET_API coopnet_status coopnet_metadata_load_file(
    const coopnet_matrix_t* m, const char* path, double grade_min,
    double grade_max, const char* const* labels, size_t n_labels,
    coopnet_metadata_t** out);
COOPNET_API void coopnet_metadata_free(coopnet_metadata_t* meta);

/* ---- Similarity --------------------------------------------------------- */

/* Pairwise (weighted) Hamming distances turned into reciprocal similarity.
 * threads = 0 uses every core; the result does not depend on it. */
COOPNET_API coopnet_status coopnet_similarity_compute(
    const coopnet_matrix_t* m, coopnet_distance_mode mode,
    coopnet_zero_policy policy, unsigned threads, coopnet_similarity_t** out);
/* `entity_a,entity_b,similarity`. With a matrix, ids must belong to it;
 * without, ids are assigned in order of first appearance. */
COOPNET_API coopnet_status coopnet_similarity_load(const coopnet_matrix_t* m,
                                                   const char* csv,
                                                   coopnet_similarity_t** out);
COOPNET_API void coopnet_similarity_free(coopnet_similarity_t* s);
COOPNET_API size_t coopnet_similarity_pairs(const coopnet_similarity_t* s);
/* Cutoff keeping the top ceil((1-q)N) values strictly above it. */
COOPNET_API coopnet_status coopnet_similarity_cutoff(
    const coopnet_similarity_t* s, double q, double* cutoff);
COOPNET_API coopnet_status coopnet_similarity_cdf_at(
    const coopnet_similarity_t* s, double x, double* value);
COOPNET_API coopnet_status coopnet_similarity_sparsify(
    const coopnet_similarity_t* s, double cutoff, coopnet_similarity_t** out);
/* digits = 0 writes exact round-trip values. */
COOPNET_API coopnet_status coopnet_similarity_to_csv(
    const coopnet_similarity_t* s, int digits, char** out);
COOPNET_API coopnet_status coopnet_similarity_cdf_csv(
    const coopnet_similarity_t* s, char** out);

/* ---- Graph -------------------------------------------------------------- */

/* Nodes are the matrix entities; one edge per similarity entry. */
COOPNET_API coopnet_status coopnet_graph_build(const coopnet_matrix_t* m,
                                               const coopnet_similarity_t* s,
                                               coopnet_weighting weighting,
                                               coopnet_graph_t** out);
/* Reads the JSON-lines export. */
COOPNET_API coopnet_status coopnet_graph_load_jsonl(const char* text,
                                                    coopnet_graph_t** out);
COOPNET_API void coopnet_graph_free(coopnet_graph_t* g);
COOPNET_API size_t coopnet_graph_n_nodes(const coopnet_graph_t* g);
COOPNET_API size_t coopnet_graph_n_edges(const coopnet_graph_t* g);
/* layout and partition may be NULL. */
COOPNET_API coopnet_status coopnet_graph_export(const coopnet_graph_t* g,
                                                coopnet_format format,
                                                const coopnet_layout_t* layout,
                                                const coopnet_partition_t* p,
                                                char** out);
COOPNET_API coopnet_status coopnet_format_from_name(const char* name,
                                                    coopnet_format* out);

/* ---- Communities -------------------------------------------------------- */

COOPNET_API coopnet_status coopnet_louvain(const coopnet_graph_t* g,
                                           const coopnet_louvain_config* cfg,
                                           coopnet_partition_t** out);
/* `entity_id,community_id,level0_id,...` for the nodes of g. */
COOPNET_API coopnet_status coopnet_partition_load(const coopnet_graph_t* g,
                                                  const char* csv,
                                                  coopnet_partition_t** out);
COOPNET_API void coopnet_partition_free(coopnet_partition_t* p);
COOPNET_API size_t coopnet_partition_n_communities(const coopnet_partition_t* p);
COOPNET_API size_t coopnet_partition_unassigned(const coopnet_partition_t* p);
/* -1 for unassigned nodes. */
COOPNET_API int coopnet_partition_community_of(const coopnet_partition_t* p,
                                               size_t node);
COOPNET_API coopnet_status coopnet_partition_to_csv(const coopnet_graph_t* g,
                                                    const coopnet_partition_t* p,
                                                    char** out);
COOPNET_API coopnet_status coopnet_modularity(const coopnet_graph_t* g,
                                              const coopnet_partition_t* p,
                                              double* q);

/* ---- Metrics ------------------------------------------------------------ */

/* Conductance of one community. *defined is 0 when it has no internal tie. */
COOPNET_API coopnet_status coopnet_conductance(const coopnet_graph_t* g,
                                               const coopnet_partition_t* p,
                                               int community,
                                               coopnet_counting counting,
                                               double* value, int* defined);
/* meta may be NULL. */
COOPNET_API coopnet_status coopnet_report_build(const coopnet_graph_t* g,
                                                const coopnet_partition_t* p,
                                                const coopnet_metadata_t* meta,
                                                const coopnet_metrics_config* cfg,
                                                coopnet_report_t** out);
COOPNET_API void coopnet_report_free(coopnet_report_t* r);
COOPNET_API coopnet_status coopnet_report_to_json(const coopnet_report_t* r,
                                                  char** out);
COOPNET_API coopnet_status coopnet_report_to_text(const coopnet_report_t* r,
                                                  char** out);
/* *defined is 0 when no ground truth was available. */
COOPNET_API coopnet_status coopnet_report_accuracy(const coopnet_report_t* r,
                                                   double* accuracy,
                                                   int* defined);

/* ---- Layout ------------------------------------------------------------- */

COOPNET_API coopnet_status coopnet_layout_run(const coopnet_graph_t* g,
                                              const coopnet_fa2_params* params,
                                              coopnet_layout_t** out);
COOPNET_API void coopnet_layout_free(coopnet_layout_t* l);
COOPNET_API size_t coopnet_layout_steps(const coopnet_layout_t* l);
COOPNET_API int coopnet_layout_converged(const coopnet_layout_t* l);
COOPNET_API coopnet_status coopnet_layout_position(const coopnet_layout_t* l,
                                                   size_t node, double* x,
                                                   double* y);
/* `entity_id,x,y` */
COOPNET_API coopnet_status coopnet_layout_to_csv(const coopnet_graph_t* g,
                                                 const coopnet_layout_t* l,
                                                 char** out);
COOPNET_API coopnet_status coopnet_layout_load(const coopnet_graph_t* g,
                                               const char* csv,
                                               coopnet_layout_t** out);

/* ---- Synthetic data ----------------------------------------------------- */

/* config_json: {"preset": "tseba-like", ...overrides} or a full config.
 * Any of the out-parameters may be NULL. */
COOPNET_API coopnet_status coopnet_synth_generate(const char* config_json,
                                                  char** affiliation_csv,
                                                  char** metadata_csv,
                                                  char** truth_csv);

/* ---- Pipeline ----------------------------------------------------------- */

/* Default pipeline configuration as JSON. */
COOPNET_API coopnet_status coopnet_pipeline_default_config(char** out);
/* Validates a (partial) configuration or run manifest and returns the full
 * configuration with defaults filled in. */
COOPNET_API coopnet_status coopnet_pipeline_normalize_config(
    const char* config_json, char** out);
/* The synthetic input a run with this configuration would generate. */
COOPNET_API coopnet_status coopnet_pipeline_synth(const char* config_json,
                                                  char** affiliation_csv,
                                                  char** metadata_csv,
                                                  char** truth_csv);
/* Runs every stage and writes the outputs to the configured directory.
 * manifest may be NULL. */
COOPNET_API coopnet_status coopnet_pipeline_run(const char* config_json,
                                                char** manifest);

#ifdef __cplusplus
}
#endif

#endif /* COOPNET_COOPNET_H_ */

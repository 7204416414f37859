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

#ifndef COOPNET_PIPELINE_HPP_
#define COOPNET_PIPELINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coopnet/community.hpp"
#include "coopnet/graph.hpp"
#include "coopnet/layout.hpp"
#include "coopnet/metrics.hpp"
#include "coopnet/similarity.hpp"
#include "coopnet/synthgen.hpp"
#include "json.hpp"

namespace coopnet {

inline constexpr const char* kVersion = "1.0.0";

struct PipelineConfig {
  std::uint64_t seed = 0;
  std::string affiliation_path;
  std::string metadata_path;
  // Synthetic input ({"preset": "tseba-like", ...}); replaces the paths.
  std::optional<nlohmann::json> synth;

  GradeScale scale;
  std::vector<std::string> label_set;

  DistanceMode distance_mode = DistanceMode::kPlain;
  ZeroPolicy zero_policy = ZeroPolicy::kCapToOne;
  double quantile = 0.95;
  unsigned threads = 1;

  Weighting weighting = Weighting::kSimilarity;
  LouvainConfig louvain;
  MetricsConfig metrics;

  bool layout_enabled = true;
  FA2Params layout;

  std::string out_dir = "out";
  std::vector<ExportFormat> formats = {ExportFormat::kGexf};
  bool dump_similarity = false;
  bool dump_cdf = false;
};

nlohmann::json to_json(const PipelineConfig& cfg);

// Overlays `j` on the defaults. Unknown keys and out-of-range values are
// ConfigErrors. A run manifest is accepted too (its "config" member is used).
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

// Every file a run produces, keyed by file name, plus the manifest.
struct PipelineOutputs {
  std::map<std::string, std::string> files;
  nlohmann::json manifest;
};

// Synthetic input of a run: the configured generator with the derived
// "synth" seed and the run's grade scale. Requires cfg.synth.
SynthResult pipeline_synth(const PipelineConfig& cfg);

// Runs all stages in memory. A failing stage rethrows with its name
// prefixed and the original error kind.
PipelineOutputs run_pipeline_in_memory(const PipelineConfig& cfg);

// Runs the pipeline and writes every output under cfg.out_dir. Nothing is
// left behind when a stage or a write fails. Returns the manifest.
nlohmann::json run_pipeline(const PipelineConfig& cfg);

std::string_view distance_mode_name(DistanceMode m);
DistanceMode parse_distance_mode(std::string_view s);
std::string_view zero_policy_name(ZeroPolicy p);
ZeroPolicy parse_zero_policy(std::string_view s);
std::string_view weighting_name(Weighting w);
Weighting parse_weighting(std::string_view s);
std::string_view node_order_name(NodeOrder o);
NodeOrder parse_node_order(std::string_view s);

}  // namespace coopnet

#endif  // COOPNET_PIPELINE_HPP_

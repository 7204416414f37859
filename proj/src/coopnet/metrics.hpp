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

#ifndef COOPNET_METRICS_HPP_
#define COOPNET_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopnet/affiliation.hpp"
#include "coopnet/community.hpp"
#include "coopnet/graph.hpp"
#include "json.hpp"

namespace coopnet {

// Whether ties are counted or their weights summed.
enum class Counting { kBinary, kWeighted };

struct ConductanceResult {
  double epsilon_ab = 0.0;  // ties with exactly one endpoint in the community
  double epsilon_aa = 0.0;  // ties with both endpoints inside
  // epsilon_ab / epsilon_aa; empty when there is no internal tie.
  std::optional<double> value;
};

// Traditional conductance K = epsilon_AB / epsilon_AA of community `c`.
// Throws LookupError for an unknown community.
ConductanceResult conductance(const Graph& g, const Partition& p, int c,
                              Counting counting = Counting::kBinary);

// Conductance of every community in one sweep over the edges.
std::vector<ConductanceResult> conductance_all(const Graph& g, const Partition& p,
                                               Counting counting);

// Mean grade over graded members; empty when none is graded. `meta` is in
// node order (see align_metadata).
std::optional<double> community_grade(const Partition& p,
                                      std::span<const EntityMetadata> meta, int c);

struct AgreementConfig {
  // Communities whose majority share is below this are mixed.
  double purity_threshold = 0.5;
  // Labels that mark "no specialization" (the generator's mixed cohort and
  // loners). Entities carrying them, or no label, are not scored, but the
  // ones carrying them still count against a community's purity.
  std::vector<std::string> ignore_labels = {"mixed", "none"};
};

struct CommunityAgreement {
  std::optional<std::string> majority_label;
  std::optional<double> purity;
  std::size_t labelled = 0;
  std::size_t correct = 0;
  bool mixed = true;
};

struct AgreementReport {
  std::vector<CommunityAgreement> communities;
  std::size_t scored_entities = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::vector<int> mixed_communities;
};

// Majority label per community (ties to the lexicographically smallest),
// mixed flags and accuracy = correct / scored entities. Members of mixed
// communities and unassigned nodes count as incorrect. Throws
// MissingGroundTruthError when no entity carries a scored label.
AgreementReport label_agreement(const Partition& p,
                                std::span<const EntityMetadata> meta,
                                const AgreementConfig& cfg = {});

struct MetricsConfig {
  Counting counting = Counting::kBinary;
  AgreementConfig agreement;
};

struct CommunityReport {
  int id = 0;
  std::size_t size = 0;
  std::size_t graded = 0;
  std::optional<double> mean_grade;
  ConductanceResult conductance;
  std::optional<std::string> majority_label;
  std::optional<double> purity;
  bool mixed = false;

  friend bool operator==(const CommunityReport&, const CommunityReport&);
};

struct CoopetitionReport {
  static constexpr int kVersion = 1;

  std::size_t n_entities = 0;
  std::size_t unassigned_count = 0;
  Counting counting = Counting::kBinary;
  double purity_threshold = 0.5;
  std::vector<CommunityReport> communities;
  // Present only when ground-truth labels were supplied.
  std::optional<double> accuracy;
  std::size_t correct = 0;
  std::size_t scored_entities = 0;
  std::vector<int> mixed_communities;

  friend bool operator==(const CoopetitionReport&, const CoopetitionReport&);
};

// `meta` may be empty (no grades, no labels) or cover every node.
CoopetitionReport coopetition_report(const Graph& g, const Partition& p,
                                     std::span<const EntityMetadata> meta,
                                     const MetricsConfig& cfg = {});

nlohmann::json to_json(const CoopetitionReport& r);
CoopetitionReport report_from_json(const nlohmann::json& j);
std::string to_text(const CoopetitionReport& r);

std::string_view counting_name(Counting c);
Counting parse_counting(std::string_view s);

}  // namespace coopnet

#endif  // COOPNET_METRICS_HPP_

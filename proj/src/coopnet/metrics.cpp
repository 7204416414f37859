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

#include "coopnet/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "coopnet/errors.hpp"

namespace coopnet {

using nlohmann::json;

bool operator==(const CommunityReport& a, const CommunityReport& b) {
  return a.id == b.id && a.size == b.size && a.graded == b.graded &&
         a.mean_grade == b.mean_grade &&
         a.conductance.epsilon_ab == b.conductance.epsilon_ab &&
         a.conductance.epsilon_aa == b.conductance.epsilon_aa &&
         a.conductance.value == b.conductance.value &&
         a.majority_label == b.majority_label && a.purity == b.purity &&
         a.mixed == b.mixed;
}

bool operator==(const CoopetitionReport& a, const CoopetitionReport& b) {
  return a.n_entities == b.n_entities && a.unassigned_count == b.unassigned_count &&
         a.counting == b.counting && a.purity_threshold == b.purity_threshold &&
         a.communities == b.communities && a.accuracy == b.accuracy &&
         a.correct == b.correct && a.scored_entities == b.scored_entities &&
         a.mixed_communities == b.mixed_communities;
}

std::vector<ConductanceResult> conductance_all(const Graph& g, const Partition& p,
                                               Counting counting) {
  if (p.n() != g.n()) throw DataError("partition does not cover the graph");
  std::vector<ConductanceResult> out(p.n_communities());
  for (const auto& e : g.edges()) {
    const double w = counting == Counting::kBinary ? 1.0 : e.weight;
    const int cu = p.community_of(e.u);
    const int cv = p.community_of(e.v);
    if (cu == cv) {
      if (cu >= 0) out[static_cast<std::size_t>(cu)].epsilon_aa += w;
    } else {
      if (cu >= 0) out[static_cast<std::size_t>(cu)].epsilon_ab += w;
      if (cv >= 0) out[static_cast<std::size_t>(cv)].epsilon_ab += w;
    }
  }
  for (auto& r : out) {
    if (r.epsilon_aa > 0.0) r.value = r.epsilon_ab / r.epsilon_aa;
  }
  return out;
}

ConductanceResult conductance(const Graph& g, const Partition& p, int c,
                              Counting counting) {
  if (c < 0 || static_cast<std::size_t>(c) >= p.n_communities()) {
    throw LookupError("unknown community " + std::to_string(c));
  }
  if (p.n() != g.n()) throw DataError("partition does not cover the graph");
  ConductanceResult r;
  for (const auto& e : g.edges()) {
    const bool in_u = p.community_of(e.u) == c;
    const bool in_v = p.community_of(e.v) == c;
    if (!in_u && !in_v) continue;
    const double w = counting == Counting::kBinary ? 1.0 : e.weight;
    (in_u && in_v ? r.epsilon_aa : r.epsilon_ab) += w;
  }
  if (r.epsilon_aa > 0.0) r.value = r.epsilon_ab / r.epsilon_aa;
  return r;
}

std::optional<double> community_grade(const Partition& p,
                                      std::span<const EntityMetadata> meta,
                                      int c) {
  if (c < 0 || static_cast<std::size_t>(c) >= p.n_communities()) {
    throw LookupError("unknown community " + std::to_string(c));
  }
  if (meta.size() != p.n()) throw DataError("metadata does not cover the partition");
  double sum = 0.0;
  std::size_t count = 0;
  for (auto node : p.members(static_cast<std::size_t>(c))) {
    if (meta[node].grade) {
      sum += *meta[node].grade;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

namespace {

const std::string* scored_label(const EntityMetadata& m, const AgreementConfig& cfg) {
  if (!m.label) return nullptr;
  const auto& ig = cfg.ignore_labels;
  if (std::find(ig.begin(), ig.end(), *m.label) != ig.end()) return nullptr;
  return &*m.label;
}

}  // namespace

AgreementReport label_agreement(const Partition& p,
                                std::span<const EntityMetadata> meta,
                                const AgreementConfig& cfg) {
  if (meta.size() != p.n()) throw DataError("metadata does not cover the partition");
  AgreementReport r;
  for (const auto& m : meta) {
    if (scored_label(m, cfg)) ++r.scored_entities;
  }
  if (r.scored_entities == 0) {
    throw MissingGroundTruthError("no ground-truth labels to score against");
  }
  r.communities.resize(p.n_communities());
  for (std::size_t c = 0; c < p.n_communities(); ++c) {
    auto& ca = r.communities[c];
    std::map<std::string, std::size_t> counts;  // ordered: ties -> smallest
    // Ignored labels cannot win the majority but still dilute purity, so a
    // community made mostly of mixed entities is itself mixed.
    for (auto node : p.members(c)) {
      if (meta[node].label && !meta[node].label->empty()) ++ca.labelled;
      if (const auto* label = scored_label(meta[node], cfg)) ++counts[*label];
    }
    std::size_t best = 0;
    for (const auto& [label, count] : counts) {
      if (count > best) {
        best = count;
        ca.majority_label = label;
      }
    }
    if (ca.labelled > 0) {
      ca.purity = static_cast<double>(best) / static_cast<double>(ca.labelled);
      ca.mixed = *ca.purity < cfg.purity_threshold;
    }
    if (ca.mixed) {
      r.mixed_communities.push_back(static_cast<int>(c));
    } else {
      ca.correct = best;
      r.correct += best;
    }
  }
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.scored_entities);
  return r;
}

CoopetitionReport coopetition_report(const Graph& g, const Partition& p,
                                     std::span<const EntityMetadata> meta,
                                     const MetricsConfig& cfg) {
  if (!meta.empty() && meta.size() != p.n()) {
    throw DataError("metadata does not cover the partition");
  }
  CoopetitionReport r;
  r.n_entities = p.n();
  r.unassigned_count = p.unassigned_count();
  r.counting = cfg.counting;
  r.purity_threshold = cfg.agreement.purity_threshold;

  const auto cond = conductance_all(g, p, cfg.counting);
  std::optional<AgreementReport> agreement;
  if (!meta.empty()) {
    const bool any_label = std::any_of(meta.begin(), meta.end(), [&](const auto& m) {
      return scored_label(m, cfg.agreement) != nullptr;
    });
    if (any_label) agreement = label_agreement(p, meta, cfg.agreement);
  }

  for (std::size_t c = 0; c < p.n_communities(); ++c) {
    CommunityReport cr;
    cr.id = static_cast<int>(c);
    cr.size = p.members(c).size();
    cr.conductance = cond[c];
    if (!meta.empty()) {
      for (auto node : p.members(c)) cr.graded += meta[node].grade ? 1 : 0;
      cr.mean_grade = community_grade(p, meta, cr.id);
    }
    if (agreement) {
      const auto& ca = agreement->communities[c];
      cr.majority_label = ca.majority_label;
      cr.purity = ca.purity;
      cr.mixed = ca.mixed;
    }
    r.communities.push_back(std::move(cr));
  }
  if (agreement) {
    r.accuracy = agreement->accuracy;
    r.correct = agreement->correct;
    r.scored_entities = agreement->scored_entities;
    r.mixed_communities = agreement->mixed_communities;
  }
  return r;
}

std::string_view counting_name(Counting c) {
  return c == Counting::kBinary ? "binary" : "weighted";
}

Counting parse_counting(std::string_view s) {
  if (s == "binary") return Counting::kBinary;
  if (s == "weighted") return Counting::kWeighted;
  throw ConfigError("unknown counting mode '" + std::string(s) + "'");
}

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

json to_json(const CoopetitionReport& r) {
  json communities = json::array();
  for (const auto& c : r.communities) {
    communities.push_back({
        {"id", c.id},
        {"size", c.size},
        {"graded", c.graded},
        {"mean_grade", opt(c.mean_grade)},
        {"epsilon_ab", c.conductance.epsilon_ab},
        {"epsilon_aa", c.conductance.epsilon_aa},
        {"conductance", opt(c.conductance.value)},
        {"majority_label", opt(c.majority_label)},
        {"purity", opt(c.purity)},
        {"mixed", c.mixed},
    });
  }
  return {
      {"report_version", CoopetitionReport::kVersion},
      {"n_entities", r.n_entities},
      {"unassigned_count", r.unassigned_count},
      {"counting", counting_name(r.counting)},
      {"purity_threshold", r.purity_threshold},
      {"accuracy", opt(r.accuracy)},
      {"correct", r.correct},
      {"scored_entities", r.scored_entities},
      {"mixed_communities", r.mixed_communities},
      {"communities", std::move(communities)},
  };
}

CoopetitionReport report_from_json(const json& j) {
  try {
    if (j.at("report_version").get<int>() != CoopetitionReport::kVersion) {
      throw DataError("unsupported report_version");
    }
    CoopetitionReport r;
    r.n_entities = j.at("n_entities").get<std::size_t>();
    r.unassigned_count = j.at("unassigned_count").get<std::size_t>();
    r.counting = parse_counting(j.at("counting").get<std::string>());
    r.purity_threshold = j.at("purity_threshold").get<double>();
    r.accuracy = get_opt<double>(j, "accuracy");
    r.correct = j.at("correct").get<std::size_t>();
    r.scored_entities = j.at("scored_entities").get<std::size_t>();
    r.mixed_communities = j.at("mixed_communities").get<std::vector<int>>();
    for (const auto& c : j.at("communities")) {
      CommunityReport cr;
      cr.id = c.at("id").get<int>();
      cr.size = c.at("size").get<std::size_t>();
      cr.graded = c.at("graded").get<std::size_t>();
      cr.mean_grade = get_opt<double>(c, "mean_grade");
      cr.conductance.epsilon_ab = c.at("epsilon_ab").get<double>();
      cr.conductance.epsilon_aa = c.at("epsilon_aa").get<double>();
      cr.conductance.value = get_opt<double>(c, "conductance");
      cr.majority_label = get_opt<std::string>(c, "majority_label");
      cr.purity = get_opt<double>(c, "purity");
      cr.mixed = c.at("mixed").get<bool>();
      r.communities.push_back(std::move(cr));
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string to_text(const CoopetitionReport& r) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %6s %10s %8s %8s %11s  %-14s %6s %s\n",
                "community", "size", "mean_grade", "eps_AB", "eps_AA",
                "conductance", "majority", "purity", "mixed");
  out << line;
  auto num = [](const std::optional<double>& v, const char* fmt) {
    if (!v) return std::string("undefined");
    char buf[32];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return std::string(buf);
  };
  for (const auto& c : r.communities) {
    std::optional<double> percent;
    if (c.conductance.value) percent = *c.conductance.value * 100.0;
    std::snprintf(line, sizeof line,
                  "%-9d %6zu %10s %8.6g %8.6g %11s  %-14s %6s %s\n", c.id, c.size,
                  num(c.mean_grade, "%.3f").c_str(), c.conductance.epsilon_ab,
                  c.conductance.epsilon_aa,
                  num(percent, "%.2f%%").c_str(),
                  c.majority_label.value_or("-").c_str(),
                  num(c.purity, "%.3f").c_str(), c.mixed ? "yes" : "no");
    out << line;
  }
  out << "\nentities: " << r.n_entities << ", communities: " << r.communities.size()
      << ", unassigned: " << r.unassigned_count
      << ", counting: " << counting_name(r.counting) << '\n';
  if (r.accuracy) {
    std::snprintf(line, sizeof line,
                  "label agreement: %.4f (%zu of %zu scored entities), mixed "
                  "communities: %zu\n",
                  *r.accuracy, r.correct, r.scored_entities,
                  r.mixed_communities.size());
    out << line;
  }
  return out.str();
}

}  // namespace coopnet

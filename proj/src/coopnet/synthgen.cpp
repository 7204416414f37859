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

#include "coopnet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "coopnet/errors.hpp"

namespace coopnet {
namespace {

using nlohmann::json;

enum class Role { kGroup, kMixed, kLoner };

struct Member {
  Role role;
  std::size_t group;
};

std::string make_id(char prefix, std::size_t i, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
  std::string digits = std::to_string(i);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

double mixed_rate(const SynthConfig& cfg) {
  if (cfg.mixed_core_rate) return *cfg.mixed_core_rate;
  const auto k = static_cast<double>(cfg.k_groups());
  return k > 0 ? (cfg.p_core + (k - 1.0) * cfg.p_cross) / k : 0.0;
}

double mean_grade(const SynthConfig& cfg) {
  if (cfg.grade_means.empty()) return 0.5 * (cfg.scale.min + cfg.scale.max);
  return std::accumulate(cfg.grade_means.begin(), cfg.grade_means.end(), 0.0) /
         static_cast<double>(cfg.grade_means.size());
}

std::string group_label(const SynthConfig& cfg, std::size_t g) {
  return g < cfg.labels.size() ? cfg.labels[g] : "g" + std::to_string(g);
}

}  // namespace

std::size_t SynthConfig::n_entities() const noexcept {
  return std::accumulate(group_sizes.begin(), group_sizes.end(), std::size_t{0}) +
         mixed_group_size + loner_count;
}

std::size_t SynthConfig::catalogue_size() const noexcept {
  return k_groups() * courses_core_per_group + courses_shared + courses_elective;
}

void validate(const SynthConfig& cfg) {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
  };
  prob(cfg.p_core, "p_core");
  prob(cfg.p_cross, "p_cross");
  prob(cfg.p_shared, "p_shared");
  if (cfg.mixed_core_rate) prob(*cfg.mixed_core_rate, "mixed_core_rate");
  if (cfg.catalogue_size() == 0) throw ConfigError("configuration has no courses");
  if (cfg.n_entities() == 0) throw ConfigError("configuration has no entities");
  if (!cfg.labels.empty() && cfg.labels.size() != cfg.k_groups()) {
    throw ConfigError("labels must name every group");
  }
  for (const auto& l : cfg.labels) {
    if (l.empty() || l == "mixed" || l == "none") {
      throw ConfigError("group label '" + l + "' is reserved or empty");
    }
  }
  if (!cfg.grade_means.empty() && cfg.grade_means.size() != cfg.k_groups()) {
    throw ConfigError("grade_means must have one entry per group");
  }
  if (!(cfg.grade_sd >= 0.0)) throw ConfigError("grade_sd must be >= 0");
  if (!(cfg.scale.min < cfg.scale.max)) throw ConfigError("empty grade scale");
  if (cfg.electives_per_entity > cfg.courses_elective) {
    throw ConfigError("electives_per_entity exceeds the elective pool");
  }
  if (cfg.loner_count > 0 &&
      (cfg.loner_courses == 0 || cfg.loner_courses > cfg.catalogue_size())) {
    throw ConfigError("loner_courses must lie in [1, catalogue size]");
  }
}

SynthConfig tseba_like_preset() {
  SynthConfig cfg;
  cfg.group_sizes = {83, 83, 83, 82};
  cfg.labels = {"finance", "marketing", "accounting", "management"};
  cfg.courses_core_per_group = 20;
  cfg.courses_shared = 24;
  cfg.courses_elective = 759 - 4 * 20 - 24;
  cfg.p_core = 0.7;
  cfg.p_cross = 0.15;
  cfg.p_shared = 0.9;
  cfg.electives_per_entity = 3;
  cfg.mixed_group_size = 108;
  // Sparser than the groups, so the cohort is closer to itself than to any
  // specialization and forms its own community.
  cfg.mixed_core_rate = 0.2;
  cfg.loner_count = 70;
  // Enough random courses that loners stay below the similarity cutoff.
  cfg.loner_courses = 20;
  cfg.grade_means = {3.64, 3.38, 3.35, 3.15};
  cfg.grade_sd = 0.45;
  cfg.scale = {0.0, 5.0};
  cfg.cover_all_courses = true;
  cfg.seed = 0;
  return cfg;
}

json to_json(const SynthConfig& c) {
  return {
      {"group_sizes", c.group_sizes},
      {"labels", c.labels},
      {"courses_core_per_group", c.courses_core_per_group},
      {"courses_shared", c.courses_shared},
      {"courses_elective", c.courses_elective},
      {"p_core", c.p_core},
      {"p_cross", c.p_cross},
      {"p_shared", c.p_shared},
      {"electives_per_entity", c.electives_per_entity},
      {"mixed_group_size", c.mixed_group_size},
      {"mixed_core_rate", c.mixed_core_rate ? json(*c.mixed_core_rate) : json()},
      {"loner_count", c.loner_count},
      {"loner_courses", c.loner_courses},
      {"grade_means", c.grade_means},
      {"grade_sd", c.grade_sd},
      {"grade_min", c.scale.min},
      {"grade_max", c.scale.max},
      {"cover_all_courses", c.cover_all_courses},
      {"seed", c.seed},
  };
}

SynthConfig synth_config_from_json(const json& j) {
  SynthConfig c;
  try {
    if (j.contains("preset")) {
      const auto name = j.at("preset").get<std::string>();
      if (name != "tseba-like") throw ConfigError("unknown synth preset '" + name + "'");
      c = tseba_like_preset();
    }
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    take("group_sizes", c.group_sizes);
    if (j.contains("k_groups") && j.contains("group_size")) {
      c.group_sizes.assign(j.at("k_groups").get<std::size_t>(),
                           j.at("group_size").get<std::size_t>());
    }
    take("labels", c.labels);
    take("courses_core_per_group", c.courses_core_per_group);
    take("courses_shared", c.courses_shared);
    take("courses_elective", c.courses_elective);
    take("p_core", c.p_core);
    take("p_cross", c.p_cross);
    take("p_shared", c.p_shared);
    take("electives_per_entity", c.electives_per_entity);
    take("mixed_group_size", c.mixed_group_size);
    if (j.contains("mixed_core_rate")) {
      const auto& v = j.at("mixed_core_rate");
      c.mixed_core_rate = v.is_null() ? std::nullopt : std::optional(v.get<double>());
    }
    take("loner_count", c.loner_count);
    take("loner_courses", c.loner_courses);
    take("grade_means", c.grade_means);
    take("grade_sd", c.grade_sd);
    take("grade_min", c.scale.min);
    take("grade_max", c.scale.max);
    take("cover_all_courses", c.cover_all_courses);
    take("seed", c.seed);
    if (j.contains("p_cross_ratio")) {
      c.p_cross = j.at("p_cross_ratio").get<double>() * c.p_core;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synth config: ") + e.what());
  }
  if (c.labels.size() != c.group_sizes.size() && !j.contains("labels")) {
    c.labels.clear();
  }
  if (c.grade_means.size() != c.group_sizes.size() && !j.contains("grade_means")) {
    c.grade_means.clear();
  }
  validate(c);
  return c;
}

double expected_cells(const SynthConfig& cfg) {
  const auto k = static_cast<double>(cfg.k_groups());
  const auto core = static_cast<double>(cfg.courses_core_per_group);
  const auto shared = static_cast<double>(cfg.courses_shared);
  const auto electives = static_cast<double>(cfg.electives_per_entity);
  const double members = std::accumulate(cfg.group_sizes.begin(),
                                         cfg.group_sizes.end(), 0.0);
  const double per_member = core * cfg.p_core + (k - 1.0) * core * cfg.p_cross +
                            shared * cfg.p_shared + electives;
  const double per_mixed = k * core * mixed_rate(cfg) + shared * cfg.p_shared + electives;
  return members * per_member +
         static_cast<double>(cfg.mixed_group_size) * per_mixed +
         static_cast<double>(cfg.loner_count * cfg.loner_courses);
}

double cells_variance(const SynthConfig& cfg) {
  auto bern = [](double p) { return p * (1.0 - p); };
  const auto k = static_cast<double>(cfg.k_groups());
  const auto core = static_cast<double>(cfg.courses_core_per_group);
  const auto shared = static_cast<double>(cfg.courses_shared);
  const double members = std::accumulate(cfg.group_sizes.begin(),
                                         cfg.group_sizes.end(), 0.0);
  const double per_member = core * bern(cfg.p_core) +
                            (k - 1.0) * core * bern(cfg.p_cross) +
                            shared * bern(cfg.p_shared);
  const double per_mixed = k * core * bern(mixed_rate(cfg)) + shared * bern(cfg.p_shared);
  return members * per_member + static_cast<double>(cfg.mixed_group_size) * per_mixed;
}

SynthResult generate(const SynthConfig& cfg) {
  validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  const std::size_t k = cfg.k_groups();
  const std::size_t core = cfg.courses_core_per_group;
  const std::size_t shared_begin = k * core;
  const std::size_t elective_begin = shared_begin + cfg.courses_shared;
  const std::size_t catalogue = cfg.catalogue_size();

  std::vector<Member> members;
  for (std::size_t g = 0; g < k; ++g) {
    members.insert(members.end(), cfg.group_sizes[g], Member{Role::kGroup, g});
  }
  members.insert(members.end(), cfg.mixed_group_size, Member{Role::kMixed, k});
  members.insert(members.end(), cfg.loner_count, Member{Role::kLoner, 0});
  std::shuffle(members.begin(), members.end(), rng);

  const std::size_t n = members.size();
  std::vector<std::vector<std::size_t>> courses(n);
  std::vector<std::size_t> elective_pool(cfg.courses_elective);
  std::iota(elective_pool.begin(), elective_pool.end(), elective_begin);
  std::vector<std::size_t> whole(catalogue);
  std::iota(whole.begin(), whole.end(), std::size_t{0});

  for (std::size_t e = 0; e < n; ++e) {
    const auto& mbr = members[e];
    auto& taken = courses[e];
    if (mbr.role == Role::kLoner) {
      std::sample(whole.begin(), whole.end(), std::back_inserter(taken),
                  static_cast<std::ptrdiff_t>(cfg.loner_courses), rng);
    } else {
      for (std::size_t g = 0; g < k; ++g) {
        double p = mixed_rate(cfg);
        if (mbr.role == Role::kGroup) p = g == mbr.group ? cfg.p_core : cfg.p_cross;
        std::bernoulli_distribution take(p);
        for (std::size_t c = 0; c < core; ++c) {
          if (take(rng)) taken.push_back(g * core + c);
        }
      }
      std::bernoulli_distribution take_shared(cfg.p_shared);
      for (std::size_t c = 0; c < cfg.courses_shared; ++c) {
        if (take_shared(rng)) taken.push_back(shared_begin + c);
      }
      std::sample(elective_pool.begin(), elective_pool.end(),
                  std::back_inserter(taken),
                  static_cast<std::ptrdiff_t>(cfg.electives_per_entity), rng);
    }
    if (taken.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, catalogue - 1);
      taken.push_back(pick(rng));
    }
  }

  if (cfg.cover_all_courses) {
    std::vector<bool> used(catalogue, false);
    for (const auto& taken : courses) {
      for (auto c : taken) used[c] = true;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t c = 0; c < catalogue; ++c) {
      if (!used[c]) courses[pick(rng)].push_back(c);
    }
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  const double overall_mean = mean_grade(cfg);
  AffiliationBuilder builder;
  std::vector<EntityMetadata> metadata(n);
  std::vector<int> truth(n, kUnassigned);
  for (std::size_t e = 0; e < n; ++e) {
    const auto& mbr = members[e];
    const auto id = make_id('s', e + 1, n);
    auto& taken = courses[e];
    std::sort(taken.begin(), taken.end());
    for (auto c : taken) builder.add(id, make_id('c', c + 1, catalogue));

    auto& meta = metadata[e];
    meta.entity_id = id;
    double mean = overall_mean;
    switch (mbr.role) {
      case Role::kGroup:
        meta.label = group_label(cfg, mbr.group);
        if (!cfg.grade_means.empty()) mean = cfg.grade_means[mbr.group];
        truth[e] = static_cast<int>(mbr.group);
        break;
      case Role::kMixed:
        meta.label = "mixed";
        truth[e] = static_cast<int>(k);
        break;
      case Role::kLoner:
        meta.label = "none";
        break;
    }
    const double grade = mean + cfg.grade_sd * noise(rng);
    meta.grade = std::clamp(grade, cfg.scale.min, cfg.scale.max);
  }

  SynthResult out;
  out.matrix = std::move(builder).build();
  out.metadata = std::move(metadata);
  out.truth = Partition::from_labels(truth);
  out.catalogue_size = catalogue;
  return out;
}

}  // namespace coopnet

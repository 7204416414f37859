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

#ifndef COOPNET_SYNTHGEN_HPP_
#define COOPNET_SYNTHGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopnet/affiliation.hpp"
#include "coopnet/community.hpp"
#include "json.hpp"

namespace coopnet {

// Planted-partition curriculum model.
//
// The catalogue holds one block of core courses per group, a block of shared
// courses and a pool of electives. Group members take own-group core courses
// with p_core, other groups' core courses with p_cross and shared courses
// with p_shared. Mixed members take every core course with one rate,
// mixed_core_rate, or by default the average of p_core and the k-1 p_cross
// rates, so they lean towards no group. Every non-loner also draws
// electives_per_entity distinct electives. Loners take loner_courses distinct
// courses drawn from the whole catalogue and nothing else.
struct SynthConfig {
  std::vector<std::size_t> group_sizes;
  // One per group; defaults to g0, g1, ...
  std::vector<std::string> labels;
  std::size_t courses_core_per_group = 25;
  std::size_t courses_shared = 20;
  std::size_t courses_elective = 0;
  double p_core = 0.8;
  double p_cross = 0.08;
  double p_shared = 0.9;
  std::size_t electives_per_entity = 0;
  std::size_t mixed_group_size = 0;
  std::optional<double> mixed_core_rate;
  std::size_t loner_count = 0;
  std::size_t loner_courses = 3;
  // Per-group grade means; mixed members and loners use their average.
  std::vector<double> grade_means;
  double grade_sd = 0.5;
  GradeScale scale;
  // Give every course nobody drew to one random entity, so the catalogue
  // size survives a CSV round trip.
  bool cover_all_courses = false;
  std::uint64_t seed = 0;

  std::size_t k_groups() const noexcept { return group_sizes.size(); }
  std::size_t n_entities() const noexcept;
  std::size_t catalogue_size() const noexcept;
};

// Throws ConfigError for infeasible configurations.
void validate(const SynthConfig& cfg);

// Roughly the shape of a 509-student, 759-course business school: four
// specializations, a mixed cohort of about 21% and about 13% loners, with a
// density near 5.7%.
SynthConfig tseba_like_preset();

// Resolves {"preset": name, ...overrides} or a full document.
SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SynthConfig& cfg);

struct SynthResult {
  AffiliationMatrix matrix;
  // In matrix entity order.
  std::vector<EntityMetadata> metadata;
  // Groups and the mixed cohort are communities; loners are unassigned.
  Partition truth;
  std::size_t catalogue_size = 0;
};

SynthResult generate(const SynthConfig& cfg);

// Closed-form mean and variance of the number of cells, ignoring the
// cover_all_courses fill and the one-course fallback for an entity that drew
// nothing.
double expected_cells(const SynthConfig& cfg);
double cells_variance(const SynthConfig& cfg);

}  // namespace coopnet

#endif  // COOPNET_SYNTHGEN_HPP_

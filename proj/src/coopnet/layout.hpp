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

#ifndef COOPNET_LAYOUT_HPP_
#define COOPNET_LAYOUT_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "coopnet/graph.hpp"

namespace coopnet {

// Linear-attraction / degree-scaled-repulsion layout parameters.
struct FA2Params {
  double k_repulsion = 1.0;
  double gravity = 0.0;
  // Attraction along an edge scales with weight^edge_weight_influence.
  double edge_weight_influence = 1.0;
  std::size_t iterations = 1000;
  // Initial global speed.
  double speed = 1.0;
  // Converged once the largest per-node displacement falls below this.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  // Swing tolerance of the adaptive speed rule.
  double jitter_tolerance = 1.0;
  // No node moves further than this fraction of the layout diameter per step.
  double max_step_fraction = 0.1;
};

// Throws ConfigError when a parameter is out of range.
void validate(const FA2Params& params);

struct LayoutState {
  std::vector<Point> positions;
  std::size_t iteration = 0;
  double global_speed = 1.0;
  // Forces of the previous step; empty before the first step.
  std::vector<Point> previous_forces;
  double last_max_displacement = 0.0;
};

// Seeded uniform scatter in the unit square.
LayoutState init_positions(const Graph& g, std::uint64_t seed, double speed = 1.0);

// Net force on every node for the given positions:
//   attraction  w^e * d            along each edge
//   repulsion   k_r (deg_i + 1)(deg_j + 1) / d   between every pair
//   gravity     k_g (deg_i + 1)    towards the origin
// Pairs closer than 1e-6 repel with the force at that distance along a
// direction fixed by (seed, i, j). Throws DivergenceError naming the pair
// when a contribution is not finite.
std::vector<Point> compute_forces(const Graph& g, const std::vector<Point>& positions,
                                  const FA2Params& params);

// One synchronous update from the snapshot `state`. All nodes share one
// global speed, adapted from swinging/traction and capped so the largest
// displacement is at most max_step_fraction of the layout diameter.
LayoutState fa2_step(const Graph& g, const LayoutState& state,
                     const FA2Params& params);

enum class StopReason { kConverged, kIterationsExhausted };

struct LayoutResult {
  LayoutState state;
  StopReason stop = StopReason::kIterationsExhausted;
  std::size_t steps = 0;
};

LayoutResult fa2_run(const Graph& g, const FA2Params& params);

std::string_view stop_reason_name(StopReason r);

// `entity_id,x,y`
void write_positions(std::ostream& out, const std::vector<std::string>& ids,
                     const std::vector<Point>& positions);
std::vector<Point> read_positions(std::istream& in,
                                  const std::vector<std::string>& ids);

}  // namespace coopnet

#endif  // COOPNET_LAYOUT_HPP_

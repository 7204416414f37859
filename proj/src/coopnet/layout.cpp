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

#include "coopnet/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "coopnet/errors.hpp"
#include "coopnet/seeding.hpp"
#include "coopnet/text.hpp"

namespace coopnet {
namespace {

constexpr double kMinDistance = 1e-6;

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

void validate(const FA2Params& p) {
  if (!(p.k_repulsion > 0.0)) throw ConfigError("k_repulsion must be > 0");
  if (!(p.gravity >= 0.0)) throw ConfigError("gravity must be >= 0");
  if (!(p.edge_weight_influence >= 0.0)) {
    throw ConfigError("edge_weight_influence must be >= 0");
  }
  if (!(p.speed > 0.0)) throw ConfigError("speed must be > 0");
  if (!(p.tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  if (!(p.jitter_tolerance > 0.0)) throw ConfigError("jitter_tolerance must be > 0");
  if (!(p.max_step_fraction > 0.0)) throw ConfigError("max_step_fraction must be > 0");
}

LayoutState init_positions(const Graph& g, std::uint64_t seed, double speed) {
  LayoutState st;
  st.global_speed = speed;
  st.positions.resize(g.n());
  std::mt19937_64 rng(seed);
  for (auto& p : st.positions) {
    p.x = unit_from_bits(rng());
    p.y = unit_from_bits(rng());
  }
  return st;
}

std::vector<Point> compute_forces(const Graph& g, const std::vector<Point>& pos,
                                  const FA2Params& params) {
  const std::size_t n = g.n();
  if (pos.size() != n) throw DataError("positions do not cover the graph");
  std::vector<Point> force(n);
  auto fail = [&](const char* what, std::size_t i, std::size_t j) {
    throw DivergenceError(std::string("non-finite ") + what + " between '" +
                          g.ids()[i] + "' and '" + g.ids()[j] + "'");
  };

  // Repulsion over all pairs in fixed order.
  for (std::size_t i = 0; i < n; ++i) {
    const double mass_i = static_cast<double>(g.degree(i) + 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mass_j = static_cast<double>(g.degree(j) + 1);
      double dx = pos[i].x - pos[j].x;
      double dy = pos[i].y - pos[j].y;
      double d = std::hypot(dx, dy);
      if (d < kMinDistance) {
        const double angle =
            2.0 * std::numbers::pi *
            unit_from_bits(mix64(params.seed ^ mix64((std::uint64_t{i} << 32) | j)));
        dx = std::cos(angle);
        dy = std::sin(angle);
        d = kMinDistance;
      } else {
        dx /= d;
        dy /= d;
      }
      const double f = params.k_repulsion * mass_i * mass_j / d;
      const Point fi{f * dx, f * dy};
      if (!finite(fi)) fail("repulsion", i, j);
      force[i].x += fi.x;
      force[i].y += fi.y;
      force[j].x -= fi.x;
      force[j].y -= fi.y;
    }
  }

  // Attraction: magnitude w^e * d along the edge, i.e. w^e * (p_j - p_i).
  for (const auto& e : g.edges()) {
    const double scale = params.edge_weight_influence == 0.0
                             ? 1.0
                             : std::pow(e.weight, params.edge_weight_influence);
    const Point fa{scale * (pos[e.v].x - pos[e.u].x),
                   scale * (pos[e.v].y - pos[e.u].y)};
    if (!finite(fa)) fail("attraction", e.u, e.v);
    force[e.u].x += fa.x;
    force[e.u].y += fa.y;
    force[e.v].x -= fa.x;
    force[e.v].y -= fa.y;
  }

  if (params.gravity > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::hypot(pos[i].x, pos[i].y);
      if (r == 0.0) continue;
      const double f = params.gravity * static_cast<double>(g.degree(i) + 1) / r;
      force[i].x -= f * pos[i].x;
      force[i].y -= f * pos[i].y;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!finite(force[i])) fail("net force", i, i);
  }
  return force;
}

LayoutState fa2_step(const Graph& g, const LayoutState& state,
                     const FA2Params& params) {
  validate(params);
  const std::size_t n = g.n();
  for (const auto& p : state.positions) {
    if (!finite(p)) throw DivergenceError("layout state holds non-finite positions");
  }
  LayoutState next;
  next.iteration = state.iteration + 1;
  next.previous_forces = compute_forces(g, state.positions, params);
  const auto& force = next.previous_forces;

  double speed = state.global_speed;
  if (state.previous_forces.size() == n) {
    double swinging = 0.0;
    double traction = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mass = static_cast<double>(g.degree(i) + 1);
      const auto& prev = state.previous_forces[i];
      swinging += mass * std::hypot(force[i].x - prev.x, force[i].y - prev.y);
      traction += mass * 0.5 * std::hypot(force[i].x + prev.x, force[i].y + prev.y);
    }
    if (swinging > 0.0) {
      speed = std::min(params.jitter_tolerance * traction / swinging, 1.5 * speed);
    } else {
      speed *= 1.5;
    }
  }

  double max_force = 0.0;
  Point lo{HUGE_VAL, HUGE_VAL};
  Point hi{-HUGE_VAL, -HUGE_VAL};
  for (std::size_t i = 0; i < n; ++i) {
    max_force = std::max(max_force, std::hypot(force[i].x, force[i].y));
    lo = {std::min(lo.x, state.positions[i].x), std::min(lo.y, state.positions[i].y)};
    hi = {std::max(hi.x, state.positions[i].x), std::max(hi.y, state.positions[i].y)};
  }
  const double diameter = n > 1 ? std::hypot(hi.x - lo.x, hi.y - lo.y) : 0.0;
  const double limit =
      params.max_step_fraction * (diameter > 0.0 ? diameter : 1.0);
  if (speed * max_force > limit) speed = limit / max_force;

  next.global_speed = speed > 0.0 ? speed : params.speed;
  next.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    next.positions[i] = {state.positions[i].x + speed * force[i].x,
                         state.positions[i].y + speed * force[i].y};
    if (!finite(next.positions[i])) {
      throw DivergenceError("position of '" + g.ids()[i] + "' diverged");
    }
  }
  next.last_max_displacement = speed * max_force;
  return next;
}

LayoutResult fa2_run(const Graph& g, const FA2Params& params) {
  validate(params);
  LayoutResult r;
  r.state = init_positions(g, params.seed, params.speed);
  for (std::size_t it = 0; it < params.iterations; ++it) {
    r.state = fa2_step(g, r.state, params);
    ++r.steps;
    if (r.state.last_max_displacement < params.tolerance) {
      r.stop = StopReason::kConverged;
      return r;
    }
  }
  r.stop = StopReason::kIterationsExhausted;
  return r;
}

std::string_view stop_reason_name(StopReason r) {
  return r == StopReason::kConverged ? "converged" : "iterations_exhausted";
}

void write_positions(std::ostream& out, const std::vector<std::string>& ids,
                     const std::vector<Point>& positions) {
  if (ids.size() != positions.size()) throw DataError("position/id count mismatch");
  out << "entity_id,x,y\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i] << ',' << text::format_exact(positions[i].x) << ','
        << text::format_exact(positions[i].y) << '\n';
  }
}

std::vector<Point> read_positions(std::istream& in,
                                  const std::vector<std::string>& ids) {
  text::CsvReader reader(in);
  text::expect_header(reader, {"entity_id", "x", "y"});
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
  std::vector<Point> out(ids.size());
  std::vector<bool> seen(ids.size(), false);
  std::vector<std::string> f;
  while (reader.next(f)) {
    if (f.size() != 3) throw ParseError(reader.line(), "expected 3 fields");
    auto it = index.find(f[0]);
    if (it == index.end()) throw ParseError(reader.line(), "unknown entity '" + f[0] + "'");
    auto x = text::parse_double(f[1]);
    auto y = text::parse_double(f[2]);
    if (!x || !y) throw ParseError(reader.line(), "bad coordinate");
    out[it->second] = {*x, *y};
    seen[it->second] = true;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen[i]) throw DataError("positions miss entity '" + ids[i] + "'");
  }
  return out;
}

}  // namespace coopnet

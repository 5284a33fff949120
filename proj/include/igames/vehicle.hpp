// Copyright 2026 The igames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IGAMES_VEHICLE_HPP_
#define IGAMES_VEHICLE_HPP_

#include <vector>

#include "igames/game.hpp"

// Discrete longitudinal vehicle dynamics and the mapping from per-lane
// travel-axis coordinates to the shared 2-D intersection plane.

namespace igames {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Position along the travel axis (m) and speed (m/s) of one vehicle.
// z is signed distance traveled: z = stop_line at the intersection center,
// negative before crossing.
struct LongitudinalState {
  double z = 0.0;
  double v = 0.0;

  friend bool operator==(const LongitudinalState&,
                         const LongitudinalState&) = default;
};

// Lane placement of one agent. heading is an axis-aligned unit vector;
// 2-D position = lane_offset + heading * z.
struct AgentGeometry {
  Vec2 heading{0.0, 1.0};
  Vec2 lane_offset{0.0, 0.0};
  double stop_line = 0.0;  // z-coordinate of the intersection center
};

// Global state: one longitudinal state per agent plus the tick clock.
struct WorldState {
  std::vector<LongitudinalState> agents;
  int epoch = 0;
  double dt = 0.5;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

// One step of the double-integrator dynamics with the speed floored at 0
// (vehicles do not reverse): z' = z + dt*v, v' = max(0, v + dt*u).
LongitudinalState step(const LongitudinalState& state, const Action& u,
                       double dt);

Vec2 position_2d(const AgentGeometry& geom, const LongitudinalState& state);

// Distance still to travel to the intersection center; negative once past.
inline double distance_to_intersection(const AgentGeometry& geom,
                                       const LongitudinalState& state) {
  return -(state.z - geom.stop_line);
}

// Trajectory of length T+1 produced by applying each agent's k-th action at
// tick k. Every strategy must span exactly T steps.
std::vector<WorldState> rollout(const WorldState& world,
                                const StrategyProfile& profile);

}  // namespace igames

#endif  // IGAMES_VEHICLE_HPP_

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

#include "igames/vehicle.hpp"

#include <algorithm>
#include <stdexcept>

namespace igames {

LongitudinalState step(const LongitudinalState& state, const Action& u,
                       double dt) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  return {state.z + dt * state.v, std::max(0.0, state.v + dt * u.accel)};
}

Vec2 position_2d(const AgentGeometry& geom, const LongitudinalState& state) {
  return {geom.lane_offset.x + geom.heading.x * state.z,
          geom.lane_offset.y + geom.heading.y * state.z};
}

std::vector<WorldState> rollout(const WorldState& world,
                                const StrategyProfile& profile) {
  if (profile.size() != world.agents.size()) {
    throw std::invalid_argument("profile size does not match agent count");
  }
  const int horizon = profile.empty() ? 0 : profile.front().total_steps();
  for (const auto& s : profile) {
    if (s.total_steps() != horizon) {
      throw std::invalid_argument("strategies span different horizons");
    }
  }

  std::vector<WorldState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(horizon) + 1);
  trajectory.push_back(world);
  for (int k = 0; k < horizon; ++k) {
    WorldState next = trajectory.back();
    next.epoch += 1;
    for (std::size_t i = 0; i < next.agents.size(); ++i) {
      next.agents[i] = step(next.agents[i], profile[i].action_at(k), world.dt);
    }
    trajectory.push_back(std::move(next));
  }
  return trajectory;
}

}  // namespace igames

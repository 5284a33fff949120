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

#include "igames/nash.hpp"

#include <limits>
#include <stdexcept>

namespace igames {

namespace {

bool is_all_zero(const Strategy& s) {
  for (const auto& seg : s.segments) {
    if (seg.action.accel != 0.0) return false;
  }
  return true;
}

Profile default_init(const GameSpec& game) {
  Profile init(game.num_players(), 0);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int s = 0; s < game.set_size(i); ++s) {
      if (is_all_zero(game.strategy(i, s))) {
        init[i] = s;
        break;
      }
    }
  }
  return init;
}

std::vector<double> profile_costs(const GameSpec& game,
                                  const Profile& profile) {
  std::vector<double> costs(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    costs[i] = game.cost->evaluate(profile, i);
  }
  return costs;
}

}  // namespace

EquilibriumResult nash_brd(const GameSpec& game, const BrdConfig& cfg) {
  game.validate();
  if (cfg.max_sweeps < 1) {
    throw std::invalid_argument("max_sweeps must be at least 1");
  }
  Profile profile = cfg.init ? *cfg.init : default_init(game);
  if (static_cast<int>(profile.size()) != game.num_players()) {
    throw std::invalid_argument("init profile size does not match players");
  }

  EquilibriumResult result;
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    const Profile prev = profile;
    for (int i = 0; i < game.num_players(); ++i) {
      const auto ties = best_response_set(game, i, profile);
      profile[i] =
          cfg.tie_break == TieBreak::LowestIndex ? ties.front() : ties.back();
    }
    result.iterations = sweep;
    if (profile == prev) {
      result.converged = true;
      break;
    }
  }
  result.profile = std::move(profile);
  result.costs = profile_costs(game, result.profile);
  return result;
}

EquilibriumResult nash_pairwise(const GameSpec& game, int ego,
                                const BrdConfig& cfg) {
  game.validate();
  const int n = game.num_players();
  if (n < 2) throw std::invalid_argument("pairwise games need two players");
  if (ego < 0 || ego >= n) throw std::invalid_argument("ego out of range");
  if (n == 2) return nash_brd(game, cfg);

  EquilibriumResult result;
  result.profile.assign(n, 0);
  result.converged = true;

  std::vector<Strategy> ego_strategies;
  std::vector<int> ego_indices;
  for (int other = 0; other < n; ++other) {
    if (other == ego) continue;
    const GameSpec pair = make_pair_game(game, ego, other);
    BrdConfig pair_cfg = cfg;
    if (cfg.init) pair_cfg.init = Profile{(*cfg.init)[ego], (*cfg.init)[other]};
    const EquilibriumResult r = nash_brd(pair, pair_cfg);
    ego_strategies.push_back(pair.strategy(0, r.profile[0]));
    ego_indices.push_back(r.profile[0]);
    result.profile[other] = r.profile[1];
    result.converged = result.converged && r.converged;
    result.iterations += r.iterations;
  }
  result.profile[ego] = ego_indices[most_conservative_index(ego_strategies)];
  result.costs = profile_costs(game, result.profile);
  return result;
}

int most_conservative_index(const std::vector<Strategy>& strategies) {
  if (strategies.empty()) {
    throw std::invalid_argument("most_conservative needs a non-empty set");
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(strategies.size()); ++i) {
    const double a0 = strategies[i].segment_accel(0);
    const double b0 = strategies[best].segment_accel(0);
    if (a0 < b0 || (a0 == b0 && strategies[i].segment_accel(1) <
                                    strategies[best].segment_accel(1))) {
      best = i;
    }
  }
  return best;
}

const Strategy& most_conservative(const std::vector<Strategy>& strategies) {
  return strategies[most_conservative_index(strategies)];
}

double potential_value(const GameSpec& game, const Profile& profile) {
  double total = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    total += game.cost->evaluate(profile, i);
  }
  return total;
}

EquilibriumResult nash_potential(const GameSpec& game, std::uint64_t cap) {
  EquilibriumResult result;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t scanned = 0;
  for_each_profile(
      game,
      [&](const Profile& p) {
        ++scanned;
        const double value = potential_value(game, p);
        if (value < best) {
          best = value;
          result.profile = p;
        }
      },
      cap);
  result.iterations = static_cast<int>(scanned);
  result.costs = profile_costs(game, result.profile);
  result.converged = verify_nash(game, result.profile);
  return result;
}

}  // namespace igames

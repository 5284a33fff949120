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

#include "igames/game.hpp"

#include <limits>

namespace igames {

Action Strategy::action_at(int k) const {
  for (const auto& seg : segments) {
    if (k < seg.steps) return seg.action;
    k -= seg.steps;
  }
  throw std::out_of_range("strategy tick index past horizon");
}

TableCostEvaluator::TableCostEvaluator(std::vector<int> set_sizes,
                                       std::vector<std::vector<double>> costs)
    : set_sizes_(std::move(set_sizes)), costs_(std::move(costs)) {
  if (costs_.size() != set_sizes_.size()) {
    throw std::invalid_argument("one cost table required per player");
  }
  std::size_t total = 1;
  for (int s : set_sizes_) {
    if (s <= 0) throw std::invalid_argument("empty strategy set in table");
    total *= static_cast<std::size_t>(s);
  }
  for (const auto& table : costs_) {
    if (table.size() != total) {
      throw std::invalid_argument("cost table size does not match set sizes");
    }
  }
}

std::size_t TableCostEvaluator::flat_index(const Profile& profile) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < set_sizes_.size(); ++i) {
    idx = idx * static_cast<std::size_t>(set_sizes_[i]) +
          static_cast<std::size_t>(profile[i]);
  }
  return idx;
}

double TableCostEvaluator::evaluate(const Profile& profile, int player) const {
  return costs_[static_cast<std::size_t>(player)][flat_index(profile)];
}

void GameSpec::validate() const {
  if (strategy_sets.empty()) {
    throw std::invalid_argument("game has no players");
  }
  for (const auto& set : strategy_sets) {
    if (set.empty()) {
      throw std::invalid_argument("player has an empty strategy set");
    }
  }
  if (!cost) throw std::invalid_argument("game has no cost evaluator");
}

StrategyProfile materialize(const GameSpec& game, const Profile& profile) {
  StrategyProfile out;
  out.reserve(profile.size());
  for (int i = 0; i < game.num_players(); ++i) {
    out.push_back(game.strategy(i, profile[i]));
  }
  return out;
}

std::vector<Strategy> make_segmented_strategies(
    const std::vector<double>& accels, int num_segments,
    int steps_per_segment) {
  if (accels.empty() || num_segments <= 0 || steps_per_segment <= 0) {
    throw std::invalid_argument("strategy set parameters must be positive");
  }
  std::vector<Strategy> out;
  std::uint64_t total = 1;
  for (int k = 0; k < num_segments; ++k) total *= accels.size();
  out.reserve(total);

  std::vector<std::size_t> odo(static_cast<std::size_t>(num_segments), 0);
  for (;;) {
    Strategy s;
    s.segments.reserve(odo.size());
    for (std::size_t a : odo) {
      s.segments.push_back({Action{accels[a]}, steps_per_segment});
    }
    out.push_back(std::move(s));
    int i = num_segments - 1;
    for (; i >= 0; --i) {
      if (++odo[i] < accels.size()) break;
      odo[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

std::uint64_t profile_count(const GameSpec& game) {
  std::uint64_t total = 1;
  for (const auto& set : game.strategy_sets) {
    const std::uint64_t s = set.size();
    if (s != 0 && total > std::numeric_limits<std::uint64_t>::max() / s) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= s;
  }
  return total;
}

namespace detail {

std::uint64_t checked_profile_count(const GameSpec& game, std::uint64_t cap) {
  game.validate();
  const std::uint64_t total = profile_count(game);
  if (total > cap) {
    throw CapExceededError("profile space of " + std::to_string(total) +
                           " exceeds cap of " + std::to_string(cap));
  }
  return total;
}

}  // namespace detail

std::vector<int> best_response_set(const GameSpec& game, int player,
                                   const Profile& fixed, double tol) {
  game.validate();
  if (player < 0 || player >= game.num_players()) {
    throw std::invalid_argument("player index out of range");
  }
  Profile probe = fixed;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> cost_of(game.set_size(player));
  for (int s = 0; s < game.set_size(player); ++s) {
    probe[player] = s;
    cost_of[s] = game.cost->evaluate(probe, player);
    if (cost_of[s] < best) best = cost_of[s];
  }
  std::vector<int> ties;
  for (int s = 0; s < game.set_size(player); ++s) {
    if (cost_of[s] <= best + tol) ties.push_back(s);
  }
  return ties;
}

bool verify_nash(const GameSpec& game, const Profile& profile) {
  game.validate();
  Profile probe = profile;
  for (int i = 0; i < game.num_players(); ++i) {
    const double held = game.cost->evaluate(profile, i);
    for (int s = 0; s < game.set_size(i); ++s) {
      probe[i] = s;
      if (game.cost->evaluate(probe, i) < held) return false;
    }
    probe[i] = profile[i];
  }
  return true;
}

std::vector<Profile> brute_force_nash(const GameSpec& game,
                                      std::uint64_t cap) {
  std::vector<Profile> equilibria;
  for_each_profile(
      game,
      [&](const Profile& p) {
        if (verify_nash(game, p)) equilibria.push_back(p);
      },
      cap);
  return equilibria;
}

GameSpec make_pair_game(const GameSpec& game, int ego, int other) {
  game.validate();
  if (ego == other || ego < 0 || other < 0 || ego >= game.num_players() ||
      other >= game.num_players()) {
    throw std::invalid_argument("invalid pair restriction");
  }
  GameSpec pair;
  pair.strategy_sets = {game.strategy_sets[ego], game.strategy_sets[other]};
  pair.cost = game.cost->restrict_pair(ego, other);
  return pair;
}

}  // namespace igames

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

#include "igames/stackelberg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace igames {

namespace {

std::vector<double> profile_costs(const GameSpec& game,
                                  const Profile& profile) {
  std::vector<double> costs(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    costs[i] = game.cost->evaluate(profile, i);
  }
  return costs;
}

// Presents a game whose `slot` player is pinned to one strategy of the base
// game. Profiles still carry an entry for that slot (indexing its singleton
// set); it is translated back to the base index before evaluation.
class BoundSlotEvaluator final : public CostEvaluator {
 public:
  BoundSlotEvaluator(std::shared_ptr<const CostEvaluator> base, int slot,
                     int index)
      : base_(std::move(base)), slot_(slot), index_(index) {}

  double evaluate(const Profile& profile, int player) const override {
    Profile full = profile;
    full[slot_] = index_;
    return base_->evaluate(full, player);
  }

 private:
  std::shared_ptr<const CostEvaluator> base_;
  int slot_;
  int index_;
};

// Mode-selected entries of `candidates`: the ones minimizing (Strong) or
// maximizing (Weak) the leader's cost. Order of `candidates` is preserved.
std::vector<Profile> mode_select(const GameSpec& game, int leader,
                                 StackelbergMode mode,
                                 const std::vector<Profile>& candidates,
                                 double* selected_cost) {
  double best = mode == StackelbergMode::Strong
                    ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  for (const Profile& p : candidates) {
    const double c = game.cost->evaluate(p, leader);
    if (mode == StackelbergMode::Strong ? c < best : c > best) best = c;
  }
  std::vector<Profile> selected;
  for (const Profile& p : candidates) {
    if (game.cost->evaluate(p, leader) == best) selected.push_back(p);
  }
  *selected_cost = best;
  return selected;
}

}  // namespace

EquilibriumResult stackelberg_2p(const GameSpec& game, int leader,
                                 StackelbergMode mode) {
  game.validate();
  if (game.num_players() != 2) {
    throw std::invalid_argument("stackelberg_2p needs exactly two players");
  }
  if (leader != 0 && leader != 1) {
    throw std::invalid_argument("leader index out of range");
  }
  const int follower = 1 - leader;

  const auto anticipated_reply = [&](int sl) {
    Profile probe(2, 0);
    probe[leader] = sl;
    const auto br = best_response_set(game, follower, probe);
    int reply = br.front();
    double reply_cost = 0.0;
    bool first = true;
    for (int f : br) {
      probe[follower] = f;
      const double c = game.cost->evaluate(probe, leader);
      const bool better =
          mode == StackelbergMode::Strong ? c < reply_cost : c > reply_cost;
      if (first || better) {
        reply = f;
        reply_cost = c;
        first = false;
      }
    }
    return std::pair<int, double>{reply, reply_cost};
  };

  double best_cost = std::numeric_limits<double>::infinity();
  int best_leader = 0;
  std::vector<double> anticipated(game.set_size(leader));
  for (int sl = 0; sl < game.set_size(leader); ++sl) {
    anticipated[sl] = anticipated_reply(sl).second;
    if (anticipated[sl] < best_cost) {
      best_cost = anticipated[sl];
      best_leader = sl;
    }
  }

  std::vector<int> leader_ties;
  for (int sl = 0; sl < game.set_size(leader); ++sl) {
    if (anticipated[sl] == best_cost) leader_ties.push_back(sl);
  }

  EquilibriumResult result;
  result.profile.assign(2, 0);
  result.profile[leader] = best_leader;
  result.profile[follower] = anticipated_reply(best_leader).first;
  result.costs = profile_costs(game, result.profile);
  result.iterations = game.set_size(leader);
  result.converged = true;
  result.tie_sets.assign(2, {});
  result.tie_sets[leader] = std::move(leader_ties);
  result.tie_sets[follower] = best_response_set(game, follower, result.profile);
  return result;
}

namespace {

// Optimal joint commitments for hierarchy levels `level`..end, with all
// higher levels bound in `scratch`. Returns full profiles, lexicographically
// ordered, preserving every exact tie for the caller to break by its own
// cost and mode.
std::vector<Profile> solve_level(const GameSpec& game,
                                 const std::vector<int>& order,
                                 std::size_t level, StackelbergMode mode,
                                 Profile& scratch) {
  const int player = order[level];
  if (level + 1 == order.size()) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<Profile> ties;
    for (int s = 0; s < game.set_size(player); ++s) {
      scratch[player] = s;
      const double c = game.cost->evaluate(scratch, player);
      if (c < best) {
        best = c;
        ties.clear();
      }
      if (c == best) ties.push_back(scratch);
    }
    return ties;
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<Profile> result;
  for (int s = 0; s < game.set_size(player); ++s) {
    scratch[player] = s;
    const auto subs = solve_level(game, order, level + 1, mode, scratch);
    double anticipated = 0.0;
    auto selected = mode_select(game, player, mode, subs, &anticipated);
    if (anticipated < best) {
      best = anticipated;
      result = std::move(selected);
    } else if (anticipated == best) {
      result.insert(result.end(), selected.begin(), selected.end());
    }
  }
  return result;
}

}  // namespace

EquilibriumResult stackelberg_hierarchy(const GameSpec& game,
                                        const Hierarchy& hierarchy,
                                        StackelbergMode mode,
                                        std::uint64_t cap) {
  game.validate();
  const int n = game.num_players();
  {
    std::vector<bool> seen(n, false);
    if (static_cast<int>(hierarchy.order.size()) != n) {
      throw std::invalid_argument("hierarchy must cover every player");
    }
    for (int p : hierarchy.order) {
      if (p < 0 || p >= n || seen[p]) {
        throw std::invalid_argument("hierarchy is not a permutation");
      }
      seen[p] = true;
    }
  }
  detail::checked_profile_count(game, cap);

  Profile scratch(n, 0);
  const auto optima = solve_level(game, hierarchy.order, 0, mode, scratch);

  EquilibriumResult result;
  result.profile = optima.front();
  result.costs = profile_costs(game, result.profile);
  result.iterations = game.set_size(hierarchy.order.front());
  result.converged = true;
  result.tie_sets.assign(n, {});
  for (const Profile& p : optima) {
    auto& ties = result.tie_sets[hierarchy.order.front()];
    const int s = p[hierarchy.order.front()];
    if (std::find(ties.begin(), ties.end(), s) == ties.end()) {
      ties.push_back(s);
    }
  }
  return result;
}

EquilibriumResult stackelberg_pairwise(const GameSpec& game, int ego,
                                       StackelbergMode mode) {
  game.validate();
  const int n = game.num_players();
  if (n < 2) throw std::invalid_argument("pairwise games need two players");
  if (ego < 0 || ego >= n) throw std::invalid_argument("ego out of range");
  if (n == 2) return stackelberg_2p(game, ego, mode);

  EquilibriumResult result;
  result.profile.assign(n, 0);
  result.converged = true;

  std::vector<Strategy> ego_strategies;
  std::vector<int> ego_indices;
  for (int other = 0; other < n; ++other) {
    if (other == ego) continue;
    const GameSpec pair = make_pair_game(game, ego, other);
    const EquilibriumResult r = stackelberg_2p(pair, 0, mode);
    ego_strategies.push_back(pair.strategy(0, r.profile[0]));
    ego_indices.push_back(r.profile[0]);
    result.profile[other] = r.profile[1];
    result.iterations += r.iterations;
  }
  result.profile[ego] = ego_indices[most_conservative_index(ego_strategies)];
  result.costs = profile_costs(game, result.profile);
  return result;
}

EquilibriumResult stackelberg_nash_followers(const GameSpec& game, int leader,
                                             const BrdConfig& brd_cfg) {
  game.validate();
  const int n = game.num_players();
  if (n < 2) throw std::invalid_argument("nash followers need two players");
  if (leader < 0 || leader >= n) {
    throw std::invalid_argument("leader index out of range");
  }

  EquilibriumResult result;
  result.converged = true;
  double best = std::numeric_limits<double>::infinity();

  for (int sl = 0; sl < game.set_size(leader); ++sl) {
    GameSpec subgame = game;
    subgame.strategy_sets[leader] = {game.strategy(leader, sl)};
    subgame.cost = std::make_shared<BoundSlotEvaluator>(game.cost, leader, sl);
    BrdConfig sub_cfg = brd_cfg;
    if (sub_cfg.init) (*sub_cfg.init)[leader] = 0;
    const EquilibriumResult reply = nash_brd(subgame, sub_cfg);
    result.converged = result.converged && reply.converged;
    result.iterations += reply.iterations;

    Profile joint = reply.profile;
    joint[leader] = sl;
    const double anticipated = game.cost->evaluate(joint, leader);
    if (anticipated < best) {
      best = anticipated;
      result.profile = std::move(joint);
    }
  }
  result.costs = profile_costs(game, result.profile);
  return result;
}

}  // namespace igames

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

#ifndef IGAMES_STACKELBERG_HPP_
#define IGAMES_STACKELBERG_HPP_

#include <vector>

#include "igames/game.hpp"
#include "igames/nash.hpp"

// Stackelberg solvers: two-player commitment with strong/weak follower
// tie-breaking, recursive multi-level hierarchy, pairwise decomposition, and
// the variant whose followers jointly settle on a Nash reply.

namespace igames {

// Strong breaks follower ties in the leader's favor (min of the leader's
// cost over the best-response set); Weak breaks them against (max).
enum class StackelbergMode { Strong, Weak };

// Leader order for the multi-level game; order[0] commits first. Must be a
// permutation of the player indices, fixed for a whole scenario.
struct Hierarchy {
  std::vector<int> order;
};

// Exhaustive 2-player commitment solve. The follower's anticipated reply to
// each leader strategy is its mode-tie-broken best response; the leader then
// commits to the strategy with the lowest anticipated cost (ties to the
// lowest index). tie_sets holds the leader's tied commitments and the
// follower's best-response set at the chosen commitment.
EquilibriumResult stackelberg_2p(const GameSpec& game, int leader,
                                 StackelbergMode mode);

// Backward induction over the hierarchy: each level commits knowing every
// lower level solves the induced subgame the same way, with mode-consistent
// tie-breaking against the committing player's cost. Reduces to
// stackelberg_2p for two players.
EquilibriumResult stackelberg_hierarchy(const GameSpec& game,
                                        const Hierarchy& hierarchy,
                                        StackelbergMode mode,
                                        std::uint64_t cap = kDefaultProfileCap);

// Solves the 2-player restriction against every other player with the ego
// as leader, keeps each opponent's reply from its own pair game, and plays
// the most conservative of the collected ego strategies.
EquilibriumResult stackelberg_pairwise(const GameSpec& game, int ego,
                                       StackelbergMode mode);

// Leader commitment where the followers' joint reply to each leader strategy
// is computed by best-response dynamics on the follower subgame. Any
// non-converged follower solve marks the result non-converged.
EquilibriumResult stackelberg_nash_followers(const GameSpec& game, int leader,
                                             const BrdConfig& brd_cfg = {});

}  // namespace igames

#endif  // IGAMES_STACKELBERG_HPP_

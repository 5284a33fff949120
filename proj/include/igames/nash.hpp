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

#ifndef IGAMES_NASH_HPP_
#define IGAMES_NASH_HPP_

#include <optional>
#include <vector>

#include "igames/game.hpp"

// Nash solvers: best-response dynamics, its pairwise decomposition, and
// global potential minimization for games with matching cost structure.

namespace igames {

enum class TieBreak {
  LowestIndex,   // first element of the best-response set
  HighestIndex,  // last element of the best-response set
};

struct BrdConfig {
  // Starting profile; when unset, each player starts from their all-zero-
  // acceleration strategy (first set entry if none qualifies).
  std::optional<Profile> init;
  int max_sweeps = 100;
  TieBreak tie_break = TieBreak::LowestIndex;
};

// Sweeps players in index order, replacing each strategy with a tie-broken
// best response, until a full sweep changes nothing or max_sweeps is hit.
// Non-convergence is reported through `converged`, never thrown; iterations
// counts executed sweeps.
EquilibriumResult nash_brd(const GameSpec& game, const BrdConfig& cfg = {});

// Solves the 2-player restriction against every other player with nash_brd,
// keeps each opponent's strategy from its own pair game, and plays the most
// conservative of the collected ego strategies.
EquilibriumResult nash_pairwise(const GameSpec& game, int ego,
                                const BrdConfig& cfg = {});

// Smallest first-segment acceleration wins; ties fall through to the second
// segment, then to the earliest list position.
int most_conservative_index(const std::vector<Strategy>& strategies);
const Strategy& most_conservative(const std::vector<Strategy>& strategies);

// P(s) = sum of every player's cost. Equals the exact potential whenever the
// costs decompose into self-interest plus symmetric pair terms (the rollout
// cost does); the caller is responsible for that precondition.
double potential_value(const GameSpec& game, const Profile& profile);

// Global minimizer of potential_value over the whole profile space, ties
// broken by enumeration order. `converged` reports whether the minimizer
// passed the exhaustive Nash check.
EquilibriumResult nash_potential(const GameSpec& game,
                                 std::uint64_t cap = kDefaultProfileCap);

}  // namespace igames

#endif  // IGAMES_NASH_HPP_

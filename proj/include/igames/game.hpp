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

#ifndef IGAMES_GAME_HPP_
#define IGAMES_GAME_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// Finite-game core: strategies, game descriptions, best responses, and the
// exhaustive equilibrium oracle that solver tests are checked against.

namespace igames {

// One control tick worth of longitudinal acceleration, m/s^2.
struct Action {
  double accel = 0.0;

  friend bool operator==(const Action&, const Action&) = default;
};

// An action sequence over the planning horizon, run-length encoded. The
// default encoding in this project is two segments of equal length.
struct Strategy {
  struct Segment {
    Action action;
    int steps = 1;  // number of dt-ticks this action is held

    friend bool operator==(const Segment&, const Segment&) = default;
  };

  std::vector<Segment> segments;

  int total_steps() const {
    int n = 0;
    for (const auto& s : segments) n += s.steps;
    return n;
  }

  // Action applied at tick k (0-based). k must be < total_steps().
  Action action_at(int k) const;

  // Acceleration of the i-th segment, or 0 if the strategy has fewer segments.
  double segment_accel(int i) const {
    return i < static_cast<int>(segments.size()) ? segments[i].action.accel
                                                 : 0.0;
  }

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

// One strategy per player, player order fixed.
using StrategyProfile = std::vector<Strategy>;

// A profile by strategy index into each player's declared set. This is the
// representation solvers operate on; valid profiles always index into the
// declared sets, so the two forms are interchangeable.
using Profile = std::vector<int>;

// Thrown when an enumeration would exceed the configured profile cap.
class CapExceededError : public std::length_error {
 public:
  explicit CapExceededError(const std::string& what)
      : std::length_error(what) {}
};

inline constexpr std::uint64_t kDefaultProfileCap = 10'000'000;

// Per-player cost of a strategy profile. Implementations bind whatever state
// they need (a cost matrix, a world snapshot) at construction and must be
// deterministic: identical profiles yield bit-identical costs.
class CostEvaluator {
 public:
  virtual ~CostEvaluator() = default;

  // Cost of `profile` (strategy index per player) for `player`.
  virtual double evaluate(const Profile& profile, int player) const = 0;

  // Evaluator for the 2-player restriction {a, b} of this game, with a at
  // index 0 and b at index 1. Required by the pairwise solvers when the
  // parent game has more than two players.
  virtual std::shared_ptr<const CostEvaluator> restrict_pair(int a,
                                                             int b) const {
    (void)a;
    (void)b;
    throw std::logic_error("cost evaluator does not support pair restriction");
  }
};

// Explicit cost tables, one flat player-major table per player. The flat
// index is lexicographic with player 0 most significant.
class TableCostEvaluator final : public CostEvaluator {
 public:
  TableCostEvaluator(std::vector<int> set_sizes,
                     std::vector<std::vector<double>> costs);

  double evaluate(const Profile& profile, int player) const override;

  std::size_t flat_index(const Profile& profile) const;

 private:
  std::vector<int> set_sizes_;
  std::vector<std::vector<double>> costs_;  // [player][flat profile]
};

// Cost evaluation through an arbitrary callable; handy for small test games.
class FunctionCostEvaluator final : public CostEvaluator {
 public:
  template <typename Callable>
  explicit FunctionCostEvaluator(Callable fn) : fn_(std::move(fn)) {}

  double evaluate(const Profile& profile, int player) const override {
    return fn_(profile, player);
  }

 private:
  std::function<double(const Profile&, int)> fn_;
};

// A finite game: per-player strategy sets plus a cost evaluator.
struct GameSpec {
  std::vector<std::vector<Strategy>> strategy_sets;
  std::shared_ptr<const CostEvaluator> cost;

  int num_players() const { return static_cast<int>(strategy_sets.size()); }
  int set_size(int player) const {
    return static_cast<int>(strategy_sets[player].size());
  }
  const Strategy& strategy(int player, int index) const {
    return strategy_sets[player][index];
  }

  // Throws std::invalid_argument if a strategy set is empty or no evaluator
  // is attached.
  void validate() const;
};

// Solved-game record shared by every solver.
struct EquilibriumResult {
  Profile profile;             // chosen strategy index per player
  std::vector<double> costs;   // realized per-player costs at `profile`
  int iterations = 0;          // solver-specific work count (sweeps, scans)
  bool converged = false;
  // Optional per-player sets of equally-optimal strategies; meaning is
  // solver-specific (e.g. follower best-response set at the chosen leader
  // strategy). Empty when not tracked.
  std::vector<std::vector<int>> tie_sets;
};

StrategyProfile materialize(const GameSpec& game, const Profile& profile);

// All |accels|^num_segments strategies of equal-length segments, in
// lexicographic order of segment accelerations (first segment most
// significant).
std::vector<Strategy> make_segmented_strategies(
    const std::vector<double>& accels, int num_segments,
    int steps_per_segment);

// Number of profiles in the product strategy space, saturating at UINT64_MAX.
std::uint64_t profile_count(const GameSpec& game);

namespace detail {
std::uint64_t checked_profile_count(const GameSpec& game, std::uint64_t cap);
}

// Visits every profile exactly once in lexicographic order of per-player
// strategy indices (player 0 most significant). Throws CapExceededError when
// the product space exceeds `cap`.
template <typename Fn>
void for_each_profile(const GameSpec& game, Fn&& fn,
                      std::uint64_t cap = kDefaultProfileCap) {
  detail::checked_profile_count(game, cap);
  const int n = game.num_players();
  Profile p(n, 0);
  for (;;) {
    fn(static_cast<const Profile&>(p));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++p[i] < game.set_size(i)) break;
      p[i] = 0;
    }
    if (i < 0) return;
  }
}

// All strategies of `player` minimizing its cost with the other players'
// strategies fixed at `fixed` (the slot of `player` is ignored). Returns the
// complete tie set in ascending index order; `tol` widens tie detection
// (costs within `tol` of the minimum count as tied).
std::vector<int> best_response_set(const GameSpec& game, int player,
                                   const Profile& fixed, double tol = 0.0);

// Exhaustive unilateral-deviation check of the Nash condition.
bool verify_nash(const GameSpec& game, const Profile& profile);

// Every pure Nash equilibrium of the game, in enumeration order. Ground-truth
// oracle for the iterative solvers; cost grows with the full product space.
std::vector<Profile> brute_force_nash(const GameSpec& game,
                                      std::uint64_t cap = kDefaultProfileCap);

// 2-player restriction {ego, other} of `game`; ego maps to player 0.
GameSpec make_pair_game(const GameSpec& game, int ego, int other);

}  // namespace igames

#endif  // IGAMES_GAME_HPP_

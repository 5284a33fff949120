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

#ifndef IGAMES_COSTS_HPP_
#define IGAMES_COSTS_HPP_

#include <iosfwd>
#include <utility>
#include <vector>

#include "igames/game.hpp"
#include "igames/vehicle.hpp"

// Cost evaluators: the saturated-tanh intersection cost driving the
// simulator, and explicit bimatrix costs for one-shot games.

namespace igames {

struct CostParams {
  // Desired speed per player, m/s; the last entry broadcasts to any player
  // beyond the list.
  std::vector<double> v_d{10.0};
  double d_xc = 6.0;    // safe x-distance, m
  double d_yc = 6.0;    // safe y-distance, m
  double beta = 1000.0; // tanh sharpness, 1/m^2
  int horizon_steps = 8;
  double dt = 0.5;

  double desired_speed(int player) const {
    if (v_d.empty()) return 10.0;
    const std::size_t i = static_cast<std::size_t>(player);
    return i < v_d.size() ? v_d[i] : v_d.back();
  }
};

// Pair proximity penalty in [0, 4]. Saturates to 4 when both axis gaps are
// inside the safe box and to 0 when either gap clears it.
double stage_pair_penalty(const Vec2& pi, const Vec2& pj,
                          const CostParams& params);

// Speed-tracking term plus the pair penalties against every other agent.
double stage_cost(int player, const WorldState& world,
                  const std::vector<AgentGeometry>& geoms,
                  const CostParams& params);

// Horizon cost: stage costs summed over trajectory states 0..T-1 (the final
// post-horizon state is excluded).
double rollout_cost(int player, const WorldState& world,
                    const StrategyProfile& profile,
                    const std::vector<AgentGeometry>& geoms,
                    const CostParams& params);

// Rollout-backed cost evaluator bound to one world snapshot.
//
// The horizon cost splits into a per-player speed-tracking sum and one
// interaction sum per unordered agent pair, each depending only on that
// pair's strategy indices. Those sums are memoized on first use, so repeated
// profile evaluations during a solve reduce to table lookups. Values agree
// with rollout_cost up to summation order. Instances are not safe for
// concurrent use.
class RolloutCostEvaluator final : public CostEvaluator {
 public:
  RolloutCostEvaluator(WorldState world, std::vector<AgentGeometry> geoms,
                       CostParams params,
                       std::vector<std::vector<Strategy>> strategy_sets);

  double evaluate(const Profile& profile, int player) const override;

  std::shared_ptr<const CostEvaluator> restrict_pair(int a,
                                                     int b) const override;

 private:
  double pair_sum(int i, int j, int si, int sj) const;

  WorldState world_;
  std::vector<AgentGeometry> geoms_;
  CostParams params_;
  std::vector<std::vector<Strategy>> sets_;

  // positions_[i][si] holds the 2-D path of player i under strategy si at
  // stages 0..T-1; tracking_[i][si] the summed speed-tracking term.
  std::vector<std::vector<std::vector<Vec2>>> positions_;
  std::vector<std::vector<double>> tracking_;

  // One lazily filled table per unordered pair (i < j), keyed si * |S_j| + sj.
  mutable std::vector<std::vector<double>> pair_values_;
  mutable std::vector<std::vector<unsigned char>> pair_done_;
};

// Builds the receding-horizon game at one world snapshot: two-segment
// strategies over `action_set` for every agent plus a RolloutCostEvaluator.
GameSpec make_rollout_game(const WorldState& world,
                           const std::vector<AgentGeometry>& geoms,
                           const CostParams& params,
                           const std::vector<double>& action_set);

// Explicit 2-player cost tables indexed by (leader action, follower action).
struct MatrixGame {
  std::vector<double> leader_actions;
  std::vector<double> follower_actions;
  std::vector<double> leader_costs;    // row-major [leader][follower]
  std::vector<double> follower_costs;  // row-major [leader][follower]

  int rows() const { return static_cast<int>(leader_actions.size()); }
  int cols() const { return static_cast<int>(follower_actions.size()); }
  double leader_cost(int l, int f) const { return leader_costs[l * cols() + f]; }
  double follower_cost(int l, int f) const {
    return follower_costs[l * cols() + f];
  }
};

// Closed-form cell costs of the tie-breaking demo game. Actions must lie in
// {-1, 0, 1}; returns (leader cost, follower cost).
std::pair<double, double> matrix_cost_from_formula(double s_l, double s_f);

// The 3x3 demo game generated from matrix_cost_from_formula. Its follower
// ties make the strong and weak commitment solutions differ.
MatrixGame demo_matrix_game();

// GameSpec over a MatrixGame; strategies are single-segment actions.
GameSpec make_game(const MatrixGame& matrix);

// Plain-text table format: a header row of follower actions, then one row
// per leader action holding the action value followed by "l,f" cost cells.
// Lines starting with '#' and blank lines are ignored.
MatrixGame load_matrix_game(std::istream& in);
void save_matrix_game(std::ostream& out, const MatrixGame& game);

}  // namespace igames

#endif  // IGAMES_COSTS_HPP_

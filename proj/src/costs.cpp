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

#include "igames/costs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace igames {

double stage_pair_penalty(const Vec2& pi, const Vec2& pj,
                          const CostParams& params) {
  const double dx = pi.x - pj.x;
  const double dy = pi.y - pj.y;
  const double fx =
      std::tanh(params.beta * (params.d_xc * params.d_xc - dx * dx)) + 1.0;
  const double fy =
      std::tanh(params.beta * (params.d_yc * params.d_yc - dy * dy)) + 1.0;
  return fx * fy;
}

double stage_cost(int player, const WorldState& world,
                  const std::vector<AgentGeometry>& geoms,
                  const CostParams& params) {
  const double v = world.agents[player].v;
  const double vd = params.desired_speed(player);
  double cost = (v - vd) * (v - vd) / vd;
  const Vec2 pi = position_2d(geoms[player], world.agents[player]);
  for (std::size_t j = 0; j < world.agents.size(); ++j) {
    if (static_cast<int>(j) == player) continue;
    cost += stage_pair_penalty(pi, position_2d(geoms[j], world.agents[j]),
                               params);
  }
  return cost;
}

double rollout_cost(int player, const WorldState& world,
                    const StrategyProfile& profile,
                    const std::vector<AgentGeometry>& geoms,
                    const CostParams& params) {
  if (!profile.empty() && profile.front().total_steps() != params.horizon_steps) {
    throw std::invalid_argument("profile does not span the horizon");
  }
  const auto trajectory = rollout(world, profile);
  double total = 0.0;
  for (int tau = 0; tau < params.horizon_steps; ++tau) {
    total += stage_cost(player, trajectory[tau], geoms, params);
  }
  return total;
}

RolloutCostEvaluator::RolloutCostEvaluator(
    WorldState world, std::vector<AgentGeometry> geoms, CostParams params,
    std::vector<std::vector<Strategy>> strategy_sets)
    : world_(std::move(world)),
      geoms_(std::move(geoms)),
      params_(std::move(params)),
      sets_(std::move(strategy_sets)) {
  const int n = static_cast<int>(world_.agents.size());
  if (static_cast<int>(geoms_.size()) != n ||
      static_cast<int>(sets_.size()) != n) {
    throw std::invalid_argument("agents, geometries, and strategy sets must align");
  }
  const int horizon = params_.horizon_steps;

  positions_.resize(n);
  tracking_.resize(n);
  for (int i = 0; i < n; ++i) {
    positions_[i].resize(sets_[i].size());
    tracking_[i].resize(sets_[i].size());
    const double vd = params_.desired_speed(i);
    for (std::size_t s = 0; s < sets_[i].size(); ++s) {
      if (sets_[i][s].total_steps() != horizon) {
        throw std::invalid_argument("strategy does not span the horizon");
      }
      auto& path = positions_[i][s];
      path.reserve(horizon);
      LongitudinalState x = world_.agents[i];
      double track = 0.0;
      for (int tau = 0; tau < horizon; ++tau) {
        path.push_back(position_2d(geoms_[i], x));
        track += (x.v - vd) * (x.v - vd) / vd;
        x = step(x, sets_[i][s].action_at(tau), world_.dt);
      }
      tracking_[i][s] = track;
    }
  }

  pair_values_.resize(static_cast<std::size_t>(n) * n);
  pair_done_.resize(pair_values_.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t entries = sets_[i].size() * sets_[j].size();
      pair_values_[i * n + j].assign(entries, 0.0);
      pair_done_[i * n + j].assign(entries, 0);
    }
  }
}

double RolloutCostEvaluator::pair_sum(int i, int j, int si, int sj) const {
  const int a = std::min(i, j);
  const int b = std::max(i, j);
  const int sa = i < j ? si : sj;
  const int sb = i < j ? sj : si;
  const int n = static_cast<int>(world_.agents.size());
  const std::size_t key =
      static_cast<std::size_t>(sa) * sets_[b].size() + static_cast<std::size_t>(sb);
  auto& done = pair_done_[a * n + b];
  auto& values = pair_values_[a * n + b];
  if (!done[key]) {
    const auto& pa = positions_[a][sa];
    const auto& pb = positions_[b][sb];
    double sum = 0.0;
    for (int tau = 0; tau < params_.horizon_steps; ++tau) {
      sum += stage_pair_penalty(pa[tau], pb[tau], params_);
    }
    values[key] = sum;
    done[key] = 1;
  }
  return values[key];
}

double RolloutCostEvaluator::evaluate(const Profile& profile,
                                      int player) const {
  double cost = tracking_[player][profile[player]];
  const int n = static_cast<int>(world_.agents.size());
  for (int j = 0; j < n; ++j) {
    if (j == player) continue;
    cost += pair_sum(player, j, profile[player], profile[j]);
  }
  return cost;
}

std::shared_ptr<const CostEvaluator> RolloutCostEvaluator::restrict_pair(
    int a, int b) const {
  WorldState world;
  world.agents = {world_.agents[a], world_.agents[b]};
  world.epoch = world_.epoch;
  world.dt = world_.dt;
  CostParams params = params_;
  params.v_d = {params_.desired_speed(a), params_.desired_speed(b)};
  return std::make_shared<RolloutCostEvaluator>(
      std::move(world), std::vector<AgentGeometry>{geoms_[a], geoms_[b]},
      std::move(params),
      std::vector<std::vector<Strategy>>{sets_[a], sets_[b]});
}

GameSpec make_rollout_game(const WorldState& world,
                           const std::vector<AgentGeometry>& geoms,
                           const CostParams& params,
                           const std::vector<double>& action_set) {
  if (params.horizon_steps % 2 != 0) {
    throw std::invalid_argument("two-segment strategies need an even horizon");
  }
  const auto set =
      make_segmented_strategies(action_set, 2, params.horizon_steps / 2);
  GameSpec game;
  game.strategy_sets.assign(world.agents.size(), set);
  game.cost = std::make_shared<RolloutCostEvaluator>(world, geoms, params,
                                                     game.strategy_sets);
  return game;
}

std::pair<double, double> matrix_cost_from_formula(double s_l, double s_f) {
  const auto in_domain = [](double a) {
    return a == -1.0 || a == 0.0 || a == 1.0;
  };
  if (!in_domain(s_l) || !in_domain(s_f)) {
    throw std::invalid_argument("matrix formula actions must be in {-1,0,1}");
  }
  const double shared = std::max(10.0, (s_l + s_f) * 5.0 + 10.0);
  const double leader = shared + 5.0 * std::abs(s_l) - 10.0;
  const double follower = shared - 5.0 * (s_f + 1.0);
  return {leader, follower};
}

MatrixGame demo_matrix_game() {
  MatrixGame game;
  game.leader_actions = {-1.0, 0.0, 1.0};
  game.follower_actions = {-1.0, 0.0, 1.0};
  for (double l : game.leader_actions) {
    for (double f : game.follower_actions) {
      const auto [cl, cf] = matrix_cost_from_formula(l, f);
      game.leader_costs.push_back(cl);
      game.follower_costs.push_back(cf);
    }
  }
  return game;
}

GameSpec make_game(const MatrixGame& matrix) {
  if (matrix.rows() == 0 || matrix.cols() == 0 ||
      static_cast<int>(matrix.leader_costs.size()) !=
          matrix.rows() * matrix.cols() ||
      matrix.follower_costs.size() != matrix.leader_costs.size()) {
    throw std::invalid_argument("malformed matrix game");
  }
  const auto one_shot = [](const std::vector<double>& actions) {
    std::vector<Strategy> set;
    set.reserve(actions.size());
    for (double a : actions) set.push_back({{{Action{a}, 1}}});
    return set;
  };
  GameSpec game;
  game.strategy_sets = {one_shot(matrix.leader_actions),
                        one_shot(matrix.follower_actions)};
  game.cost = std::make_shared<TableCostEvaluator>(
      std::vector<int>{matrix.rows(), matrix.cols()},
      std::vector<std::vector<double>>{matrix.leader_costs,
                                       matrix.follower_costs});
  return game;
}

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

MatrixGame load_matrix_game(std::istream& in) {
  MatrixGame game;
  std::string line;
  if (!next_content_line(in, line)) {
    throw std::invalid_argument("matrix game file has no header row");
  }
  {
    std::istringstream header(line);
    double a;
    while (header >> a) game.follower_actions.push_back(a);
  }
  if (game.follower_actions.empty()) {
    throw std::invalid_argument("matrix game header row has no actions");
  }
  while (next_content_line(in, line)) {
    std::istringstream row(line);
    double leader_action;
    if (!(row >> leader_action)) {
      throw std::invalid_argument("matrix game row missing leader action");
    }
    game.leader_actions.push_back(leader_action);
    for (int f = 0; f < game.cols(); ++f) {
      std::string cell;
      if (!(row >> cell)) {
        throw std::invalid_argument("matrix game row has too few cells");
      }
      const auto comma = cell.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("matrix game cell must be 'l,f'");
      }
      try {
        game.leader_costs.push_back(std::stod(cell.substr(0, comma)));
        game.follower_costs.push_back(std::stod(cell.substr(comma + 1)));
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix game cell is not numeric");
      }
    }
    std::string extra;
    if (row >> extra) {
      throw std::invalid_argument("matrix game row has too many cells");
    }
  }
  if (game.leader_actions.empty()) {
    throw std::invalid_argument("matrix game has no leader rows");
  }
  return game;
}

void save_matrix_game(std::ostream& out, const MatrixGame& game) {
  for (int f = 0; f < game.cols(); ++f) {
    out << (f ? " " : "") << game.follower_actions[f];
  }
  out << "\n";
  for (int l = 0; l < game.rows(); ++l) {
    out << game.leader_actions[l];
    for (int f = 0; f < game.cols(); ++f) {
      out << " " << game.leader_cost(l, f) << "," << game.follower_cost(l, f);
    }
    out << "\n";
  }
}

}  // namespace igames

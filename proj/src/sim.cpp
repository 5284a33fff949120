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

#include "igames/sim.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "igames/nash.hpp"
#include "igames/stackelberg.hpp"
#include "json.hpp"

namespace igames {

std::string to_string(BehaviorKind kind) {
  switch (kind) {
    case BehaviorKind::Ideal: return "ideal";
    case BehaviorKind::SimpleRules: return "simple";
    case BehaviorKind::ConstantSpeed: return "constant";
  }
  throw std::invalid_argument("unknown behavior kind");
}

std::string to_string(GameKind kind) {
  switch (kind) {
    case GameKind::NashBrd: return "nbr";
    case GameKind::NashPotential: return "npf";
    case GameKind::StackelbergStrong: return "sse";
    case GameKind::StackelbergWeak: return "wse";
    case GameKind::StackelbergNashFollowers: return "snf";
  }
  throw std::invalid_argument("unknown game kind");
}

std::string to_string(SettingKind kind) {
  switch (kind) {
    case SettingKind::Multiplayer: return "multiplayer";
    case SettingKind::Pairwise: return "pairwise";
    case SettingKind::Hierarchy: return "hierarchy";
  }
  throw std::invalid_argument("unknown setting kind");
}

BehaviorKind behavior_from_string(const std::string& name) {
  if (name == "ideal") return BehaviorKind::Ideal;
  if (name == "simple") return BehaviorKind::SimpleRules;
  if (name == "constant") return BehaviorKind::ConstantSpeed;
  throw std::invalid_argument("unknown behavior: " + name);
}

GameKind game_from_string(const std::string& name) {
  if (name == "nbr") return GameKind::NashBrd;
  if (name == "npf") return GameKind::NashPotential;
  if (name == "sse") return GameKind::StackelbergStrong;
  if (name == "wse") return GameKind::StackelbergWeak;
  if (name == "snf") return GameKind::StackelbergNashFollowers;
  throw std::invalid_argument("unknown game: " + name);
}

SettingKind setting_from_string(const std::string& name) {
  if (name == "multiplayer") return SettingKind::Multiplayer;
  if (name == "pairwise") return SettingKind::Pairwise;
  if (name == "hierarchy") return SettingKind::Hierarchy;
  throw std::invalid_argument("unknown setting: " + name);
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.n_players < 2 || cfg.n_players > 4) {
    throw std::invalid_argument("n_players must be 2, 3, or 4");
  }
  if (cfg.crash_distance <= 0.0) {
    throw std::invalid_argument("crash distance must be positive");
  }
  if (cfg.epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (!(cfg.target_distance_min < cfg.target_distance_max)) {
    throw std::invalid_argument("degenerate target distance range");
  }
  if (cfg.target_distance_min <= cfg.ego_start_distance) {
    throw std::invalid_argument("targets must start behind the ego");
  }
  if (cfg.action_set.empty()) {
    throw std::invalid_argument("action set must be non-empty");
  }
  if (cfg.lane_offset <= 0.0) {
    throw std::invalid_argument("lane offset must be positive");
  }

  const bool stackelberg = cfg.game == GameKind::StackelbergStrong ||
                           cfg.game == GameKind::StackelbergWeak;
  switch (cfg.setting) {
    case SettingKind::Hierarchy:
      if (!stackelberg) {
        throw std::invalid_argument(
            "hierarchy setting requires a Stackelberg game");
      }
      break;
    case SettingKind::Pairwise:
      if (cfg.game == GameKind::NashPotential ||
          cfg.game == GameKind::StackelbergNashFollowers) {
        throw std::invalid_argument(
            "pairwise setting supports nbr, sse, and wse only");
      }
      break;
    case SettingKind::Multiplayer:
      break;
  }
}

namespace {

constexpr double kMinTargetGap = 0.5;  // m, placement distinctness

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; stable across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Approach layouts around the intersection: ego travels +y in its right
// lane; additional players take +x, -x, and -y, each offset into their own
// right lane.
AgentGeometry approach_geometry(int agent, double lane_offset) {
  switch (agent) {
    case 0: return {{0.0, 1.0}, {lane_offset, 0.0}, 0.0};
    case 1: return {{1.0, 0.0}, {0.0, -lane_offset}, 0.0};
    case 2: return {{-1.0, 0.0}, {0.0, lane_offset}, 0.0};
    case 3: return {{0.0, -1.0}, {-lane_offset, 0.0}, 0.0};
    default: throw std::invalid_argument("no approach for agent index");
  }
}

double ego_pair_distance(const WorldState& world,
                         const std::vector<AgentGeometry>& geoms) {
  const Vec2 ego = position_2d(geoms[0], world.agents[0]);
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < world.agents.size(); ++j) {
    const Vec2 p = position_2d(geoms[j], world.agents[j]);
    min_dist = std::min(min_dist, std::hypot(ego.x - p.x, ego.y - p.y));
  }
  return min_dist;
}

}  // namespace

Scenario generate_scenario(const ScenarioConfig& cfg, int index) {
  validate_config(cfg);
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(
                          static_cast<std::uint64_t>(index))));

  Scenario scenario;
  scenario.world.dt = cfg.params.dt;
  scenario.world.agents.push_back({-cfg.ego_start_distance, cfg.initial_speed});
  scenario.geoms.push_back(approach_geometry(0, cfg.lane_offset));

  const double span = cfg.target_distance_max - cfg.target_distance_min;
  for (int i = 1; i < cfg.n_players; ++i) {
    double d = 0.0;
    bool distinct = false;
    for (int attempt = 0; attempt < 1000 && !distinct; ++attempt) {
      d = cfg.target_distance_min + uniform01(rng) * span;
      distinct = true;
      for (double prev : scenario.target_distances) {
        if (std::abs(d - prev) < kMinTargetGap) distinct = false;
      }
    }
    if (!distinct) {
      throw std::invalid_argument(
          "target distance range too narrow for distinct placement");
    }
    scenario.target_distances.push_back(d);
    scenario.world.agents.push_back({-d, cfg.initial_speed});
    scenario.geoms.push_back(approach_geometry(i, cfg.lane_offset));
  }

  scenario.hierarchy.resize(cfg.n_players);
  std::iota(scenario.hierarchy.begin(), scenario.hierarchy.end(), 0);
  std::sort(scenario.hierarchy.begin() + 1, scenario.hierarchy.end(),
            [&](int a, int b) {
              return scenario.target_distances[a - 1] <
                     scenario.target_distances[b - 1];
            });
  return scenario;
}

Action behavior_action(BehaviorKind kind, int target, const WorldState& world,
                       const StrategyProfile& equilibrium,
                       const std::vector<AgentGeometry>& geoms,
                       const CostParams& params,
                       const std::vector<double>& action_set) {
  switch (kind) {
    case BehaviorKind::Ideal:
      if (equilibrium.empty()) {
        throw std::invalid_argument("ideal behavior needs the solved profile");
      }
      return equilibrium[target].action_at(0);

    case BehaviorKind::ConstantSpeed:
      return Action{0.0};

    case BehaviorKind::SimpleRules: {
      const double own_dist =
          distance_to_intersection(geoms[target], world.agents[target]);
      const double ego_dist =
          distance_to_intersection(geoms[0], world.agents[0]);
      const bool lacks_right_of_way = own_dist > ego_dist;

      if (lacks_right_of_way) {
        // One-step drift prediction: everyone holds speed for one tick.
        WorldState predicted = world;
        for (auto& agent : predicted.agents) {
          agent = step(agent, Action{0.0}, world.dt);
        }
        const Vec2 self =
            position_2d(geoms[target], predicted.agents[target]);
        for (std::size_t j = 0; j < predicted.agents.size(); ++j) {
          if (static_cast<int>(j) == target) continue;
          const Vec2 p = position_2d(geoms[j], predicted.agents[j]);
          if (stage_pair_penalty(self, p, params) > 0.0) {
            return Action{*std::min_element(action_set.begin(),
                                            action_set.end())};
          }
        }
      }

      const double v = world.agents[target].v;
      const double vd = params.desired_speed(target);
      double best_accel = action_set.front();
      double best_gap = std::abs(v + world.dt * action_set.front() - vd);
      for (double a : action_set) {
        const double gap = std::abs(v + world.dt * a - vd);
        if (gap < best_gap) {
          best_gap = gap;
          best_accel = a;
        }
      }
      return Action{best_accel};
    }
  }
  throw std::invalid_argument("unknown behavior kind");
}

EquilibriumResult solve_decision(const ScenarioConfig& cfg,
                                 const GameSpec& game,
                                 const std::vector<int>& hierarchy) {
  const int n = game.num_players();
  switch (cfg.game) {
    case GameKind::NashBrd:
      return cfg.setting == SettingKind::Pairwise ? nash_pairwise(game, 0)
                                                  : nash_brd(game);
    case GameKind::NashPotential:
      return nash_potential(game);
    case GameKind::StackelbergStrong:
    case GameKind::StackelbergWeak: {
      const StackelbergMode mode = cfg.game == GameKind::StackelbergStrong
                                       ? StackelbergMode::Strong
                                       : StackelbergMode::Weak;
      if (cfg.setting == SettingKind::Pairwise) {
        return stackelberg_pairwise(game, 0, mode);
      }
      if (n == 2) return stackelberg_2p(game, 0, mode);
      return stackelberg_hierarchy(game, Hierarchy{hierarchy}, mode);
    }
    case GameKind::StackelbergNashFollowers:
      return stackelberg_nash_followers(game, 0);
  }
  throw std::invalid_argument("unknown game kind");
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, int index) {
  Scenario scenario = generate_scenario(cfg, index);
  WorldState world = scenario.world;

  ScenarioResult result;
  result.min_distance = ego_pair_distance(world, scenario.geoms);
  result.decision_times.reserve(cfg.epochs);
  double speed_sum = 0.0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    speed_sum += world.agents[0].v;
    if (cfg.record_trace) result.state_trace.push_back(world);

    const GameSpec game =
        make_rollout_game(world, scenario.geoms, cfg.params, cfg.action_set);

    const auto start = std::chrono::steady_clock::now();
    const EquilibriumResult eq =
        solve_decision(cfg, game, scenario.hierarchy);
    const auto stop = std::chrono::steady_clock::now();
    result.decision_times.push_back(
        std::chrono::duration<double>(stop - start).count());
    if (!eq.converged) ++result.nonconverged_epochs;

    const StrategyProfile strategies = materialize(game, eq.profile);
    std::vector<Action> actions(world.agents.size());
    actions[0] = strategies[0].action_at(0);
    for (int i = 1; i < cfg.n_players; ++i) {
      actions[i] = behavior_action(cfg.behavior, i, world, strategies,
                                   scenario.geoms, cfg.params, cfg.action_set);
    }

    if (cfg.record_trace) {
      result.decision_trace.push_back(eq.profile);
      std::vector<double> accels;
      for (const Action& a : actions) accels.push_back(a.accel);
      result.action_trace.push_back(std::move(accels));
    }

    for (std::size_t i = 0; i < world.agents.size(); ++i) {
      world.agents[i] = step(world.agents[i], actions[i], world.dt);
    }
    world.epoch += 1;
    result.min_distance =
        std::min(result.min_distance, ego_pair_distance(world, scenario.geoms));
  }

  result.avg_ego_speed = speed_sum / cfg.epochs;
  result.crashed = result.min_distance < cfg.crash_distance;
  return result;
}

BatchResult run_batch(const ScenarioConfig& cfg, int count) {
  if (count < 1) throw std::invalid_argument("batch needs at least one run");
  BatchResult batch;
  batch.scenarios.reserve(count);

  double speed_sum = 0.0;
  double time_sum = 0.0;
  std::size_t decisions = 0;
  for (int i = 0; i < count; ++i) {
    ScenarioResult r = run_scenario(cfg, i);
    speed_sum += r.avg_ego_speed;
    for (double t : r.decision_times) time_sum += t;
    decisions += r.decision_times.size();
    if (r.crashed) ++batch.stats.crashed_count;
    batch.stats.nonconverged_epochs += r.nonconverged_epochs;
    batch.scenarios.push_back(std::move(r));
  }
  batch.stats.scenario_count = count;
  batch.stats.crashes_per_100 = 100.0 * batch.stats.crashed_count / count;
  batch.stats.mean_ego_speed = speed_sum / count;
  batch.stats.mean_decision_time = time_sum / static_cast<double>(decisions);
  return batch;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  return "scenario_id,seed,n_players,game,setting,behavior,crashed,"
         "min_distance_m,avg_ego_speed_mps,mean_decision_time_s";
}

std::string csv_row(const ScenarioConfig& cfg, int scenario_id,
                    const ScenarioResult& result) {
  double time_sum = 0.0;
  for (double t : result.decision_times) time_sum += t;
  const double mean_time =
      result.decision_times.empty()
          ? 0.0
          : time_sum / static_cast<double>(result.decision_times.size());

  std::ostringstream row;
  row << scenario_id << ',' << cfg.seed << ',' << cfg.n_players << ','
      << to_string(cfg.game) << ',' << to_string(cfg.setting) << ','
      << to_string(cfg.behavior) << ',' << (result.crashed ? 1 : 0) << ','
      << format_double(result.min_distance) << ','
      << format_double(result.avg_ego_speed) << ','
      << format_double(mean_time);
  return row.str();
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string summary_json(const ScenarioConfig& cfg, const SummaryStats& stats) {
  nlohmann::json j;
  j["config"] = {
      {"n_players", cfg.n_players},
      {"game", to_string(cfg.game)},
      {"setting", to_string(cfg.setting)},
      {"behavior", to_string(cfg.behavior)},
      {"crash_distance_m", cfg.crash_distance},
      {"epochs", cfg.epochs},
      {"seed", cfg.seed},
      {"ego_start_distance_m", cfg.ego_start_distance},
      {"target_distance_range_m",
       {cfg.target_distance_min, cfg.target_distance_max}},
      {"initial_speed_mps", cfg.initial_speed},
      {"lane_offset_m", cfg.lane_offset},
      {"desired_speed_mps", cfg.params.desired_speed(0)},
      {"safe_distance_m", {cfg.params.d_xc, cfg.params.d_yc}},
      {"beta", cfg.params.beta},
      {"horizon_steps", cfg.params.horizon_steps},
      {"dt_s", cfg.params.dt},
      {"action_set", cfg.action_set},
  };
  j["crashes_per_100"] = stats.crashes_per_100;
  j["mean_ego_speed_mps"] = stats.mean_ego_speed;
  j["mean_decision_time_s"] = stats.mean_decision_time;
  j["scenario_count"] = stats.scenario_count;
  j["crashed_count"] = stats.crashed_count;
  j["nonconverged_epochs"] = stats.nonconverged_epochs;
  return j.dump(2);
}

}  // namespace igames

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

#ifndef IGAMES_SIM_HPP_
#define IGAMES_SIM_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "igames/costs.hpp"
#include "igames/game.hpp"
#include "igames/vehicle.hpp"

// Receding-horizon closed-loop simulation: seeded scenario generation,
// target behavior models, crash scoring, and batch aggregation.

namespace igames {

enum class BehaviorKind { Ideal, SimpleRules, ConstantSpeed };

enum class GameKind {
  NashBrd,
  NashPotential,
  StackelbergStrong,
  StackelbergWeak,
  StackelbergNashFollowers,
};

enum class SettingKind { Multiplayer, Pairwise, Hierarchy };

std::string to_string(BehaviorKind kind);
std::string to_string(GameKind kind);
std::string to_string(SettingKind kind);
BehaviorKind behavior_from_string(const std::string& name);
GameKind game_from_string(const std::string& name);
SettingKind setting_from_string(const std::string& name);

struct ScenarioConfig {
  int n_players = 2;
  GameKind game = GameKind::NashBrd;
  SettingKind setting = SettingKind::Multiplayer;
  BehaviorKind behavior = BehaviorKind::Ideal;
  double crash_distance = 5.0;  // Euclidean crash threshold D, m
  int epochs = 50;              // decisions per scenario, 0.5 s each
  std::uint64_t seed = 0;
  double ego_start_distance = 40.0;       // m to the intersection center
  double target_distance_min = 42.0;      // m, uniform placement range
  double target_distance_max = 70.0;
  double initial_speed = 4.0;             // m/s, all agents
  // Lateral offset of each lane center from its road axis. Opposing lanes
  // sit 2x this apart, which must clear the safe box for passing traffic to
  // be cost-free and crash-free.
  double lane_offset = 3.5;               // m
  std::vector<double> action_set{-2.0, -1.0, 0.0, 1.0, 2.0};
  CostParams params;
  bool record_trace = false;
};

// Throws std::invalid_argument for inconsistent settings (e.g. a hierarchy
// setting with a Nash game).
void validate_config(const ScenarioConfig& cfg);

// Initial conditions of one seeded scenario.
struct Scenario {
  WorldState world;
  std::vector<AgentGeometry> geoms;
  std::vector<int> hierarchy;             // ego first, targets by distance
  std::vector<double> target_distances;   // m, per target
};

struct ScenarioResult {
  bool crashed = false;
  double min_distance = 0.0;      // m, over all epochs, pairs involving ego
  double avg_ego_speed = 0.0;     // m/s, mean over decision-time speeds
  std::vector<double> decision_times;  // s, wall clock per ego decision
  int nonconverged_epochs = 0;

  // Filled only when ScenarioConfig::record_trace is set.
  std::vector<Profile> decision_trace;            // solved profile per epoch
  std::vector<std::vector<double>> action_trace;  // committed accels per epoch
  std::vector<WorldState> state_trace;            // pre-decision states
};

struct SummaryStats {
  double crashes_per_100 = 0.0;
  double mean_ego_speed = 0.0;     // m/s
  double mean_decision_time = 0.0; // s, over all decisions in the batch
  int scenario_count = 0;
  int crashed_count = 0;
  int nonconverged_epochs = 0;
};

struct BatchResult {
  SummaryStats stats;
  std::vector<ScenarioResult> scenarios;
};

// Deterministic placement: ego at the fixed start, targets drawn uniformly
// from the configured range on a stream derived from (seed, index), redrawn
// until all target distances differ by at least 0.5 m.
Scenario generate_scenario(const ScenarioConfig& cfg, int index);

// Action a target commits this epoch. Ideal plays its slot of the solved
// profile; ConstantSpeed holds speed; SimpleRules brakes hard when it lacks
// right of way and its one-step drift prediction collides with anyone,
// otherwise tracks the desired speed.
Action behavior_action(BehaviorKind kind, int target, const WorldState& world,
                       const StrategyProfile& equilibrium,
                       const std::vector<AgentGeometry>& geoms,
                       const CostParams& params,
                       const std::vector<double>& action_set);

// One ego decision from the given world snapshot, dispatched on the
// configured game and setting.
EquilibriumResult solve_decision(const ScenarioConfig& cfg,
                                 const GameSpec& game,
                                 const std::vector<int>& hierarchy);

ScenarioResult run_scenario(const ScenarioConfig& cfg, int index);

// Scenarios 0..count-1 with aggregate stats. Mean decision time averages
// over every decision of every scenario.
BatchResult run_batch(const ScenarioConfig& cfg, int count);

// CSV surface. The header is part of the output contract and is written
// byte-exactly; rows round-trip through parse_csv.
std::string csv_header();
std::string csv_row(const ScenarioConfig& cfg, int scenario_id,
                    const ScenarioResult& result);
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// JSON text mirroring SummaryStats with a config echo.
std::string summary_json(const ScenarioConfig& cfg, const SummaryStats& stats);

// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double value);

}  // namespace igames

#endif  // IGAMES_SIM_HPP_

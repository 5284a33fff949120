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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace igames;

namespace {

ScenarioConfig base_config() {
  ScenarioConfig cfg;
  cfg.n_players = 2;
  cfg.game = GameKind::NashBrd;
  cfg.setting = SettingKind::Multiplayer;
  cfg.behavior = BehaviorKind::Ideal;
  cfg.seed = 7;
  return cfg;
}

bool same_except_times(const ScenarioResult& a, const ScenarioResult& b) {
  return a.crashed == b.crashed && a.min_distance == b.min_distance &&
         a.avg_ego_speed == b.avg_ego_speed &&
         a.nonconverged_epochs == b.nonconverged_epochs &&
         a.decision_trace == b.decision_trace &&
         a.action_trace == b.action_trace && a.state_trace == b.state_trace;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("enum names round-trip") {
  for (GameKind g : {GameKind::NashBrd, GameKind::NashPotential,
                     GameKind::StackelbergStrong, GameKind::StackelbergWeak,
                     GameKind::StackelbergNashFollowers}) {
    CHECK(game_from_string(to_string(g)) == g);
  }
  for (SettingKind s : {SettingKind::Multiplayer, SettingKind::Pairwise,
                        SettingKind::Hierarchy}) {
    CHECK(setting_from_string(to_string(s)) == s);
  }
  for (BehaviorKind b : {BehaviorKind::Ideal, BehaviorKind::SimpleRules,
                         BehaviorKind::ConstantSpeed}) {
    CHECK(behavior_from_string(to_string(b)) == b);
  }
  CHECK_THROWS_AS(game_from_string("sle"), std::invalid_argument);
}

TEST_CASE("config validation rejects inconsistent combinations") {
  ScenarioConfig cfg = base_config();
  cfg.setting = SettingKind::Hierarchy;
  cfg.game = GameKind::NashBrd;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.setting = SettingKind::Pairwise;
  cfg.game = GameKind::NashPotential;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.setting = SettingKind::Pairwise;
  cfg.game = GameKind::StackelbergNashFollowers;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.target_distance_min = 39.0;  // at or before the ego start
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.target_distance_max = cfg.target_distance_min;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.n_players = 5;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.epochs = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("scenario generation is deterministic in (seed, index)") {
  const ScenarioConfig cfg = [] {
    ScenarioConfig c = base_config();
    c.n_players = 4;
    return c;
  }();
  const Scenario a = generate_scenario(cfg, 3);
  const Scenario b = generate_scenario(cfg, 3);
  CHECK(a.world == b.world);
  CHECK(a.target_distances == b.target_distances);
  CHECK(a.hierarchy == b.hierarchy);

  const Scenario c = generate_scenario(cfg, 4);
  CHECK(a.target_distances != c.target_distances);
}

TEST_CASE("scenario placement honors range, spacing, and hierarchy order") {
  ScenarioConfig cfg = base_config();
  cfg.n_players = 4;
  std::vector<std::vector<double>> placements;
  for (int index = 0; index < 100; ++index) {
    const Scenario s = generate_scenario(cfg, index);
    placements.push_back(s.target_distances);
    REQUIRE(s.target_distances.size() == 3);
    for (double d : s.target_distances) {
      CHECK(d >= cfg.target_distance_min);
      CHECK(d <= cfg.target_distance_max);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        CHECK(std::abs(s.target_distances[i] - s.target_distances[j]) >= 0.5);
      }
    }
    CHECK(s.hierarchy[0] == 0);
    for (std::size_t k = 2; k < s.hierarchy.size(); ++k) {
      CHECK(s.target_distances[s.hierarchy[k - 1] - 1] <
            s.target_distances[s.hierarchy[k] - 1]);
    }
    // Ego on its fixed approach.
    CHECK(s.world.agents[0].z == -cfg.ego_start_distance);
    CHECK(s.world.agents[0].v == cfg.initial_speed);
  }
  // Each scenario of the batch draws its own placement.
  std::sort(placements.begin(), placements.end());
  CHECK(std::adjacent_find(placements.begin(), placements.end()) ==
        placements.end());
}

TEST_CASE("scenario generation rejects ranges too tight to separate") {
  ScenarioConfig cfg = base_config();
  cfg.n_players = 4;
  cfg.target_distance_min = 42.0;
  cfg.target_distance_max = 42.4;  // cannot hold three targets 0.5 m apart
  CHECK_THROWS_AS(generate_scenario(cfg, 0), std::invalid_argument);
}

TEST_CASE("constant-speed targets always hold their acceleration at zero") {
  WorldState world;
  world.agents = {{-40.0, 4.0}, {-50.0, 9.0}};
  const std::vector<AgentGeometry> geoms = {{{0.0, 1.0}, {1.5, 0.0}, 0.0},
                                            {{1.0, 0.0}, {0.0, -1.5}, 0.0}};
  const Action a =
      behavior_action(BehaviorKind::ConstantSpeed, 1, world, {}, geoms,
                      CostParams{}, {-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(a.accel == 0.0);
}

TEST_CASE("simple-rules targets track the desired speed when safe") {
  WorldState world;
  world.agents = {{-40.0, 4.0}, {-50.0, 10.0}};
  const std::vector<AgentGeometry> geoms = {{{0.0, 1.0}, {1.5, 0.0}, 0.0},
                                            {{1.0, 0.0}, {0.0, -1.5}, 0.0}};
  CHECK(behavior_action(BehaviorKind::SimpleRules, 1, world, {}, geoms,
                        CostParams{}, {-2.0, -1.0, 0.0, 1.0, 2.0})
            .accel == 0.0);

  world.agents[1].v = 4.0;  // far below desired speed: accelerate hard
  CHECK(behavior_action(BehaviorKind::SimpleRules, 1, world, {}, geoms,
                        CostParams{}, {-2.0, -1.0, 0.0, 1.0, 2.0})
            .accel == 2.0);
}

TEST_CASE("simple-rules targets brake hard without right of way in danger") {
  // Target is farther from the intersection than the ego and its one-step
  // drift prediction sits inside the ego's safe box.
  WorldState world;
  world.agents = {{-3.0, 4.0}, {-5.0, 4.0}};
  const std::vector<AgentGeometry> geoms = {{{0.0, 1.0}, {1.5, 0.0}, 0.0},
                                            {{1.0, 0.0}, {0.0, -1.5}, 0.0}};
  CHECK(behavior_action(BehaviorKind::SimpleRules, 1, world, {}, geoms,
                        CostParams{}, {-2.0, -1.0, 0.0, 1.0, 2.0})
            .accel == -2.0);

  // Same geometry with right of way (ego farther): tracks speed instead.
  world.agents[0].z = -8.0;
  CHECK(behavior_action(BehaviorKind::SimpleRules, 1, world, {}, geoms,
                        CostParams{}, {-2.0, -1.0, 0.0, 1.0, 2.0})
            .accel == 2.0);
}

TEST_CASE("ideal targets need the solved profile") {
  WorldState world;
  world.agents = {{-40.0, 4.0}, {-50.0, 4.0}};
  const std::vector<AgentGeometry> geoms = {{{0.0, 1.0}, {1.5, 0.0}, 0.0},
                                            {{1.0, 0.0}, {0.0, -1.5}, 0.0}};
  CHECK_THROWS_AS(behavior_action(BehaviorKind::Ideal, 1, world, {}, geoms,
                                  CostParams{}, {-2.0, 0.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("scenario runs are reproducible except for wall-clock times") {
  ScenarioConfig cfg = base_config();
  cfg.record_trace = true;
  cfg.epochs = 20;
  const ScenarioResult a = run_scenario(cfg, 1);
  const ScenarioResult b = run_scenario(cfg, 1);
  CHECK(same_except_times(a, b));
  CHECK(a.decision_times.size() == 20);
}

TEST_CASE("a distant constant-speed target leaves the ego free to track") {
  ScenarioConfig cfg = base_config();
  cfg.behavior = BehaviorKind::ConstantSpeed;
  cfg.target_distance_min = 10000.0;
  cfg.target_distance_max = 10010.0;
  const ScenarioResult r = run_scenario(cfg, 0);
  CHECK_FALSE(r.crashed);
  CHECK(r.avg_ego_speed > 9.0);
}

TEST_CASE("ideal two-player scenarios stay crash free") {
  ScenarioConfig cfg = base_config();
  for (int index = 0; index < 5; ++index) {
    const ScenarioResult r = run_scenario(cfg, index);
    CHECK_FALSE(r.crashed);
    CHECK(r.min_distance >= cfg.crash_distance);
  }
}

TEST_CASE("ideal targets commit exactly the actions the ego solved for") {
  ScenarioConfig cfg = base_config();
  cfg.record_trace = true;
  cfg.epochs = 15;
  const ScenarioResult r = run_scenario(cfg, 2);
  const auto set = make_segmented_strategies(cfg.action_set, 2,
                                             cfg.params.horizon_steps / 2);
  REQUIRE(r.decision_trace.size() == 15);
  for (std::size_t epoch = 0; epoch < r.decision_trace.size(); ++epoch) {
    for (int i = 0; i < cfg.n_players; ++i) {
      const Strategy& planned = set[r.decision_trace[epoch][i]];
      CHECK(r.action_trace[epoch][i] == planned.action_at(0).accel);
    }
  }
}

TEST_CASE("crash flag is the min-distance threshold test") {
  ScenarioConfig cfg = base_config();
  cfg.behavior = BehaviorKind::ConstantSpeed;
  cfg.epochs = 30;
  for (int index = 0; index < 5; ++index) {
    const ScenarioResult tight = run_scenario(cfg, index);

    ScenarioConfig wide = cfg;
    wide.crash_distance = 2.0 * cfg.crash_distance;
    const ScenarioResult loose = run_scenario(wide, index);

    // Same trajectory, so the recorded minimum distance is identical and
    // crashing at the tighter threshold implies crashing at the wider one.
    CHECK(tight.min_distance == loose.min_distance);
    CHECK(tight.crashed == (tight.min_distance < cfg.crash_distance));
    CHECK(loose.crashed == (loose.min_distance < wide.crash_distance));
    if (tight.crashed) CHECK(loose.crashed);
  }
}

TEST_CASE("single-run batches mirror the scenario result") {
  ScenarioConfig cfg = base_config();
  cfg.epochs = 10;
  const BatchResult batch = run_batch(cfg, 1);
  const ScenarioResult solo = run_scenario(cfg, 0);
  CHECK(batch.stats.scenario_count == 1);
  CHECK(batch.stats.crashed_count == (solo.crashed ? 1 : 0));
  CHECK(batch.stats.mean_ego_speed == solo.avg_ego_speed);
  CHECK(batch.stats.crashes_per_100 == (solo.crashed ? 100.0 : 0.0));
}

TEST_CASE("an all-crash batch scales to one hundred per hundred") {
  ScenarioConfig cfg = base_config();
  cfg.epochs = 10;
  cfg.crash_distance = 1000.0;  // every placement is within this radius
  const BatchResult batch = run_batch(cfg, 5);
  CHECK(batch.stats.crashed_count == 5);
  CHECK(batch.stats.crashes_per_100 == 100.0);
}

TEST_CASE("csv rows carry the pinned header and round-trip") {
  CHECK(csv_header() ==
        "scenario_id,seed,n_players,game,setting,behavior,crashed,"
        "min_distance_m,avg_ego_speed_mps,mean_decision_time_s");

  ScenarioConfig cfg = base_config();
  cfg.epochs = 5;
  const ScenarioResult r = run_scenario(cfg, 0);
  std::stringstream text;
  text << csv_header() << "\n" << csv_row(cfg, 0, r) << "\n";

  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[1].size() == 10);
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "7");
  CHECK(rows[1][2] == "2");
  CHECK(rows[1][3] == "nbr");
  CHECK(rows[1][4] == "multiplayer");
  CHECK(rows[1][5] == "ideal");
  CHECK(rows[1][6] == (r.crashed ? "1" : "0"));
  CHECK(std::stod(rows[1][7]) == r.min_distance);
  CHECK(std::stod(rows[1][8]) == r.avg_ego_speed);
}

TEST_CASE("summary json echoes the config and the aggregates") {
  ScenarioConfig cfg = base_config();
  cfg.epochs = 5;
  const BatchResult batch = run_batch(cfg, 2);
  const std::string json = summary_json(cfg, batch.stats);
  CHECK(json.find("\"game\": \"nbr\"") != std::string::npos);
  CHECK(json.find("\"scenario_count\": 2") != std::string::npos);
  CHECK(json.find("\"crashes_per_100\"") != std::string::npos);
}

TEST_CASE("strong and weak runs coincide under the saturated cost") {
  ScenarioConfig sse = base_config();
  sse.behavior = BehaviorKind::ConstantSpeed;
  sse.game = GameKind::StackelbergStrong;
  sse.record_trace = true;
  sse.epochs = 25;
  ScenarioConfig wse = sse;
  wse.game = GameKind::StackelbergWeak;
  for (int index = 0; index < 3; ++index) {
    const ScenarioResult a = run_scenario(sse, index);
    const ScenarioResult b = run_scenario(wse, index);
    CHECK(a.decision_trace == b.decision_trace);
    CHECK(a.min_distance == b.min_distance);
  }
}

TEST_CASE("every configured game and setting produces a decision") {
  const struct {
    GameKind game;
    SettingKind setting;
    int players;
  } cells[] = {
      {GameKind::NashBrd, SettingKind::Multiplayer, 3},
      {GameKind::NashBrd, SettingKind::Pairwise, 3},
      {GameKind::NashPotential, SettingKind::Multiplayer, 2},
      {GameKind::StackelbergStrong, SettingKind::Multiplayer, 3},
      {GameKind::StackelbergStrong, SettingKind::Pairwise, 3},
      {GameKind::StackelbergWeak, SettingKind::Hierarchy, 3},
      {GameKind::StackelbergNashFollowers, SettingKind::Multiplayer, 3},
  };
  for (const auto& cell : cells) {
    ScenarioConfig cfg = base_config();
    cfg.game = cell.game;
    cfg.setting = cell.setting;
    cfg.n_players = cell.players;
    cfg.behavior = BehaviorKind::ConstantSpeed;
    cfg.epochs = 3;
    const ScenarioResult r = run_scenario(cfg, 0);
    CHECK(r.decision_times.size() == 3);
  }
}

}  // TEST_SUITE

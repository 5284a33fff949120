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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "igames/costs.hpp"
#include "igames/nash.hpp"
#include "igames/sim.hpp"
#include "igames/stackelberg.hpp"
#include "json.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

using igames::GameKind;
using igames::ScenarioConfig;
using igames::SettingKind;

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

nlohmann::json config_json(const ScenarioConfig& cfg) {
  return nlohmann::json::parse(igames::summary_json(cfg, {}))["config"];
}

std::string cell_tag(const ScenarioConfig& cfg) {
  return "n" + std::to_string(cfg.n_players) + "_" + to_string(cfg.game) +
         "_" + to_string(cfg.setting) + "_" + to_string(cfg.behavior);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

struct SimulateArgs {
  ScenarioConfig cfg;
  int scenarios = 100;
  std::string out_dir = ".";
  std::string format = "table";
  std::string game = "nbr";
  std::string setting = "multiplayer";
  std::string behavior = "ideal";
  double safe_distance = 6.0;
};

int run_simulate(SimulateArgs& args) {
  args.cfg.game = igames::game_from_string(args.game);
  args.cfg.setting = igames::setting_from_string(args.setting);
  args.cfg.behavior = igames::behavior_from_string(args.behavior);
  args.cfg.params.d_xc = args.safe_distance;
  args.cfg.params.d_yc = args.safe_distance;
  igames::validate_config(args.cfg);

  const igames::BatchResult batch = run_batch(args.cfg, args.scenarios);

  std::ostringstream csv;
  csv << igames::csv_header() << "\n";
  for (int i = 0; i < args.scenarios; ++i) {
    csv << igames::csv_row(args.cfg, i, batch.scenarios[i]) << "\n";
  }
  const std::string summary = igames::summary_json(args.cfg, batch.stats);

  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  const std::string tag = cell_tag(args.cfg);
  const auto csv_path = dir / ("sim_" + tag + ".csv");
  const auto summary_path = dir / ("sim_" + tag + ".summary.json");
  const auto manifest_path = dir / ("sim_" + tag + ".manifest.json");
  write_file(csv_path, csv.str());
  write_file(summary_path, summary + "\n");

  nlohmann::json manifest;
  manifest["tool"] = "igames";
  manifest["version"] = kVersion;
  manifest["created_utc"] = timestamp_utc();
  manifest["command"] = "simulate";
  manifest["seed"] = args.cfg.seed;
  manifest["scenarios"] = args.scenarios;
  manifest["config"] = config_json(args.cfg);
  manifest["outputs"] = {{"csv", csv_path.string()},
                         {"summary", summary_path.string()}};
  write_file(manifest_path, manifest.dump(2) + "\n");

  if (args.format == "csv") {
    std::cout << csv.str();
  } else if (args.format == "json") {
    std::cout << summary << "\n";
  } else {
    std::printf("%-28s %-22s %-22s %-22s\n", "Cell", "Crashes per 100 Games",
                "Ave. Ego Speed (m/s)", "Ave. Decision Time (s)");
    std::printf("%-28s %-22g %-22.4f %-22.6f\n", tag.c_str(),
                batch.stats.crashes_per_100, batch.stats.mean_ego_speed,
                batch.stats.mean_decision_time);
    if (batch.stats.nonconverged_epochs > 0) {
      std::printf("note: %d non-converged solver epochs recorded\n",
                  batch.stats.nonconverged_epochs);
    }
  }
  std::cout << "wrote " << csv_path.string() << "\n";
  return kExitOk;
}

int run_matrix_demo() {
  const igames::MatrixGame demo = igames::demo_matrix_game();
  const igames::GameSpec game = igames::make_game(demo);

  std::printf("Leader\\Follower");
  for (double f : demo.follower_actions) std::printf(" %8g", f);
  std::printf("\n");
  for (int l = 0; l < demo.rows(); ++l) {
    std::printf("%15g", demo.leader_actions[l]);
    for (int f = 0; f < demo.cols(); ++f) {
      std::printf(" (%3g,%3g)", demo.leader_cost(l, f),
                  demo.follower_cost(l, f));
    }
    std::printf("\n");
  }

  const auto strong =
      igames::stackelberg_2p(game, 0, igames::StackelbergMode::Strong);
  std::printf("\nStrong commitment: leader %g, follower %g, costs (%g, %g)\n",
              demo.leader_actions[strong.profile[0]],
              demo.follower_actions[strong.profile[1]], strong.costs[0],
              strong.costs[1]);

  const auto weak =
      igames::stackelberg_2p(game, 0, igames::StackelbergMode::Weak);
  std::printf("Weak commitments (leader cost %g):", weak.costs[0]);
  for (int l : weak.tie_sets[0]) {
    igames::Profile probe{l, 0};
    const auto br = igames::best_response_set(game, 1, probe);
    // Weak tie-breaking: follower reply maximizing the leader's cost.
    int reply = br.front();
    double reply_cost = -1e300;
    for (int f : br) {
      probe[1] = f;
      const double c = game.cost->evaluate(probe, 0);
      if (c > reply_cost) {
        reply_cost = c;
        reply = f;
      }
    }
    std::printf(" (%g,%g)", demo.leader_actions[l],
                demo.follower_actions[reply]);
  }
  std::printf("  selected: leader %g\n", demo.leader_actions[weak.profile[0]]);

  std::printf("Pure Nash equilibria:");
  for (const auto& p : igames::brute_force_nash(game)) {
    std::printf(" (%g,%g)[%g,%g]", demo.leader_actions[p[0]],
                demo.follower_actions[p[1]], game.cost->evaluate(p, 0),
                game.cost->evaluate(p, 1));
  }
  std::printf("\n");
  return kExitOk;
}

int run_verify(const std::string& game_file, const std::string& profile_arg) {
  std::ifstream in(game_file);
  if (!in) {
    std::cerr << "cannot open game file: " << game_file << "\n";
    return kExitUsage;
  }
  const igames::MatrixGame matrix = igames::load_matrix_game(in);
  const igames::GameSpec game = igames::make_game(matrix);

  const auto comma = profile_arg.find(',');
  if (comma == std::string::npos) {
    std::cerr << "profile must be 'leader_action,follower_action'\n";
    return kExitUsage;
  }
  const double la = std::stod(profile_arg.substr(0, comma));
  const double fa = std::stod(profile_arg.substr(comma + 1));
  const auto index_of = [](const std::vector<double>& actions, double a) {
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (actions[i] == a) return static_cast<int>(i);
    }
    throw std::invalid_argument("action not in the game");
  };
  const igames::Profile profile{index_of(matrix.leader_actions, la),
                                index_of(matrix.follower_actions, fa)};

  bool is_nash = true;
  for (int player = 0; player < 2; ++player) {
    const double held = game.cost->evaluate(profile, player);
    double best = held;
    int best_strategy = profile[player];
    igames::Profile probe = profile;
    for (int s = 0; s < game.set_size(player); ++s) {
      probe[player] = s;
      const double c = game.cost->evaluate(probe, player);
      if (c < best) {
        best = c;
        best_strategy = s;
      }
    }
    const double gain = held - best;
    const auto& actions =
        player == 0 ? matrix.leader_actions : matrix.follower_actions;
    if (gain > 0) {
      std::printf("player %d: cost %g, best deviation gain %g (deviate to %g)\n",
                  player, held, gain, actions[best_strategy]);
      is_nash = false;
    } else {
      std::printf("player %d: cost %g, best deviation gain 0\n", player, held);
    }
  }
  std::printf("nash: %s\n", is_nash ? "yes" : "no");

  const auto strong =
      igames::stackelberg_2p(game, 0, igames::StackelbergMode::Strong);
  const auto weak =
      igames::stackelberg_2p(game, 0, igames::StackelbergMode::Weak);
  std::printf("strong commitment: %s\n",
              strong.profile == profile ? "yes" : "no");
  std::printf("weak commitment: %s\n", weak.profile == profile ? "yes" : "no");
  return is_nash ? kExitOk : 1;
}

struct BenchArgs {
  std::vector<int> players{2, 4};
  int scenarios = 5;
  int epochs = 50;
  std::uint64_t seed = 7;
  std::string out_dir = ".";
};

int run_bench(const BenchArgs& args) {
  struct Cell {
    GameKind game;
    SettingKind setting;
  };
  const Cell cells[] = {
      {GameKind::NashBrd, SettingKind::Multiplayer},
      {GameKind::NashBrd, SettingKind::Pairwise},
      {GameKind::NashPotential, SettingKind::Multiplayer},
      {GameKind::StackelbergStrong, SettingKind::Multiplayer},
      {GameKind::StackelbergStrong, SettingKind::Pairwise},
      {GameKind::StackelbergWeak, SettingKind::Multiplayer},
      {GameKind::StackelbergWeak, SettingKind::Pairwise},
      {GameKind::StackelbergNashFollowers, SettingKind::Multiplayer},
  };

  std::ostringstream csv;
  csv << "n_players,game,setting,mean_decision_time_s,decisions\n";
  std::printf("%-10s %-6s %-12s %-22s\n", "n_players", "game", "setting",
              "mean decision time (s)");
  for (int n : args.players) {
    for (const Cell& cell : cells) {
      if (n == 2 && cell.setting == SettingKind::Pairwise) continue;
      ScenarioConfig cfg;
      cfg.n_players = n;
      cfg.game = cell.game;
      cfg.setting = cell.setting;
      cfg.behavior = igames::BehaviorKind::ConstantSpeed;
      cfg.epochs = args.epochs;
      cfg.seed = args.seed;
      const igames::BatchResult batch = run_batch(cfg, args.scenarios);
      const std::size_t decisions =
          static_cast<std::size_t>(args.scenarios) * args.epochs;
      std::printf("%-10d %-6s %-12s %-22.6f\n", n,
                  to_string(cell.game).c_str(),
                  to_string(cell.setting).c_str(),
                  batch.stats.mean_decision_time);
      csv << n << ',' << to_string(cell.game) << ','
          << to_string(cell.setting) << ','
          << igames::format_double(batch.stats.mean_decision_time) << ','
          << decisions << "\n";
    }
  }
  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "bench.csv", csv.str());
  std::cout << "wrote " << (dir / "bench.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-game equilibrium solvers and an intersection-crossing "
               "simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a seeded scenario batch");
  simulate->add_option("--players", sim.cfg.n_players, "Agent count (2-4)")
      ->envname("IGAMES_PLAYERS");
  simulate->add_option("--game", sim.game, "Game type: nbr|npf|sse|wse|snf")
      ->envname("IGAMES_GAME");
  simulate
      ->add_option("--setting", sim.setting,
                   "Solution setting: multiplayer|pairwise|hierarchy")
      ->envname("IGAMES_SETTING");
  simulate
      ->add_option("--behavior", sim.behavior,
                   "Target behavior: ideal|simple|constant")
      ->envname("IGAMES_BEHAVIOR");
  simulate->add_option("--scenarios", sim.scenarios, "Batch size")
      ->envname("IGAMES_SCENARIOS");
  simulate->add_option("--seed", sim.cfg.seed, "Batch RNG seed")
      ->envname("IGAMES_SEED");
  simulate->add_option("--epochs", sim.cfg.epochs, "Decisions per scenario");
  simulate->add_option("--crash-distance", sim.cfg.crash_distance,
                       "Crash threshold D, m");
  simulate->add_option("--ego-start", sim.cfg.ego_start_distance,
                       "Ego start distance, m");
  simulate->add_option("--target-min", sim.cfg.target_distance_min,
                       "Target placement lower bound, m");
  simulate->add_option("--target-max", sim.cfg.target_distance_max,
                       "Target placement upper bound, m");
  simulate->add_option("--lane-offset", sim.cfg.lane_offset,
                       "Lane center offset from the road axis, m");
  simulate->add_option("--safe-distance", sim.safe_distance,
                       "Safe distance d_xc = d_yc, m");
  simulate->add_option("--out", sim.out_dir, "Output directory")
      ->envname("IGAMES_OUT");
  simulate->add_option("--format", sim.format, "Stdout format: table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->envname("IGAMES_FORMAT");

  CLI::App* matrix_demo = app.add_subcommand(
      "matrix-demo", "Solve the strong-vs-weak demo cost matrix");

  std::string verify_game;
  std::string verify_profile;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check a profile of a matrix game against the equilibria");
  verify->add_option("--game", verify_game, "Matrix game text file")
      ->required();
  verify
      ->add_option("--profile", verify_profile,
                   "Profile as 'leader_action,follower_action'")
      ->required();

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time every game/setting cell");
  bench_cmd->add_option("--players", bench.players, "Player counts to bench");
  bench_cmd->add_option("--scenarios", bench.scenarios, "Scenarios per cell");
  bench_cmd->add_option("--epochs", bench.epochs, "Decisions per scenario");
  bench_cmd->add_option("--seed", bench.seed, "Batch RNG seed")
      ->envname("IGAMES_SEED");
  bench_cmd->add_option("--out", bench.out_dir, "Output directory")
      ->envname("IGAMES_OUT");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return run_simulate(sim);
    if (matrix_demo->parsed()) return run_matrix_demo();
    if (verify->parsed()) return run_verify(verify_game, verify_profile);
    if (bench_cmd->parsed()) return run_bench(bench);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  } catch (const igames::CapExceededError& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

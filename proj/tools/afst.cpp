// Command line front end: train / eval / sweep / render / worldgen.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "afst/eval/render.hpp"
#include "afst/train/sweep.hpp"

using namespace afst;

namespace {

train::TrainConfig config_from_args(const std::string& config_path,
                                    std::optional<std::uint64_t> seed,
                                    const std::vector<std::string>& overrides) {
  train::TrainConfig cfg;
  if (!config_path.empty()) cfg = train::load_train_config(config_path);
  if (seed) cfg.seed = *seed;
  for (const auto& o : overrides) train::apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

eval::ScenarioSpec scenario_from_arg(const std::string& arg) {
  if (std::filesystem::exists(arg)) return eval::load_scenario_spec(arg);
  return eval::ScenarioSpec::preset(arg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AFST: SMDP navigation policy training and evaluation"};
  app.require_subcommand(1);

  // ---- train ----
  auto* train_cmd = app.add_subcommand("train", "Train a policy");
  std::string train_config;
  std::optional<std::uint64_t> train_seed;
  std::vector<std::string> overrides;
  train_cmd->add_option("--config", train_config, "Config JSON file");
  train_cmd->add_option("--seed", train_seed, "Seed override");
  train_cmd->add_option("--override", overrides,
                        "key=value config override (repeatable)");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  std::string ckpt_path, scenario_arg = "sparse", eval_mode = "";
  int eval_episodes = 100;
  std::uint64_t eval_seed = 0;
  std::string eval_out, traj_dir;
  eval_cmd->add_option("--checkpoint", ckpt_path, "Checkpoint file")->required();
  eval_cmd->add_option("--scenario", scenario_arg,
                       "Family name, preset, or scenario JSON file");
  eval_cmd->add_option("--episodes", eval_episodes, "Episode count");
  eval_cmd->add_option("--seed", eval_seed, "Evaluation seed");
  eval_cmd->add_option("--mode", eval_mode, "mode1 or mode2 (default: trained mode)");
  eval_cmd->add_option("--report", eval_out, "Write per-episode CSV here");
  eval_cmd->add_option("--render-dir", traj_dir,
                       "Render every episode trajectory into this directory");

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "Ablation sweep");
  std::string sweep_config, sweep_out = "runs/sweep";
  std::vector<std::string> variants{"AFST", "-ELU", "-2D-to-3D", "-EGAE", "-SMDP"};
  std::vector<std::string> families{"sparse", "dense", "spiral", "zigzag", "hybrid"};
  std::vector<std::uint64_t> sweep_seeds{1, 2, 3};
  int sweep_eval_episodes = 50;
  sweep_cmd->add_option("--config", sweep_config, "Base config JSON file");
  sweep_cmd->add_option("--variants", variants, "Variant list");
  sweep_cmd->add_option("--families", families, "Evaluation families");
  sweep_cmd->add_option("--seeds", sweep_seeds, "Training seeds");
  sweep_cmd->add_option("--eval-episodes", sweep_eval_episodes,
                        "Episodes per (variant, family)");
  sweep_cmd->add_option("--out", sweep_out, "Output directory");
  std::vector<std::string> sweep_overrides;
  sweep_cmd->add_option("--override", sweep_overrides,
                        "key=value base-config override (repeatable)");

  // ---- render ----
  auto* render_cmd = app.add_subcommand("render", "Render a recorded episode");
  std::string episode_csv, world_file, render_out = "trajectory.png";
  double world_resolution = 0.05;
  std::vector<double> goal_arg;
  render_cmd->add_option("--episode", episode_csv, "Trajectory CSV")->required();
  render_cmd->add_option("--world", world_file, "World image (PNG/PGM)")->required();
  render_cmd->add_option("--resolution", world_resolution, "World meters/cell");
  render_cmd->add_option("--goal", goal_arg, "Goal x y (draws the goal box)")
      ->expected(2);
  render_cmd->add_option("--out", render_out, "Output image");

  // ---- worldgen ----
  auto* world_cmd = app.add_subcommand("worldgen", "Export scenario worlds");
  std::string world_out_dir = "worlds";
  std::string world_family = "";
  std::uint64_t world_seed = 0;
  world_cmd->add_option("--out", world_out_dir, "Output directory");
  world_cmd->add_option("--family", world_family,
                        "Only this family (default: spiral and zigzag)");
  world_cmd->add_option("--seed", world_seed, "Seed for random families");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) {
      const auto cfg = config_from_args(train_config, train_seed, overrides);
      const auto result = train::train(cfg);
      std::printf("metrics: %s\ncheckpoint: %s\n", result.metrics_path.c_str(),
                  result.final_checkpoint.c_str());
      return 0;
    }

    if (*eval_cmd) {
      const train::LoadedPolicy lp = train::load_policy_checkpoint(ckpt_path);
      eval::EvalOptions opt;
      opt.episodes = eval_episodes;
      opt.seed = eval_seed;
      opt.mode = lp.config.mode;
      if (eval_mode == "mode1") opt.mode = sim::ExecMode::Mode1;
      else if (eval_mode == "mode2") opt.mode = sim::ExecMode::Mode2;
      else if (!eval_mode.empty()) throw std::runtime_error("bad --mode");
      opt.max_decisions = lp.config.max_episode_steps;
      opt.keep_trajectories = !traj_dir.empty();
      const eval::ScenarioSpec spec = scenario_from_arg(scenario_arg);
      const auto ctrl = train::make_mean_controller(
          lp.policy, lp.config.conversion_config(), lp.config.force_duration);
      const eval::EvalReport report = eval::evaluate(
          ctrl, lp.config.robot, lp.config.reward, lp.config.observation, spec, opt);
      std::printf("%s\n", eval::format_report_line(report).c_str());
      if (!eval_out.empty()) eval::write_eval_report(report, eval_out);
      if (!traj_dir.empty()) {
        std::filesystem::create_directories(traj_dir);
        for (std::size_t e = 0; e < report.episodes.size(); ++e) {
          const auto& ep = report.episodes[e];
          eval::RenderOptions ro;
          ro.start = ep.scenario.start;
          ro.goal = {{ep.scenario.goal_x, ep.scenario.goal_y}};
          char name[64];
          std::snprintf(name, sizeof(name), "/episode_%03zu.png", e);
          eval::render_trajectory(ep.scenario.world, ep.trajectory,
                                  traj_dir + name, ro);
        }
      }
      return 0;
    }

    if (*sweep_cmd) {
      train::TrainConfig base;
      if (!sweep_config.empty()) base = train::load_train_config(sweep_config);
      for (const auto& o : sweep_overrides) train::apply_override(base, o);
      const auto result = train::ablation_sweep(
          base, variants, families, sweep_seeds, sweep_eval_episodes, sweep_out);
      std::filesystem::create_directories(sweep_out);
      train::write_sweep_csv(result, sweep_out + "/sweep.csv");
      std::printf("%s", train::format_sweep_table(result).c_str());
      return 0;
    }

    if (*render_cmd) {
      const sim::WorldMap world = sim::load_world(world_file, world_resolution);
      const sim::Trajectory rows = sim::read_trajectory(episode_csv);
      eval::RenderOptions ro;
      if (goal_arg.size() == 2) ro.goal = {{goal_arg[0], goal_arg[1]}};
      eval::render_trajectory(world, rows, render_out, ro);
      std::printf("wrote %s\n", render_out.c_str());
      return 0;
    }

    if (*world_cmd) {
      std::filesystem::create_directories(world_out_dir);
      auto dump = [&](const std::string& name) {
        const eval::ScenarioSpec spec = eval::ScenarioSpec::preset(name);
        const eval::Scenario scen = eval::generate_scenario(spec, 0.17, world_seed);
        sim::save_world(scen.world, world_out_dir + "/" + name + ".png");
        std::printf("wrote %s/%s.png (start %.2f,%.2f goal %.2f,%.2f)\n",
                    world_out_dir.c_str(), name.c_str(), scen.start.x,
                    scen.start.y, scen.goal_x, scen.goal_y);
      };
      if (!world_family.empty()) {
        dump(world_family);
      } else {
        dump("spiral");
        dump("zigzag");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

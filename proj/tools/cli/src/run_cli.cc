// Copyright 2026 The d3qn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "d3qn_cli/run_cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "d3qn/errors.h"
#include "d3qn/neuro/grad_check.h"
#include "d3qn/neuro/presets.h"
#include "d3qn/train/checkpoint.h"
#include "d3qn/train/compare.h"
#include "d3qn/train/trainer.h"
#include "d3qn/util/atomic_file.h"
#include "d3qn_cli/config.h"
#include "d3qn_cli/render.h"

namespace d3qn::cli {
namespace {

namespace fs = std::filesystem;

// Flags shared by every subcommand that builds a RunConfig. Only flags that
// were given on the command line override the config file.
struct RunFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  int episodes = 0;
  int episodes_stage2 = 0;
  std::string world;
  std::string world_stage2;
  std::string variant;
  std::string preset;
  double threshold = 0.0;
  int checkpoint_every = 0;
  bool no_corrupt = false;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* episodes_opt = nullptr;
  CLI::Option* episodes2_opt = nullptr;
  CLI::Option* world_opt = nullptr;
  CLI::Option* world2_opt = nullptr;
  CLI::Option* variant_opt = nullptr;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* ckpt_opt = nullptr;

  void Register(CLI::App* app, bool training) {
    app->add_option("--config", config, "INI config file")->check(CLI::ExistingFile);
    seed_opt = app->add_option("--seed", seed, "Base seed");
    app->add_flag("--no-corrupt", no_corrupt, "Disable sensor corruption");
    if (!training) return;
    out_opt = app->add_option("--out", out, "Output directory");
    episodes_opt = app->add_option("--episodes", episodes, "Stage-1 episodes");
    episodes2_opt = app->add_option("--episodes-stage2", episodes_stage2,
                                    "Stage-2 episodes");
    world_opt = app->add_option("--world", world, "Stage-1 world file");
    world2_opt = app->add_option("--world-stage2", world_stage2,
                                 "Stage-2 world file");
    variant_opt = app->add_option("--variant", variant, "dqn, ddqn or d3qn");
    preset_opt = app->add_option("--preset", preset, "dense, conv or linear");
    threshold_opt = app->add_option("--threshold", threshold,
                                    "Moving-average return threshold");
    ckpt_opt = app->add_option("--checkpoint-every", checkpoint_every,
                               "Checkpoint cadence in episodes (0: final only)");
  }

  static bool Given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

  RunConfig Resolve() const {
    RunConfig c;
    if (!config.empty()) ApplyConfigFile(config, c);
    if (const char* env = std::getenv("D3QN_OUTPUT_DIR"); env && *env) c.output_dir = env;
    if (Given(seed_opt)) c.seed = seed;
    if (Given(out_opt)) c.output_dir = out;
    if (Given(episodes_opt)) c.episodes_stage1 = episodes;
    if (Given(episodes2_opt)) c.episodes_stage2 = episodes_stage2;
    if (Given(world_opt)) c.world_stage1 = world;
    if (Given(world2_opt)) c.world_stage2 = world_stage2;
    if (Given(variant_opt)) c.agent.variant = ParseVariant(variant);
    if (Given(preset_opt)) c.agent.preset = neuro::ParsePreset(preset);
    if (Given(threshold_opt)) c.threshold = threshold;
    if (Given(ckpt_opt)) c.checkpoint_every = checkpoint_every;
    if (no_corrupt) c.corrupt_train = c.corrupt_eval = false;
    return c;
  }
};

std::string Absolute(const std::string& path) {
  if (path.empty()) return path;
  return fs::weakly_canonical(fs::absolute(path)).string();
}

// World paths in the echoed config are absolute so that the echo replays
// the run from any working directory.
void AbsolutizePaths(RunConfig& c) {
  c.world_stage1 = Absolute(c.world_stage1);
  c.world_stage2 = Absolute(c.world_stage2);
  c.eval_world = Absolute(c.eval_world);
}

std::shared_ptr<const WorldMap> LoadWorldShared(const std::string& path) {
  if (path.empty()) throw ConfigError("no world file given");
  return std::make_shared<const WorldMap>(LoadWorldFile(path));
}

std::string FormatEvalLine(const EvalMetrics& m) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "episodes=%d mean_return=%.4f collision_free_rate=%.4f mean_steps=%.2f",
                m.episodes, m.mean_return, m.collision_free_rate, m.mean_steps);
  return buf;
}

int DoTrain(const RunFlags& flags, bool resume, int log_every, std::ostream& out) {
  RunConfig config = flags.Resolve();
  AbsolutizePaths(config);
  config.Validate();
  fs::create_directories(config.output_dir);
  WriteFileAtomic(fs::path(config.output_dir) / "effective.config",
                  ConfigToText(config));
  const TrainResult result = Train(config, resume, [&](const EpisodeStats& s) {
    if (log_every > 0 && s.episode % log_every == 0) {
      char buf[200];
      std::snprintf(buf, sizeof(buf),
                    "episode %d stage %d steps %d return %.3f ma %.3f eps %.3f %s\n",
                    s.episode, s.stage, s.steps, s.ret, s.ma_return, s.epsilon,
                    std::string(TerminalName(s.cause)).c_str());
      out << buf << std::flush;
    }
  });
  out << "final checkpoint: " << result.final_checkpoint.string() << "\n";
  if (!config.eval_world.empty()) {
    const EvalMetrics m =
        Evaluate(result.final_checkpoint, LoadWorldShared(config.eval_world),
                 config.eval_episodes, config.eval_seed, config.env,
                 config.EvalSensor());
    WriteFileAtomic(fs::path(config.output_dir) / "eval.json",
                    EvalMetricsToJson(m).dump(2) + "\n");
    out << "eval " << FormatEvalLine(m) << "\n";
  }
  return kExitOk;
}

std::vector<Variant> ParseVariantList(const std::string& list) {
  std::vector<Variant> variants;
  std::stringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) variants.push_back(ParseVariant(item));
  }
  return variants;
}

int DoCompare(const RunFlags& flags, const std::string& variant_list, int seeds,
              int threads, std::ostream& out) {
  RunConfig config = flags.Resolve();
  AbsolutizePaths(config);
  config.Validate();
  const std::vector<Variant> variants = ParseVariantList(variant_list);
  fs::create_directories(config.output_dir);
  WriteFileAtomic(fs::path(config.output_dir) / "effective.config",
                  ConfigToText(config));
  const ComparisonResult result =
      CompareVariants(config, variants, seeds, threads, [&](const CompareCell& cell) {
        out << "done " << VariantName(cell.variant) << " seed " << cell.seed
            << " episodes_to_threshold "
            << (cell.episodes_to_threshold
                    ? std::to_string(*cell.episodes_to_threshold)
                    : std::string("not reached"))
            << " final_ma " << cell.final_ma << "\n"
            << std::flush;
      });
  out << ComparisonSummaryCsv(result);
  return kExitOk;
}

struct EvalFlags {
  std::string checkpoint;
  std::string world;
  int episodes = 100;
  std::string metrics_out;
  CLI::Option* world_opt = nullptr;
  CLI::Option* episodes_opt = nullptr;
};

int DoEval(const RunFlags& flags, const EvalFlags& e, std::ostream& out) {
  RunConfig config = flags.Resolve();
  if (RunFlags::Given(flags.seed_opt)) config.eval_seed = flags.seed;
  if (RunFlags::Given(e.world_opt)) config.eval_world = e.world;
  if (RunFlags::Given(e.episodes_opt)) config.eval_episodes = e.episodes;
  if (config.eval_world.empty()) throw UsageError("eval needs --world");
  if (!fs::exists(e.checkpoint)) {
    throw LoadError("checkpoint not found: " + e.checkpoint);
  }
  const EvalMetrics m =
      Evaluate(e.checkpoint, LoadWorldShared(config.eval_world), config.eval_episodes,
               config.eval_seed, config.env, config.EvalSensor());
  const std::string json = EvalMetricsToJson(m).dump(2) + "\n";
  if (e.metrics_out.empty()) {
    out << json;
  } else {
    const fs::path path(e.metrics_out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    WriteFileAtomic(path, json);
    out << FormatEvalLine(m) << "\n";
  }
  return kExitOk;
}

struct GradFlags {
  std::string preset = "all";
  int trials = 100;
  std::uint64_t seed = 1;
  int n_rays = 64;
  int stack_k = 1;
};

int DoGradCheck(const GradFlags& g, std::ostream& out) {
  std::vector<neuro::Preset> presets;
  if (g.preset == "all") {
    presets = {neuro::Preset::kDense, neuro::Preset::kConv, neuro::Preset::kLinear};
  } else {
    presets = {neuro::ParsePreset(g.preset)};
  }
  neuro::GradCheckOptions options;
  options.trials = g.trials;
  options.seed = g.seed;
  bool ok = true;
  for (neuro::Preset preset : presets) {
    const double tolerance = preset == neuro::Preset::kConv ? 1e-4 : 1e-6;
    for (bool dueling : {false, true}) {
      const neuro::NetworkSpec spec =
          neuro::BuildQNetworkSpec(preset, dueling, g.n_rays, g.stack_k, 0);
      const neuro::GradCheckReport r = neuro::GradCheck(spec, options);
      const bool pass = r.max_relative_error < tolerance;
      ok = ok && pass;
      char buf[200];
      std::snprintf(buf, sizeof(buf),
                    "%-6s %-7s max_rel_err=%.3e coords=%lld kink_skips=%lld %s\n",
                    std::string(neuro::PresetName(preset)).c_str(),
                    dueling ? "dueling" : "plain", r.max_relative_error,
                    static_cast<long long>(r.coordinates_checked),
                    static_cast<long long>(r.kink_skips), pass ? "ok" : "FAIL");
      out << buf;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

struct RenderFlags {
  std::string world;
  std::string out;
  std::string poses;
  std::string checkpoint;
  std::string pose_log;
};

int DoRender(const RunFlags& flags, const RenderFlags& r, std::ostream& out) {
  const WorldMap world = LoadWorldFile(r.world);
  std::vector<RobotState> poses;
  RunConfig config = flags.Resolve();
  if (!r.poses.empty()) {
    poses = ReadPoseLogCsv(r.poses);
  } else {
    if (!fs::exists(r.checkpoint)) {
      throw LoadError("checkpoint not found: " + r.checkpoint);
    }
    const LoadedCheckpoint loaded = LoadCheckpoint(r.checkpoint);
    const std::uint64_t seed =
        RunFlags::Given(flags.seed_opt) ? flags.seed : config.eval_seed;
    poses = EvalTrajectory(loaded.agent, std::make_shared<const WorldMap>(world),
                           seed, config.env, config.EvalSensor());
  }
  RenderOptions options;
  options.robot_radius = config.env.robot_radius;
  const fs::path svg_path(r.out);
  if (svg_path.has_parent_path()) fs::create_directories(svg_path.parent_path());
  WriteFileAtomic(svg_path, RenderTrajectorySvg(world, poses, options));
  if (!r.pose_log.empty()) WriteFileAtomic(r.pose_log, PoseLogCsv(poses));
  out << "wrote " << r.out << " (" << poses.size() << " poses)\n";
  return kExitOk;
}

int EnvThreads() {
  const char* env = std::getenv("D3QN_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  const int n = std::atoi(env);
  if (n < 1) throw UsageError("D3QN_THREADS must be a positive integer");
  return n;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Branched dueling double deep Q-network obstacle avoidance", "d3qn");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  RunFlags train_flags;
  bool resume = false;
  int log_every = 50;
  CLI::App* train = app.add_subcommand("train", "Train an agent");
  train_flags.Register(train, true);
  train->add_flag("--resume", resume, "Continue from latest.* in the output directory");
  train->add_option("--log-every", log_every, "Progress line cadence (0: silent)");

  RunFlags eval_flags;
  EvalFlags eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint greedily");
  eval_flags.Register(eval_cmd, false);
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint file")->required();
  eval.world_opt = eval_cmd->add_option("--world", eval.world, "World file");
  eval.episodes_opt = eval_cmd->add_option("--episodes", eval.episodes, "Episodes");
  eval_cmd->add_option("--out", eval.metrics_out, "Metrics JSON path (default stdout)");

  RunFlags compare_flags;
  std::string variants = "dqn,ddqn,d3qn";
  int seeds = 5;
  int threads = 0;
  CLI::App* compare = app.add_subcommand("compare", "Train variants over seeds");
  compare_flags.Register(compare, true);
  compare->add_option("--variants", variants, "Comma-separated variants");
  compare->add_option("--seeds", seeds, "Seeds per variant");
  CLI::Option* threads_opt = compare->add_option("--threads", threads, "Worker threads");

  GradFlags grad;
  CLI::App* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  gradcheck->add_option("--preset", grad.preset, "dense, conv, linear or all");
  gradcheck->add_option("--trials", grad.trials, "Random instances per network");
  gradcheck->add_option("--seed", grad.seed, "Seed");
  gradcheck->add_option("--n-rays", grad.n_rays, "Rays per scan");
  gradcheck->add_option("--stack-k", grad.stack_k, "Stacked frames");

  RunFlags render_flags;
  RenderFlags render;
  CLI::App* render_cmd = app.add_subcommand("render", "Draw a trajectory as SVG");
  render_flags.Register(render_cmd, false);
  render_cmd->add_option("--world", render.world, "World file")->required();
  render_cmd->add_option("--out", render.out, "SVG output path")->required();
  auto* poses_opt = render_cmd->add_option("--poses", render.poses, "Pose log CSV");
  auto* ckpt_opt = render_cmd->add_option("--checkpoint", render.checkpoint,
                                          "Run one greedy episode with this checkpoint");
  poses_opt->excludes(ckpt_opt);
  render_cmd->add_option("--pose-log", render.pose_log, "Also write the pose log CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return DoTrain(train_flags, resume, log_every, out);
    if (*eval_cmd) return DoEval(eval_flags, eval, out);
    if (*compare) {
      const int n = threads_opt->count() > 0 ? threads : EnvThreads();
      return DoCompare(compare_flags, variants, seeds, n, out);
    }
    if (*gradcheck) return DoGradCheck(grad, out);
    if (*render_cmd) {
      if (render.poses.empty() && render.checkpoint.empty()) {
        throw UsageError("render needs --poses or --checkpoint");
      }
      return DoRender(render_flags, render, out);
    }
  } catch (const UsageError& e) {
    err << "d3qn: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "d3qn: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace d3qn::cli

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

#include "d3qn/train/trainer.h"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "d3qn/errors.h"
#include "d3qn/train/checkpoint.h"
#include "d3qn/util/rng.h"

namespace d3qn {
namespace internal {
EpisodeStats RunEpisodeImpl(Environment& env, const Agent& agent,
                            Agent* learner, const SensorSettings& sensor,
                            EpisodeRngs& rngs, ReplayBuffer* replay,
                            std::vector<RobotState>* poses);
}  // namespace internal

namespace fs = std::filesystem;

void RunConfig::Validate() const {
  if (world_stage1.empty()) throw ConfigError("world_stage1 is required");
  if (episodes_stage1 < 1) throw ConfigError("episodes_stage1 must be > 0");
  if (episodes_stage2 < 0) throw ConfigError("episodes_stage2 must be >= 0");
  if (episodes_stage2 > 0 && world_stage2.empty()) {
    throw ConfigError("episodes_stage2 > 0 needs world_stage2");
  }
  if (stack_k < 1) throw ConfigError("stack_k must be >= 1");
  if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
  if (ma_window < 1) throw ConfigError("ma_window must be >= 1");
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  env.Validate();
  sensor.Validate();
  agent.Validate();
}

std::string CurveCsvHeader() {
  return "episode,steps,return,ma_return_100,loss_mean,epsilon,terminal_cause,"
         "wall_s,stage,env_steps\n";
}

std::string CurveCsvRow(const EpisodeStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6g,%.6f,%s,%.3f,%d,%" PRId64 "\n",
                s.episode, s.steps, s.ret, s.ma_return, s.mean_loss, s.epsilon,
                std::string(TerminalName(s.cause)).c_str(), s.wall_s, s.stage,
                s.env_steps);
  return buf;
}

namespace {

std::vector<std::string> ReadLines(const fs::path& path) {
  std::vector<std::string> lines;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

nlohmann::json CheckpointMeta(const TrainingSession& session, const EpisodeStats& last) {
  return {{"episode", session.episodes_done()},
          {"stage", last.stage},
          {"ma_return", last.ma_return},
          {"epsilon", session.agent().CurrentEpsilon()},
          {"variant", VariantName(session.agent().variant())},
          {"seed", session.config().seed}};
}

}  // namespace

TrainResult Train(const RunConfig& config, bool resume,
                  const EpisodeCallback& on_episode) {
  config.Validate();
  auto stage1 = std::make_shared<const WorldMap>(LoadWorldFile(config.world_stage1));
  std::shared_ptr<const WorldMap> stage2;
  if (config.episodes_stage2 > 0) {
    stage2 = std::make_shared<const WorldMap>(LoadWorldFile(config.world_stage2));
  }
  TrainingSession session(config, stage1, stage2);

  const fs::path out_dir = config.output_dir;
  fs::create_directories(out_dir);
  const fs::path curve_path = out_dir / "curve.csv";
  const fs::path partial_path = out_dir / "curve.csv.partial";
  const fs::path latest = out_dir / "latest";

  std::vector<std::string> kept_rows;
  if (resume) {
    session.Restore(latest);
    const fs::path source = fs::exists(partial_path) ? partial_path : curve_path;
    const std::vector<std::string> lines = ReadLines(source);
    for (std::size_t i = 1; i < lines.size() &&
                            static_cast<int>(kept_rows.size()) < session.episodes_done();
         ++i) {
      kept_rows.push_back(lines[i]);
    }
    if (static_cast<int>(kept_rows.size()) != session.episodes_done()) {
      throw LoadError("learning curve in " + out_dir.string() + " has " +
                      std::to_string(kept_rows.size()) + " rows but the checkpoint is at episode " +
                      std::to_string(session.episodes_done()));
    }
  }

  std::ofstream csv(partial_path, std::ios::trunc);
  if (!csv) throw Error("cannot write " + partial_path.string());
  csv << CurveCsvHeader();
  for (const std::string& row : kept_rows) csv << row << '\n';
  csv.flush();

  TrainResult result;
  EpisodeStats last;
  auto save_best = [&](const EpisodeStats& s) {
    if (session.episodes_done() >= std::min(config.ma_window, session.total_episodes()) &&
        s.ma_return > session.best_ma()) {
      session.set_best_ma(s.ma_return);
      SaveCheckpoint(session.agent(), out_dir / "best.ckpt", CheckpointMeta(session, s));
    }
  };

  while (!session.finished()) {
    last = session.RunNextEpisode();
    csv << CurveCsvRow(last);
    csv.flush();
    if (!csv) throw Error("write failed for " + partial_path.string());
    result.episodes.push_back(last);
    if (on_episode) on_episode(last);

    if (config.checkpoint_every > 0 &&
        session.episodes_done() % config.checkpoint_every == 0 && !session.finished()) {
      char name[32];
      std::snprintf(name, sizeof(name), "ep_%06d.ckpt", session.episodes_done());
      SaveCheckpoint(session.agent(), out_dir / "checkpoints" / name,
                     CheckpointMeta(session, last));
      save_best(last);
      if (config.save_resume_state) session.Save(latest, /*with_replay=*/true);
    }
  }

  save_best(last);
  result.final_checkpoint = out_dir / "final.ckpt";
  SaveCheckpoint(session.agent(), result.final_checkpoint, CheckpointMeta(session, last));
  if (config.save_resume_state) session.Save(latest, /*with_replay=*/true);
  csv.close();
  fs::rename(partial_path, curve_path);
  return result;
}

EvalMetrics Evaluate(const Agent& agent, std::shared_ptr<const WorldMap> world,
                     int n_episodes, std::uint64_t seed, const EnvConfig& env_config,
                     const SensorSettings& sensor) {
  if (n_episodes < 1) throw UsageError("Evaluate: n_episodes must be >= 1");
  if (sensor.stack_k != agent.stack_k() || env_config.n_rays != agent.n_rays()) {
    throw ConfigError("Evaluate: sensor layout does not match the agent");
  }
  Environment env(std::move(world), env_config, seed);
  EpisodeRngs rngs{std::mt19937_64(DeriveSeed(seed, 3)),
                   std::mt19937_64(DeriveSeed(seed, 4)),
                   std::mt19937_64(DeriveSeed(seed, 5))};
  EvalMetrics metrics;
  metrics.episodes = n_episodes;
  int collision_free = 0;
  for (int i = 0; i < n_episodes; ++i) {
    env.Reset(DeriveSeed(seed, 1000 + static_cast<std::uint64_t>(i)));
    const EpisodeStats s =
        internal::RunEpisodeImpl(env, agent, nullptr, sensor, rngs, nullptr, nullptr);
    metrics.per_episode.push_back({i + 1, s.steps, s.ret, s.cause});
    metrics.mean_return += s.ret;
    metrics.mean_steps += s.steps;
    if (s.cause != Terminal::kCollision) ++collision_free;
  }
  metrics.mean_return /= n_episodes;
  metrics.mean_steps /= n_episodes;
  metrics.collision_free_rate = static_cast<double>(collision_free) / n_episodes;
  return metrics;
}

EvalMetrics Evaluate(const fs::path& checkpoint, std::shared_ptr<const WorldMap> world,
                     int n_episodes, std::uint64_t seed, const EnvConfig& env,
                     const SensorSettings& sensor) {
  if (n_episodes < 1) throw UsageError("Evaluate: n_episodes must be >= 1");
  const LoadedCheckpoint loaded = LoadCheckpoint(checkpoint);
  if (sensor.stack_k != loaded.agent.stack_k() ||
      env.n_rays != loaded.agent.n_rays()) {
    throw LoadError(checkpoint.string() + ": checkpoint expects " +
                    std::to_string(loaded.agent.n_rays()) + " rays x " +
                    std::to_string(loaded.agent.stack_k()) +
                    " frames, run config has " + std::to_string(env.n_rays) +
                    " x " + std::to_string(sensor.stack_k));
  }
  return Evaluate(loaded.agent, std::move(world), n_episodes, seed, env, sensor);
}

std::vector<RobotState> EvalTrajectory(const Agent& agent,
                                       std::shared_ptr<const WorldMap> world,
                                       std::uint64_t seed, const EnvConfig& env_config,
                                       const SensorSettings& sensor) {
  if (sensor.stack_k != agent.stack_k() || env_config.n_rays != agent.n_rays()) {
    throw ConfigError("EvalTrajectory: sensor layout does not match the agent");
  }
  Environment env(std::move(world), env_config, seed);
  EpisodeRngs rngs{std::mt19937_64(DeriveSeed(seed, 3)),
                   std::mt19937_64(DeriveSeed(seed, 4)),
                   std::mt19937_64(DeriveSeed(seed, 5))};
  env.Reset(DeriveSeed(seed, 1000));
  std::vector<RobotState> poses;
  internal::RunEpisodeImpl(env, agent, nullptr, sensor, rngs, nullptr, &poses);
  return poses;
}

nlohmann::json EvalMetricsToJson(const EvalMetrics& m) {
  nlohmann::json episodes = nlohmann::json::array();
  for (const EvalEpisode& e : m.per_episode) {
    episodes.push_back({{"episode", e.episode},
                        {"steps", e.steps},
                        {"return", e.ret},
                        {"terminal_cause", TerminalName(e.cause)}});
  }
  return {{"episodes", m.episodes},
          {"mean_return", m.mean_return},
          {"collision_free_rate", m.collision_free_rate},
          {"mean_steps", m.mean_steps},
          {"per_episode", episodes}};
}

}  // namespace d3qn

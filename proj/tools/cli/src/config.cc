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


#include "d3qn_cli/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "d3qn/errors.h"

namespace d3qn::cli {
namespace {

namespace pt = boost::property_tree;

struct Binding {
  std::string section;
  std::string key;
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

std::string Where(const Binding& b) { return "[" + b.section + "] " + b.key; }

template <typename T>
T ParseNumber(const std::string& text, const Binding& b) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(Where(b) + ": invalid value '" + text + "'");
  }
  return value;
}

bool ParseBool(const std::string& text, const Binding& b) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError(Where(b) + ": expected true or false, got '" + text + "'");
}

std::string FormatReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Table {
 public:
  explicit Table(RunConfig& c) {
    Str("curriculum", "world_stage1", c.world_stage1);
    Str("curriculum", "world_stage2", c.world_stage2);
    Int("curriculum", "episodes_stage1", c.episodes_stage1);
    Int("curriculum", "episodes_stage2", c.episodes_stage2);

    U64("run", "seed", c.seed);
    Str("run", "output_dir", c.output_dir);
    Int("run", "checkpoint_every", c.checkpoint_every);
    Bool("run", "save_resume_state", c.save_resume_state);
    Int("run", "ma_window", c.ma_window);
    Real("run", "threshold", c.threshold);

    Real("env", "robot_radius", c.env.robot_radius);
    Real("env", "dt", c.env.dt);
    Int("env", "max_steps", c.env.max_steps);
    Real("env", "collision_penalty", c.env.collision_penalty);
    Int("env", "n_rays", c.env.n_rays);
    Real("env", "fov", c.env.fov);
    Real("env", "max_range", c.env.max_range);
    Int("env", "max_spawn_attempts", c.env.max_spawn_attempts);

    Bool("sensor", "corrupt_train", c.corrupt_train);
    Bool("sensor", "corrupt_eval", c.corrupt_eval);
    Real("sensor", "gauss_sigma", c.sensor.gauss_sigma);
    Int("sensor", "blur_radius", c.sensor.blur_radius);
    Real("sensor", "dropout_prob", c.sensor.dropout_prob);
    Int("sensor", "stack_k", c.stack_k);

    AgentConfig& a = c.agent;
    Add("agent", "variant",
        [&a](const std::string& s) { a.variant = ParseVariant(s); },
        [&a] { return std::string(VariantName(a.variant)); });
    Add("agent", "preset",
        [&a](const std::string& s) { a.preset = neuro::ParsePreset(s); },
        [&a] { return std::string(neuro::PresetName(a.preset)); });
    Int("agent", "hidden", a.hidden);
    Real("agent", "gamma", a.gamma);
    Real("agent", "epsilon_start", a.epsilon.start);
    Real("agent", "epsilon_end", a.epsilon.end);
    I64("agent", "epsilon_horizon", a.epsilon.horizon);
    I64("agent", "target_sync_period", a.target_sync_period);
    Int("agent", "batch_size", a.batch_size);
    I64("agent", "warmup", a.warmup);
    I64("agent", "replay_capacity", a.replay_capacity);
    Int("agent", "train_every", a.train_every);
    Real("agent", "huber_delta", a.huber_delta);
    Real("agent", "learning_rate", a.adam.learning_rate);
    Real("agent", "adam_beta1", a.adam.beta1);
    Real("agent", "adam_beta2", a.adam.beta2);
    Real("agent", "adam_epsilon", a.adam.epsilon);

    Str("eval", "world", c.eval_world);
    Int("eval", "episodes", c.eval_episodes);
    U64("eval", "seed", c.eval_seed);
  }

  const std::vector<Binding>& bindings() const { return bindings_; }

  const Binding* Find(const std::string& section, const std::string& key) const {
    for (const Binding& b : bindings_) {
      if (b.section == section && b.key == key) return &b;
    }
    return nullptr;
  }

 private:
  void Add(std::string section, std::string key,
           std::function<void(const std::string&)> set,
           std::function<std::string()> get) {
    bindings_.push_back({std::move(section), std::move(key), std::move(set),
                         std::move(get)});
  }

  void Str(const char* s, const char* k, std::string& v) {
    Add(s, k, [&v](const std::string& t) { v = t; }, [&v] { return v; });
  }
  void Real(const char* s, const char* k, double& v) {
    Add(s, k, [this, &v, s, k](const std::string& t) {
          v = ParseNumber<double>(t, *Find(s, k));
        },
        [&v] { return FormatReal(v); });
  }
  void Bool(const char* s, const char* k, bool& v) {
    Add(s, k, [this, &v, s, k](const std::string& t) {
          v = ParseBool(t, *Find(s, k));
        },
        [&v] { return std::string(v ? "true" : "false"); });
  }
  template <typename T>
  void Integer(const char* s, const char* k, T& v) {
    Add(s, k, [this, &v, s, k](const std::string& t) {
          v = ParseNumber<T>(t, *Find(s, k));
        },
        [&v] { return std::to_string(v); });
  }
  void Int(const char* s, const char* k, int& v) { Integer(s, k, v); }
  void I64(const char* s, const char* k, std::int64_t& v) { Integer(s, k, v); }
  void U64(const char* s, const char* k, std::uint64_t& v) { Integer(s, k, v); }

  std::vector<Binding> bindings_;
};

}  // namespace

void ApplyConfigText(const std::string& text, RunConfig& config) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " +
                      e.message());
  }
  Table table(config);
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) {
      throw ConfigError("config key '" + section + "' outside any section");
    }
    for (const auto& [key, node] : body) {
      const Binding* b = table.Find(section, key);
      if (b == nullptr) {
        throw ConfigError("unknown config key [" + section + "] " + key);
      }
      b->set(node.data());
    }
  }
}

void ApplyConfigFile(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    ApplyConfigText(text.str(), config);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string ConfigToText(const RunConfig& config) {
  RunConfig copy = config;
  Table table(copy);
  std::ostringstream out;
  std::string section;
  for (const Binding& b : table.bindings()) {
    if (b.section != section) {
      if (!section.empty()) out << "\n";
      section = b.section;
      out << "[" << section << "]\n";
    }
    out << b.key << " = " << b.get() << "\n";
  }
  return out.str();
}

}  // namespace d3qn::cli

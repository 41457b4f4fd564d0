// Copyright 2026 The Horizon Bench Authors
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

#ifndef HORIZON_CONFIG_H_
#define HORIZON_CONFIG_H_

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "horizon/planner.h"
#include "horizon/task.h"

namespace horizon {

inline constexpr int kConfigVersion = 1;

// One bench-grid cell: a (task, variant, planner, iterations, horizon,
// length) combination run over the config's seeds.
struct BenchCell {
  TaskId task = TaskId::kStand;
  CostVariant variant = CostVariant::kOurs;
  double episode_length_s = 2.0;
  PlannerConfig planner;
};

struct ExperimentConfig {
  TaskId task = TaskId::kStand;
  CostVariant variant = CostVariant::kOurs;
  double episode_length_s = 8.0;
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4, 5};
  std::vector<double> sweep_lengths_s = {2.0, 4.0, 8.0, 12.0, 16.0, 20.0};
  PlannerConfig planner;
  BipedParams model;

  // Task parameters; targets are calibrated from q_star at build time.
  VecU q_star;
  double walk_target_speed = 1.0;
  double init_noise_amplitude = 0.02;
  TerminationRule termination = TerminationRule::kNone;
  RespawnRule respawn = RespawnRule::kNone;
  double success_threshold = 0.05;
  double workspace_lo = 0.4;
  double workspace_hi = 2.0;
  double box_target_x = 1.2;
  double stand_head_min_frac = 0.9;
  double stand_head_margin = 0.4;
  double push_sigma = 0.3;
  double push_hand_sigma = 0.5;

  bool has_cost_override = false;
  CostSpec cost;  // defaults to DefaultCostSpec(task, variant) when not overridden

  std::vector<BenchCell> bench;
};

// Strict parsing: unknown keys or type mismatches raise ConfigError naming
// the offending key path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

ExperimentConfig ParseExperimentConfig(const nlohmann::json& j);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Dotted-key override "a.b.c=value" applied to the raw JSON document before
// validation. Values parse as JSON when possible, else as strings.
void ApplyOverride(nlohmann::json* doc, const std::string& assignment);

// Fully materialized config (all defaults resolved) for report provenance.
nlohmann::json ToJson(const ExperimentConfig& config);

TaskSpec BuildTask(const ExperimentConfig& config);
TaskSpec BuildBenchTask(const ExperimentConfig& config, const BenchCell& cell);

// Serialization of cost specs shared by configs and reports.
nlohmann::json CostSpecToJson(const CostSpec& spec);
CostSpec CostSpecFromJson(const nlohmann::json& j, const std::string& key_path);

}  // namespace horizon

#endif  // HORIZON_CONFIG_H_

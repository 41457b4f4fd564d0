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

#ifndef HORIZON_EVAL_H_
#define HORIZON_EVAL_H_

#include <cstdint>
#include <vector>

#include "horizon/agent.h"
#include "horizon/task.h"

namespace horizon {

struct StepRecord {
  VecN q;
  VecN v;
  double t = 0.0;
  VecU control;
  double reward = 0.0;
  double plan_seconds = 0.0;
};

struct RespawnEvent {
  int step = 0;
  double new_target_x = 0.0;
};

struct EpisodeRecord {
  TaskId task = TaskId::kStand;
  CostVariant variant = CostVariant::kOurs;
  PlannerKind planner = PlannerKind::kIlqg;
  uint64_t seed = 0;
  double length_s = 0.0;
  double control_dt = 0.02;
  int planner_iterations = 0;
  double planner_horizon_s = 0.0;
  std::vector<int> actuated_dofs;

  std::vector<StepRecord> steps;
  std::vector<RespawnEvent> respawns;
  int termination_step = -1;  // -1 = ran to full length
  bool diverged = false;
  int planner_calls = 0;
  int degraded_events = 0;

  int NominalSteps() const;
};

// Seeds the initial state, respawn draws and the agent from `seed`, then runs
// the agent_step / step / reward / termination loop, timing each planning
// call. Divergence truncates the record and flags it.
EpisodeRecord RunEpisode(const TaskSpec& task, const PlannerConfig& planner, double length_s,
                         uint64_t seed);

// Sum of per-step rewards; bounded by step count (1000 for a 20 s episode at
// the 0.02 s control step).
double Score(const EpisodeRecord& record);

// Score / nominal step count; comparable across episode lengths.
double MeanStepReward(const EpisodeRecord& record);

// Average squared actuated-joint velocity, rad^2/s^2.
double Smoothness(const EpisodeRecord& record);

// ----- reports --------------------------------------------------------------

struct SeedSummary {
  uint64_t seed = 0;
  double score = 0.0;
  double mean_step_reward = 0.0;
  double smoothness = 0.0;
  int steps = 0;
  bool diverged = false;
  int termination_step = -1;
  int respawn_count = 0;
  int planner_calls = 0;
  int degraded_events = 0;
  double plan_total_s = 0.0;
  double plan_mean_s = 0.0;
  double plan_min_s = 0.0;
  double plan_max_s = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};

Aggregate AggregateOf(const std::vector<double>& xs);

SeedSummary Summarize(const EpisodeRecord& record);

struct SweepCurve {
  double length_s = 0.0;
  std::vector<SeedSummary> results;
};

struct EvalReport {
  TaskId task = TaskId::kStand;
  CostVariant variant = CostVariant::kOurs;
  PlannerKind planner = PlannerKind::kIlqg;
  int planner_iterations = 0;
  double planner_horizon_s = 0.0;
  double episode_length_s = 0.0;
  double control_dt = 0.02;
  std::vector<uint64_t> seeds;

  std::vector<SeedSummary> results;
  Aggregate score;
  Aggregate smoothness;
  double plan_call_mean_s = 0.0;
  double plan_call_min_s = 0.0;
  double plan_call_max_s = 0.0;
  double plan_episode_mean_s = 0.0;

  std::vector<SweepCurve> sweep;
  // Per-step reward series at the longest sweep length, plus the across-seed
  // median at each step.
  std::vector<std::vector<double>> reward_series;
  std::vector<double> reward_series_median;

  bool AnyDiverged() const;
};

// Runs seeds (in order) and assembles the aggregate report; `jobs` bounds the
// number of episodes in flight, results are reduced in seed order.
EvalReport RunReport(const TaskSpec& task, const PlannerConfig& planner,
                     const std::vector<uint64_t>& seeds, double length_s, int jobs = 1);

// Fig. 3 protocol: per-length score distributions over seeds and the per-step
// reward series for the longest length.
EvalReport RunSweep(const TaskSpec& task, const PlannerConfig& planner,
                    const std::vector<uint64_t>& seeds, const std::vector<double>& lengths_s,
                    int jobs = 1);

// ----- timing ---------------------------------------------------------------

struct TimingRow {
  TaskId task = TaskId::kStand;
  double length_s = 0.0;
  PlannerKind planner = PlannerKind::kIlqg;
  int iterations = 0;
  double horizon_s = 0.0;
  int episodes = 0;
  double inference_time_s = 0.0;  // mean per-episode total planning time
  double call_mean_s = 0.0;
  double call_min_s = 0.0;
  double call_max_s = 0.0;
};

// Groups records by (task, episode length, planner, iterations, horizon).
std::vector<TimingRow> TimingReport(const std::vector<EpisodeRecord>& records);

// ----- comparison -----------------------------------------------------------

struct Comparison {
  TaskId task = TaskId::kStand;
  double length_s = 0.0;
  double score_median_ours = 0.0;
  double score_median_hb = 0.0;
  double score_delta = 0.0;  // ours - hb
  double score_mean_ours = 0.0, score_mean_hb = 0.0;
  double score_std_ours = 0.0, score_std_hb = 0.0;
  double smoothness_mean_ours = 0.0;
  double smoothness_mean_hb = 0.0;
  double smoothness_delta = 0.0;
  bool ours_below_hb = false;
};

// Requires both reports to share task and episode length.
Comparison Compare(const EvalReport& ours, const EvalReport& hb);

}  // namespace horizon

#endif  // HORIZON_EVAL_H_

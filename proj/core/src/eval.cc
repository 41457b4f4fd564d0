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

#include "horizon/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numeric>

namespace horizon {

namespace {

// Decorrelates the respawn and agent streams from the init stream.
constexpr uint64_t kRespawnSalt = 0x9e3779b97f4a7c15ull;
constexpr uint64_t kAgentSalt = 0xbf58476d1ce4e5b9ull;

}  // namespace

int EpisodeRecord::NominalSteps() const {
  return static_cast<int>(std::lround(length_s / control_dt));
}

EpisodeRecord RunEpisode(const TaskSpec& task, const PlannerConfig& planner, double length_s,
                         uint64_t seed) {
  const ModelSpec& model = task.model;
  const double dt = model.control_dt;
  const double steps_frac = length_s / dt;
  if (!(length_s > 0.0) || std::abs(steps_frac - std::lround(steps_frac)) > 1e-9)
    throw ContractViolation("episode length must be a positive multiple of control_dt");
  const int steps = static_cast<int>(std::lround(steps_frac));

  EpisodeRecord record;
  record.task = task.id;
  record.variant = task.variant;
  record.planner = planner.kind;
  record.seed = seed;
  record.length_s = length_s;
  record.control_dt = dt;
  record.planner_iterations = planner.iterations;
  record.planner_horizon_s = planner.horizon_s;
  record.actuated_dofs = model.actuated_dofs;
  record.steps.reserve(steps);

  std::mt19937_64 rng_init(seed);
  std::mt19937_64 rng_respawn(seed ^ kRespawnSalt);

  State state = InitialState(task, rng_init);
  Goal goal = task.InitialGoal();
  TaskCost cost(task, goal);
  Agent agent(model, &cost, planner, seed ^ kAgentSalt);

  for (int step = 0; step < steps; ++step) {
    const auto t0 = std::chrono::steady_clock::now();
    const Agent::StepResult act = agent.Step(state);
    const auto t1 = std::chrono::steady_clock::now();
    const double plan_seconds = std::chrono::duration<double>(t1 - t0).count();

    State next;
    try {
      next = Step(model, state, act.control);
    } catch (const SimulationDiverged&) {
      record.diverged = true;
      break;
    }

    const double reward = HbReward(model, next, act.control, task, goal);
    const TerminationResult term = CheckTerminationAndRespawn(task, next, goal, rng_respawn);
    if (term.respawned) {
      record.respawns.push_back({step, term.goal.box_target_x});
      goal = term.goal;
      cost.SetGoal(goal);
    }

    StepRecord sr;
    sr.q = next.q;
    sr.v = next.v;
    sr.t = next.t;
    sr.control = act.control;
    sr.reward = reward;
    sr.plan_seconds = plan_seconds;
    record.steps.push_back(std::move(sr));

    state = next;
    if (term.terminate) {
      record.termination_step = step;
      break;
    }
  }

  record.planner_calls = agent.planner_calls();
  record.degraded_events = agent.degraded_events();
  return record;
}

double Score(const EpisodeRecord& record) {
  double total = 0.0;
  for (const StepRecord& s : record.steps) total += s.reward;
  return total;
}

double MeanStepReward(const EpisodeRecord& record) {
  const int steps = record.NominalSteps();
  return steps > 0 ? Score(record) / steps : 0.0;
}

double Smoothness(const EpisodeRecord& record) {
  if (record.steps.empty() || record.actuated_dofs.empty()) return 0.0;
  double total = 0.0;
  for (const StepRecord& s : record.steps) {
    double joint_sum = 0.0;
    for (int dof : record.actuated_dofs) joint_sum += s.v(dof) * s.v(dof);
    total += joint_sum / record.actuated_dofs.size();
  }
  return total / record.steps.size();
}

Aggregate AggregateOf(const std::vector<double>& xs) {
  Aggregate a;
  if (xs.empty()) return a;
  const double n = static_cast<double>(xs.size());
  a.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (double x : xs) var += (x - a.mean) * (x - a.mean);
  a.stddev = std::sqrt(var / n);
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const size_t mid = sorted.size() / 2;
  a.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return a;
}

SeedSummary Summarize(const EpisodeRecord& record) {
  SeedSummary s;
  s.seed = record.seed;
  s.score = Score(record);
  s.mean_step_reward = MeanStepReward(record);
  s.smoothness = Smoothness(record);
  s.steps = static_cast<int>(record.steps.size());
  s.diverged = record.diverged;
  s.termination_step = record.termination_step;
  s.respawn_count = static_cast<int>(record.respawns.size());
  s.planner_calls = record.planner_calls;
  s.degraded_events = record.degraded_events;
  if (!record.steps.empty()) {
    s.plan_min_s = record.steps[0].plan_seconds;
    s.plan_max_s = record.steps[0].plan_seconds;
    for (const StepRecord& sr : record.steps) {
      s.plan_total_s += sr.plan_seconds;
      s.plan_min_s = std::min(s.plan_min_s, sr.plan_seconds);
      s.plan_max_s = std::max(s.plan_max_s, sr.plan_seconds);
    }
    s.plan_mean_s = s.plan_total_s / record.steps.size();
  }
  return s;
}

bool EvalReport::AnyDiverged() const {
  for (const SeedSummary& s : results) {
    if (s.diverged) return true;
  }
  for (const SweepCurve& c : sweep) {
    for (const SeedSummary& s : c.results) {
      if (s.diverged) return true;
    }
  }
  return false;
}

namespace {

// Episodes for all seeds, at most `jobs` in flight, reduced in seed order.
std::vector<EpisodeRecord> RunSeeds(const TaskSpec& task, const PlannerConfig& planner,
                                    const std::vector<uint64_t>& seeds, double length_s,
                                    int jobs) {
  std::vector<EpisodeRecord> records(seeds.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < seeds.size(); ++i)
      records[i] = RunEpisode(task, planner, length_s, seeds[i]);
    return records;
  }
  size_t next = 0;
  while (next < seeds.size()) {
    const size_t batch = std::min<size_t>(jobs, seeds.size() - next);
    std::vector<std::future<EpisodeRecord>> futures;
    futures.reserve(batch);
    for (size_t i = 0; i < batch; ++i) {
      const uint64_t seed = seeds[next + i];
      futures.push_back(std::async(std::launch::async, [&task, &planner, length_s, seed] {
        return RunEpisode(task, planner, length_s, seed);
      }));
    }
    for (size_t i = 0; i < batch; ++i) records[next + i] = futures[i].get();
    next += batch;
  }
  return records;
}

void FillHeader(const TaskSpec& task, const PlannerConfig& planner,
                const std::vector<uint64_t>& seeds, double length_s, EvalReport* report) {
  report->task = task.id;
  report->variant = task.variant;
  report->planner = planner.kind;
  report->planner_iterations = planner.iterations;
  report->planner_horizon_s = planner.horizon_s;
  report->episode_length_s = length_s;
  report->control_dt = task.model.control_dt;
  report->seeds = seeds;
}

void FillAggregates(EvalReport* report) {
  std::vector<double> scores, smooths;
  double call_total = 0.0;
  int call_count = 0;
  double total_sum = 0.0;
  report->plan_call_min_s = 0.0;
  report->plan_call_max_s = 0.0;
  bool first = true;
  for (const SeedSummary& s : report->results) {
    scores.push_back(s.score);
    smooths.push_back(s.smoothness);
    total_sum += s.plan_total_s;
    call_total += s.plan_total_s;
    call_count += s.steps;
    if (s.steps > 0) {
      if (first || s.plan_min_s < report->plan_call_min_s)
        report->plan_call_min_s = s.plan_min_s;
      if (first || s.plan_max_s > report->plan_call_max_s)
        report->plan_call_max_s = s.plan_max_s;
      first = false;
    }
  }
  report->score = AggregateOf(scores);
  report->smoothness = AggregateOf(smooths);
  report->plan_call_mean_s = call_count > 0 ? call_total / call_count : 0.0;
  report->plan_episode_mean_s =
      report->results.empty() ? 0.0 : total_sum / report->results.size();
}

}  // namespace

EvalReport RunReport(const TaskSpec& task, const PlannerConfig& planner,
                     const std::vector<uint64_t>& seeds, double length_s, int jobs) {
  EvalReport report;
  FillHeader(task, planner, seeds, length_s, &report);
  const std::vector<EpisodeRecord> records = RunSeeds(task, planner, seeds, length_s, jobs);
  for (const EpisodeRecord& r : records) report.results.push_back(Summarize(r));
  FillAggregates(&report);
  return report;
}

EvalReport RunSweep(const TaskSpec& task, const PlannerConfig& planner,
                    const std::vector<uint64_t>& seeds, const std::vector<double>& lengths_s,
                    int jobs) {
  if (lengths_s.empty()) throw ContractViolation("sweep needs at least one length");
  if (!std::is_sorted(lengths_s.begin(), lengths_s.end()))
    throw ContractViolation("sweep lengths must be ascending");

  EvalReport report;
  FillHeader(task, planner, seeds, lengths_s.back(), &report);

  for (double length : lengths_s) {
    SweepCurve curve;
    curve.length_s = length;
    const std::vector<EpisodeRecord> records = RunSeeds(task, planner, seeds, length, jobs);
    for (const EpisodeRecord& r : records) curve.results.push_back(Summarize(r));
    if (length == lengths_s.back()) {
      // Per-step reward series for the longest length.
      const int steps = records.empty() ? 0 : records[0].NominalSteps();
      report.reward_series.resize(records.size());
      for (size_t i = 0; i < records.size(); ++i) {
        report.reward_series[i].assign(steps, 0.0);
        for (int t = 0; t < static_cast<int>(records[i].steps.size()); ++t)
          report.reward_series[i][t] = records[i].steps[t].reward;
      }
      report.reward_series_median.resize(steps);
      std::vector<double> column(records.size());
      for (int t = 0; t < steps; ++t) {
        for (size_t i = 0; i < records.size(); ++i) column[i] = report.reward_series[i][t];
        report.reward_series_median[t] = AggregateOf(column).median;
      }
      report.results = curve.results;
    }
    report.sweep.push_back(std::move(curve));
  }
  FillAggregates(&report);
  return report;
}

std::vector<TimingRow> TimingReport(const std::vector<EpisodeRecord>& records) {
  std::vector<TimingRow> rows;
  for (const EpisodeRecord& r : records) {
    TimingRow* row = nullptr;
    for (TimingRow& existing : rows) {
      if (existing.task == r.task && existing.length_s == r.length_s &&
          existing.planner == r.planner && existing.iterations == r.planner_iterations &&
          existing.horizon_s == r.planner_horizon_s) {
        row = &existing;
        break;
      }
    }
    if (row == nullptr) {
      rows.push_back({});
      row = &rows.back();
      row->task = r.task;
      row->length_s = r.length_s;
      row->planner = r.planner;
      row->iterations = r.planner_iterations;
      row->horizon_s = r.planner_horizon_s;
      row->call_min_s = r.steps.empty() ? 0.0 : r.steps[0].plan_seconds;
      row->call_max_s = row->call_min_s;
    }
    const SeedSummary s = Summarize(r);
    // Running mean of per-episode total inference time.
    row->inference_time_s =
        (row->inference_time_s * row->episodes + s.plan_total_s) / (row->episodes + 1);
    row->episodes += 1;
    if (s.steps > 0) {
      row->call_min_s = std::min(row->call_min_s, s.plan_min_s);
      row->call_max_s = std::max(row->call_max_s, s.plan_max_s);
    }
  }
  // Second pass for the per-call mean (total time / total calls).
  for (TimingRow& row : rows) {
    double total = 0.0;
    int calls = 0;
    for (const EpisodeRecord& r : records) {
      if (row.task == r.task && row.length_s == r.length_s && row.planner == r.planner &&
          row.iterations == r.planner_iterations && row.horizon_s == r.planner_horizon_s) {
        for (const StepRecord& s : r.steps) {
          total += s.plan_seconds;
          ++calls;
        }
      }
    }
    row.call_mean_s = calls > 0 ? total / calls : 0.0;
  }
  return rows;
}

Comparison Compare(const EvalReport& ours, const EvalReport& hb) {
  if (ours.task != hb.task || ours.episode_length_s != hb.episode_length_s)
    throw ContractViolation("compared reports must share task and episode length");
  Comparison c;
  c.task = ours.task;
  c.length_s = ours.episode_length_s;
  c.score_median_ours = ours.score.median;
  c.score_median_hb = hb.score.median;
  c.score_delta = ours.score.median - hb.score.median;
  c.score_mean_ours = ours.score.mean;
  c.score_mean_hb = hb.score.mean;
  c.score_std_ours = ours.score.stddev;
  c.score_std_hb = hb.score.stddev;
  c.smoothness_mean_ours = ours.smoothness.mean;
  c.smoothness_mean_hb = hb.smoothness.mean;
  c.smoothness_delta = ours.smoothness.mean - hb.smoothness.mean;
  c.ours_below_hb = c.score_delta < 0.0;
  return c;
}

}  // namespace horizon

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

#include "horizon/report_io.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace horizon {

using nlohmann::json;

std::string FormatDouble(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, target);
}

namespace {

json SummaryToJson(const SeedSummary& s) {
  return json{{"seed", s.seed},
              {"score", s.score},
              {"mean_step_reward", s.mean_step_reward},
              {"smoothness", s.smoothness},
              {"steps", s.steps},
              {"diverged", s.diverged},
              {"termination_step", s.termination_step},
              {"respawn_count", s.respawn_count},
              {"planner_calls", s.planner_calls},
              {"degraded_events", s.degraded_events},
              {"plan_total_s", s.plan_total_s},
              {"plan_mean_s", s.plan_mean_s},
              {"plan_min_s", s.plan_min_s},
              {"plan_max_s", s.plan_max_s}};
}

SeedSummary SummaryFromJson(const json& j) {
  SeedSummary s;
  s.seed = j.at("seed").get<uint64_t>();
  s.score = j.at("score").get<double>();
  s.mean_step_reward = j.at("mean_step_reward").get<double>();
  s.smoothness = j.at("smoothness").get<double>();
  s.steps = j.at("steps").get<int>();
  s.diverged = j.at("diverged").get<bool>();
  s.termination_step = j.at("termination_step").get<int>();
  s.respawn_count = j.at("respawn_count").get<int>();
  s.planner_calls = j.at("planner_calls").get<int>();
  s.degraded_events = j.at("degraded_events").get<int>();
  s.plan_total_s = j.at("plan_total_s").get<double>();
  s.plan_mean_s = j.at("plan_mean_s").get<double>();
  s.plan_min_s = j.at("plan_min_s").get<double>();
  s.plan_max_s = j.at("plan_max_s").get<double>();
  return s;
}

json AggregateToJson(const Aggregate& a) {
  return json{{"mean", a.mean}, {"median", a.median}, {"stddev", a.stddev}};
}

}  // namespace

json ReportToJson(const EvalReport& report, const json& resolved_config) {
  json j;
  j["schema"] = kReportSchema;
  j["task"] = ToString(report.task);
  j["variant"] = ToString(report.variant);
  j["planner"] = ToString(report.planner);
  j["planner_iterations"] = report.planner_iterations;
  j["planner_horizon_s"] = report.planner_horizon_s;
  j["episode_length_s"] = report.episode_length_s;
  j["control_dt"] = report.control_dt;
  j["seeds"] = report.seeds;
  j["config"] = resolved_config;

  j["results"] = json::array();
  for (const SeedSummary& s : report.results) j["results"].push_back(SummaryToJson(s));
  j["score"] = AggregateToJson(report.score);
  j["smoothness"] = AggregateToJson(report.smoothness);
  j["timing"] = {{"call_mean_s", report.plan_call_mean_s},
                 {"call_min_s", report.plan_call_min_s},
                 {"call_max_s", report.plan_call_max_s},
                 {"episode_mean_s", report.plan_episode_mean_s}};

  if (!report.sweep.empty()) {
    j["sweep"] = json::array();
    for (const SweepCurve& c : report.sweep) {
      json curve;
      curve["length_s"] = c.length_s;
      curve["results"] = json::array();
      for (const SeedSummary& s : c.results) curve["results"].push_back(SummaryToJson(s));
      j["sweep"].push_back(curve);
    }
  }
  if (!report.reward_series.empty()) {
    j["reward_series"] = report.reward_series;
    j["reward_series_median"] = report.reward_series_median;
  }
  return j;
}

json LoadReportJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report: " + path);
  json j;
  in >> j;
  return j;
}

EvalReport LoadReport(const std::string& path) {
  const json j = LoadReportJson(path);
  if (j.value("schema", "") != kReportSchema)
    throw ContractViolation("unexpected report schema in " + path);

  EvalReport report;
  report.task = TaskIdFromString(j.at("task").get<std::string>());
  report.variant = VariantFromString(j.at("variant").get<std::string>());
  report.planner = PlannerKindFromString(j.at("planner").get<std::string>());
  report.planner_iterations = j.at("planner_iterations").get<int>();
  report.planner_horizon_s = j.at("planner_horizon_s").get<double>();
  report.episode_length_s = j.at("episode_length_s").get<double>();
  report.control_dt = j.at("control_dt").get<double>();
  report.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  for (const json& r : j.at("results")) report.results.push_back(SummaryFromJson(r));
  if (j.contains("sweep")) {
    for (const json& c : j.at("sweep")) {
      SweepCurve curve;
      curve.length_s = c.at("length_s").get<double>();
      for (const json& r : c.at("results")) curve.results.push_back(SummaryFromJson(r));
      report.sweep.push_back(std::move(curve));
    }
  }
  if (j.contains("reward_series")) {
    report.reward_series = j.at("reward_series").get<std::vector<std::vector<double>>>();
    report.reward_series_median = j.at("reward_series_median").get<std::vector<double>>();
  }

  // Stored aggregates must be recomputable from the per-seed entries.
  std::vector<double> scores, smooths;
  for (const SeedSummary& s : report.results) {
    scores.push_back(s.score);
    smooths.push_back(s.smoothness);
  }
  const Aggregate score = AggregateOf(scores);
  const Aggregate smooth = AggregateOf(smooths);
  const json& sj = j.at("score");
  const json& mj = j.at("smoothness");
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  if (!close(score.mean, sj.at("mean").get<double>()) ||
      !close(score.median, sj.at("median").get<double>()) ||
      !close(score.stddev, sj.at("stddev").get<double>()) ||
      !close(smooth.mean, mj.at("mean").get<double>()) ||
      !close(smooth.median, mj.at("median").get<double>()) ||
      !close(smooth.stddev, mj.at("stddev").get<double>()))
    throw ContractViolation("report aggregates are not self-consistent: " + path);
  report.score = score;
  report.smoothness = smooth;
  report.plan_call_mean_s = j.at("timing").at("call_mean_s").get<double>();
  report.plan_call_min_s = j.at("timing").at("call_min_s").get<double>();
  report.plan_call_max_s = j.at("timing").at("call_max_s").get<double>();
  report.plan_episode_mean_s = j.at("timing").at("episode_mean_s").get<double>();
  return report;
}

namespace {

void AppendSummaryRow(std::ostringstream& out, const EvalReport& report, const SeedSummary& s,
                      double length_s) {
  out << ToString(report.task) << ',' << ToString(report.variant) << ','
      << ToString(report.planner) << ',' << s.seed << ',' << FormatDouble(length_s) << ','
      << FormatDouble(s.score) << ',' << FormatDouble(s.mean_step_reward) << '\n';
}

}  // namespace

std::string ScoresCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "task,variant,planner,seed,length_s,score,mean_step_reward\n";
  for (const SeedSummary& s : report.results)
    AppendSummaryRow(out, report, s, report.episode_length_s);
  return out.str();
}

std::string SmoothnessCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "task,variant,planner,seed,length_s,smoothness\n";
  for (const SeedSummary& s : report.results) {
    out << ToString(report.task) << ',' << ToString(report.variant) << ','
        << ToString(report.planner) << ',' << s.seed << ','
        << FormatDouble(report.episode_length_s) << ',' << FormatDouble(s.smoothness) << '\n';
  }
  return out.str();
}

std::string TimingCsv(const std::vector<TimingRow>& rows) {
  std::ostringstream out;
  out << "task,length_s,planner,iterations,horizon_s,inference_time_s\n";
  for (const TimingRow& r : rows) {
    out << ToString(r.task) << ',' << FormatDouble(r.length_s) << ',' << ToString(r.planner)
        << ',' << r.iterations << ',' << FormatDouble(r.horizon_s) << ','
        << FormatDouble(r.inference_time_s) << '\n';
  }
  return out.str();
}

std::string SweepCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "task,variant,planner,seed,length_s,score,mean_step_reward\n";
  for (const SweepCurve& c : report.sweep) {
    for (const SeedSummary& s : c.results) AppendSummaryRow(out, report, s, c.length_s);
  }
  return out.str();
}

std::string RewardSeriesCsv(const EvalReport& report) {
  std::ostringstream out;
  out << "task,variant,planner,seed,step,time_s,reward\n";
  for (size_t i = 0; i < report.reward_series.size(); ++i) {
    const uint64_t seed = i < report.seeds.size() ? report.seeds[i] : i;
    for (size_t t = 0; t < report.reward_series[i].size(); ++t) {
      out << ToString(report.task) << ',' << ToString(report.variant) << ','
          << ToString(report.planner) << ',' << seed << ',' << t << ','
          << FormatDouble((t + 1) * report.control_dt) << ','
          << FormatDouble(report.reward_series[i][t]) << '\n';
    }
  }
  return out.str();
}

json ComparisonToJson(const Comparison& c) {
  return json{{"task", ToString(c.task)},
              {"length_s", c.length_s},
              {"score_median_ours", c.score_median_ours},
              {"score_median_hb", c.score_median_hb},
              {"score_delta", c.score_delta},
              {"score_mean_ours", c.score_mean_ours},
              {"score_mean_hb", c.score_mean_hb},
              {"score_std_ours", c.score_std_ours},
              {"score_std_hb", c.score_std_hb},
              {"smoothness_mean_ours", c.smoothness_mean_ours},
              {"smoothness_mean_hb", c.smoothness_mean_hb},
              {"smoothness_delta", c.smoothness_delta},
              {"ours_below_hb", c.ours_below_hb}};
}

}  // namespace horizon

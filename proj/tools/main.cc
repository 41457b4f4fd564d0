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

// horizon: batch front end for the MPC workbench.
//   run      episodes for one (task, variant, planner) config
//   sweep    episode-length sweep with per-step reward series
//   compare  two reports, Table-style console output
//   bench    planner timing grid

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "horizon/config.h"
#include "horizon/eval.h"
#include "horizon/report_io.h"

namespace {

using horizon::BenchCell;
using horizon::Comparison;
using horizon::ConfigError;
using horizon::EvalReport;
using horizon::ExperimentConfig;
using horizon::TimingRow;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  int jobs = 1;
  bool strict = false;
  long long seed_offset = 0;
};

ExperimentConfig LoadConfigWithOverrides(const GlobalOpts& opts) {
  std::ifstream in(opts.config_path);
  if (!in) throw ConfigError("cannot open config: " + opts.config_path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(opts.config_path + ": " + e.what());
  }
  for (const std::string& assignment : opts.overrides) horizon::ApplyOverride(&doc, assignment);
  ExperimentConfig config = horizon::ParseExperimentConfig(doc);
  if (opts.seed_offset != 0) {
    for (uint64_t& s : config.seeds) s += static_cast<uint64_t>(opts.seed_offset);
  }
  return config;
}

TimingRow RowFromReport(const EvalReport& report) {
  TimingRow row;
  row.task = report.task;
  row.length_s = report.episode_length_s;
  row.planner = report.planner;
  row.iterations = report.planner_iterations;
  row.horizon_s = report.planner_horizon_s;
  row.episodes = static_cast<int>(report.results.size());
  row.inference_time_s = report.plan_episode_mean_s;
  row.call_mean_s = report.plan_call_mean_s;
  row.call_min_s = report.plan_call_min_s;
  row.call_max_s = report.plan_call_max_s;
  return row;
}

void PrintReportSummary(const EvalReport& report) {
  std::printf("%-6s %-5s %-9s  score %8.2f +- %-8.2f median %8.2f  smoothness %8.4f\n",
              horizon::ToString(report.task).c_str(),
              horizon::ToString(report.variant).c_str(),
              horizon::ToString(report.planner).c_str(), report.score.mean,
              report.score.stddev, report.score.median, report.smoothness.mean);
}

int CmdRun(const GlobalOpts& opts) {
  const ExperimentConfig config = LoadConfigWithOverrides(opts);
  const horizon::TaskSpec task = horizon::BuildTask(config);
  const EvalReport report = horizon::RunReport(task, config.planner, config.seeds,
                                               config.episode_length_s, opts.jobs);
  const json resolved = horizon::ToJson(config);
  horizon::WriteFileAtomic(opts.out_dir + "/report.json",
                           horizon::ReportToJson(report, resolved).dump(2) + "\n");
  horizon::WriteFileAtomic(opts.out_dir + "/scores.csv", horizon::ScoresCsv(report));
  horizon::WriteFileAtomic(opts.out_dir + "/smoothness.csv", horizon::SmoothnessCsv(report));
  horizon::WriteFileAtomic(opts.out_dir + "/timing.csv",
                           horizon::TimingCsv({RowFromReport(report)}));
  PrintReportSummary(report);
  if (opts.strict && report.AnyDiverged()) {
    std::cerr << "strict: at least one episode diverged\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdSweep(const GlobalOpts& opts) {
  const ExperimentConfig config = LoadConfigWithOverrides(opts);
  const horizon::TaskSpec task = horizon::BuildTask(config);
  const EvalReport report = horizon::RunSweep(task, config.planner, config.seeds,
                                              config.sweep_lengths_s, opts.jobs);
  const json resolved = horizon::ToJson(config);
  horizon::WriteFileAtomic(opts.out_dir + "/report.json",
                           horizon::ReportToJson(report, resolved).dump(2) + "\n");
  horizon::WriteFileAtomic(opts.out_dir + "/sweep.csv", horizon::SweepCsv(report));
  horizon::WriteFileAtomic(opts.out_dir + "/reward_series.csv",
                           horizon::RewardSeriesCsv(report));
  for (const horizon::SweepCurve& curve : report.sweep) {
    std::vector<double> scores;
    for (const auto& s : curve.results) scores.push_back(s.score);
    const horizon::Aggregate agg = horizon::AggregateOf(scores);
    std::printf("length %5.1f s  score %8.2f +- %-8.2f median %8.2f\n", curve.length_s,
                agg.mean, agg.stddev, agg.median);
  }
  if (opts.strict && report.AnyDiverged()) {
    std::cerr << "strict: at least one episode diverged\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdCompare(const std::string& path_ours, const std::string& path_hb,
               const std::string& out_dir) {
  const EvalReport ours = horizon::LoadReport(path_ours);
  const EvalReport hb = horizon::LoadReport(path_hb);
  const Comparison c = horizon::Compare(ours, hb);
  horizon::WriteFileAtomic(out_dir + "/comparison.json",
                           horizon::ComparisonToJson(c).dump(2) + "\n");

  std::printf("%-8s | %-21s | %-21s\n", "task", "ours", "hb");
  std::printf("---------+-----------------------+----------------------\n");
  std::printf("%-8s | score %7.2f +- %-6.2f | score %7.2f +- %-6.2f\n",
              horizon::ToString(c.task).c_str(), c.score_mean_ours, c.score_std_ours,
              c.score_mean_hb, c.score_std_hb);
  std::printf("%-8s | smooth %6.4f          | smooth %6.4f\n", "",
              c.smoothness_mean_ours, c.smoothness_mean_hb);
  if (c.ours_below_hb)
    std::printf("note: ours scored below hb on %s\n", horizon::ToString(c.task).c_str());
  return kExitOk;
}

int CmdBench(const GlobalOpts& opts) {
  const ExperimentConfig config = LoadConfigWithOverrides(opts);
  if (config.bench.empty()) throw ConfigError("bench: config has no bench grid");

  std::vector<TimingRow> rows;
  json cells = json::array();
  for (const BenchCell& cell : config.bench) {
    const horizon::TaskSpec task = horizon::BuildBenchTask(config, cell);
    const EvalReport report = horizon::RunReport(task, cell.planner, config.seeds,
                                                 cell.episode_length_s, opts.jobs);
    rows.push_back(RowFromReport(report));
    json cj;
    cj["task"] = horizon::ToString(cell.task);
    cj["variant"] = horizon::ToString(cell.variant);
    cj["episode_length_s"] = cell.episode_length_s;
    cj["planner"] = horizon::ToString(cell.planner.kind);
    cj["iterations"] = cell.planner.iterations;
    cj["horizon_s"] = cell.planner.horizon_s;
    cj["inference_time_s"] = report.plan_episode_mean_s;
    cj["call_mean_s"] = report.plan_call_mean_s;
    json calls = json::array();
    for (const auto& s : report.results) calls.push_back(s.planner_calls);
    cj["planner_calls"] = calls;
    cells.push_back(cj);
    std::printf("%-6s %5.1f s  %-9s iter %3d  horizon %5.2f s  inference %9.3f s\n",
                horizon::ToString(cell.task).c_str(), cell.episode_length_s,
                horizon::ToString(cell.planner.kind).c_str(), cell.planner.iterations,
                cell.planner.horizon_s, report.plan_episode_mean_s);
  }
  horizon::WriteFileAtomic(opts.out_dir + "/timing.csv", horizon::TimingCsv(rows));
  json out;
  out["schema"] = "horizon-bench/bench/v1";
  out["config"] = horizon::ToJson(config);
  out["cells"] = cells;
  horizon::WriteFileAtomic(opts.out_dir + "/bench.json", out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horizon: planar-biped MPC workbench"};
  app.require_subcommand(1);

  GlobalOpts opts;
  std::string compare_a, compare_b;

  auto add_common = [&opts](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--set", opts.overrides, "override, dotted.key=value (repeatable)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--jobs", opts.jobs, "parallel episodes");
    cmd->add_flag("--strict", opts.strict, "exit nonzero on diverged episodes");
    cmd->add_option("--seed-offset", opts.seed_offset, "added to every seed");
  };

  CLI::App* run = app.add_subcommand("run", "run episodes and write report + CSVs");
  add_common(run, true);
  CLI::App* sweep = app.add_subcommand("sweep", "episode-length sweep");
  add_common(sweep, true);
  CLI::App* bench = app.add_subcommand("bench", "planner timing grid");
  add_common(bench, true);
  CLI::App* compare = app.add_subcommand("compare", "compare two reports (ours vs hb)");
  compare->add_option("ours", compare_a, "report.json for the shaped controller")->required();
  compare->add_option("hb", compare_b, "report.json for the hb controller")->required();
  compare->add_option("--out", opts.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return CmdRun(opts);
    if (sweep->parsed()) return CmdSweep(opts);
    if (bench->parsed()) return CmdBench(opts);
    if (compare->parsed()) return CmdCompare(compare_a, compare_b, opts.out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const horizon::ContractViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

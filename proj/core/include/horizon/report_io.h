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

#ifndef HORIZON_REPORT_IO_H_
#define HORIZON_REPORT_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "horizon/eval.h"

namespace horizon {

inline constexpr const char* kReportSchema = "horizon-bench/report/v1";

// Serialized report, schema "horizon-bench/report/v1", with the resolved
// experiment config embedded for provenance.
nlohmann::json ReportToJson(const EvalReport& report, const nlohmann::json& resolved_config);

// Parses and re-derives the aggregates from the per-seed entries; mismatches
// beyond 1e-12 raise ContractViolation.
EvalReport LoadReport(const std::string& path);
nlohmann::json LoadReportJson(const std::string& path);

// Write-temp-then-rename; creates parent directories.
void WriteFileAtomic(const std::string& path, const std::string& contents);

// Shortest round-trip decimal formatting, locale-free.
std::string FormatDouble(double x);

// CSV emitters. Column orders are fixed:
//   scores.csv        task,variant,planner,seed,length_s,score,mean_step_reward
//   smoothness.csv    task,variant,planner,seed,length_s,smoothness
//   timing.csv        task,length_s,planner,iterations,horizon_s,inference_time_s
//   sweep.csv         task,variant,planner,seed,length_s,score,mean_step_reward
//   reward_series.csv task,variant,planner,seed,step,time_s,reward
std::string ScoresCsv(const EvalReport& report);
std::string SmoothnessCsv(const EvalReport& report);
std::string TimingCsv(const std::vector<TimingRow>& rows);
std::string SweepCsv(const EvalReport& report);
std::string RewardSeriesCsv(const EvalReport& report);

nlohmann::json ComparisonToJson(const Comparison& c);

}  // namespace horizon

#endif  // HORIZON_REPORT_IO_H_

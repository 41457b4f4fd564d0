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

#ifndef HORIZON_AGENT_H_
#define HORIZON_AGENT_H_

#include <random>

#include "horizon/planner.h"

namespace horizon {

// Receding-horizon controller: each control step it time-shifts the previous
// plan by one step, replans with the configured planner, and emits the first
// interpolated control (plus state feedback for iLQG plans).
class Agent {
 public:
  Agent(const ModelSpec& model, const CostFunction* cost, const PlannerConfig& config,
        uint64_t seed);

  struct StepResult {
    ControlVector control;
    bool degraded = false;
  };

  StepResult Step(const State& state);
  void Reset();

  int planner_calls() const { return planner_calls_; }
  int degraded_events() const { return degraded_events_; }
  const Plan& plan() const { return plan_; }

 private:
  const ModelSpec* model_;
  const CostFunction* cost_;
  PlannerConfig config_;
  Plan plan_;
  std::mt19937_64 rng_;
  uint64_t seed_;
  int planner_calls_ = 0;
  int degraded_events_ = 0;
};

}  // namespace horizon

#endif  // HORIZON_AGENT_H_

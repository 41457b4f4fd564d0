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

#include "horizon/agent.h"

namespace horizon {

namespace {

Eigen::VectorXd StackState(const State& s) {
  const int n = static_cast<int>(s.q.size());
  Eigen::VectorXd x(2 * n);
  x.head(n) = s.q;
  x.tail(n) = s.v;
  return x;
}

}  // namespace

Agent::Agent(const ModelSpec& model, const CostFunction* cost, const PlannerConfig& config,
             uint64_t seed)
    : model_(&model), cost_(cost), config_(config), seed_(seed) {
  config_.Validate();
  Reset();
}

void Agent::Reset() {
  const int knot_count = config_.kind == PlannerKind::kIlqg
                             ? config_.HorizonSteps(model_->control_dt) + 1
                             : config_.knots;
  plan_ = ZeroPlan(model_->nu(), knot_count, config_.horizon_s);
  rng_.seed(seed_);
  planner_calls_ = 0;
  degraded_events_ = 0;
}

Agent::StepResult Agent::Step(const State& state) {
  const Plan warm = plan_.Shifted(model_->control_dt);

  Plan next;
  if (config_.kind == PlannerKind::kIlqg) {
    next = IlqgPlan(*model_, *cost_, state, warm, config_);
  } else {
    next = SamplingPlan(*model_, *cost_, state, warm, config_, rng_);
  }
  ++planner_calls_;
  if (next.degraded) ++degraded_events_;

  StepResult out;
  out.degraded = next.degraded;
  out.control = next.Sample(0.0);
  if (!next.ilqg.empty() && !next.ilqg[0].gains.empty()) {
    const Eigen::VectorXd dx = StackState(state) - next.ilqg[0].nominal_states[0];
    const Eigen::VectorXd du = next.ilqg[0].gains[0] * dx;
    out.control += du;
  }
  out.control = ClampControl(*model_, out.control);

  plan_ = std::move(next);
  return out;
}

}  // namespace horizon

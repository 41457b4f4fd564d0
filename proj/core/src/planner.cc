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

#include "horizon/planner.h"

#include <cmath>

namespace horizon {

PlannerKind PlannerKindFromString(const std::string& s) {
  if (s == "ilqg") return PlannerKind::kIlqg;
  if (s == "sampling") return PlannerKind::kSampling;
  throw ContractViolation("unknown planner kind: " + s);
}

std::string ToString(PlannerKind kind) {
  return kind == PlannerKind::kIlqg ? "ilqg" : "sampling";
}

int PlannerConfig::HorizonSteps(double control_dt) const {
  const int steps = static_cast<int>(std::lround(horizon_s / control_dt));
  if (steps < 1) throw ContractViolation("planning horizon shorter than one control step");
  return steps;
}

void PlannerConfig::Validate() const {
  if (!(horizon_s > 0.0)) throw ContractViolation("planning horizon must be positive");
  if (iterations < 1) throw ContractViolation("iterations must be >= 1");
  if (candidates < 2) throw ContractViolation("sampling needs >= 2 candidates");
  if (knots < 2) throw ContractViolation("sampling needs >= 2 knots");
  if (noise_scale < 0.0) throw ContractViolation("negative noise scale");
  if (!(lambda_init > 0.0) || !(lambda_scale > 1.0) || !(lambda_max > lambda_init))
    throw ContractViolation("invalid regularization schedule");
}

RolloutResult Rollout(const ModelSpec& model, const CostFunction& cost, const State& initial,
                      const Plan& plan) {
  plan.Validate();
  const int steps = static_cast<int>(std::lround(plan.horizon_s / model.control_dt));
  if (steps < 1) throw ContractViolation("plan horizon shorter than one control step");

  RolloutResult out;
  out.states.reserve(steps + 1);
  out.states.push_back(initial);
  double total = 0.0;
  for (int t = 0; t < steps; ++t) {
    const ControlVector u = ClampControl(model, plan.Sample(t * model.control_dt));
    total += cost.Eval(out.states.back(), u);
    try {
      out.states.push_back(Step(model, out.states.back(), u));
    } catch (const SimulationDiverged&) {
      out.diverged = true;
      return out;  // cost stays +inf
    }
  }
  total += cost.Terminal(out.states.back());
  if (!std::isfinite(total)) {
    out.diverged = true;
    return out;
  }
  out.cost = total;
  return out;
}

}  // namespace horizon

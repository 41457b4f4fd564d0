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

#ifndef HORIZON_PLANNER_H_
#define HORIZON_PLANNER_H_

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "horizon/cost.h"
#include "horizon/dynamics.h"
#include "horizon/plan.h"

namespace horizon {

enum class PlannerKind { kIlqg, kSampling };

PlannerKind PlannerKindFromString(const std::string& s);
std::string ToString(PlannerKind kind);

struct PlannerConfig {
  PlannerKind kind = PlannerKind::kIlqg;
  double horizon_s = 0.35;
  int iterations = 10;

  // iLQG regularization and line search.
  double lambda_init = 1e-6;
  double lambda_scale = 10.0;
  double lambda_max = 1e10;
  int line_search_steps = 11;  // backtracking alphas 1, 1/2, ..., 2^-10

  // Predictive sampling.
  int candidates = 24;
  double noise_scale = 0.1;  // fraction of the actuator range
  int knots = 5;

  int HorizonSteps(double control_dt) const;
  void Validate() const;
};

struct RolloutResult {
  std::vector<State> states;  // horizon steps + 1, initial state included
  double cost = std::numeric_limits<double>::infinity();
  bool diverged = false;
};

// Steps the model under the interpolated plan and accumulates the running
// cost plus the terminal-state cost. Divergence yields cost = +inf.
RolloutResult Rollout(const ModelSpec& model, const CostFunction& cost, const State& initial,
                      const Plan& plan);

struct IlqgStats {
  double initial_cost = 0.0;
  std::vector<double> accepted_costs;  // strictly decreasing by construction
  int iterations_run = 0;
};

// One receding-horizon iLQG solve: config.iterations outer iterations of
// linearize / Gauss-Newton expansion / regularized backward pass / line
// search, accepting only strict cost decreases.
Plan IlqgPlan(const ModelSpec& model, const CostFunction& cost, const State& state,
              const Plan& warm_start, const PlannerConfig& config, IlqgStats* stats = nullptr);

// Predictive sampling: the nominal plus Gaussian knot perturbations, keeping
// the argmin-cost candidate per iteration (ties broken by candidate index).
Plan SamplingPlan(const ModelSpec& model, const CostFunction& cost, const State& state,
                  const Plan& nominal, const PlannerConfig& config, std::mt19937_64& rng);

}  // namespace horizon

#endif  // HORIZON_PLANNER_H_

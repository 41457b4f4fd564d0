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

#include <cmath>

#include "horizon/planner.h"

namespace horizon {

namespace {

void ClampKnots(const ModelSpec& model, Eigen::MatrixXd* knots) {
  for (int i = 0; i < model.nu(); ++i) {
    const double lim = model.actuator_limits[i];
    for (int k = 0; k < knots->cols(); ++k)
      (*knots)(i, k) = std::clamp((*knots)(i, k), -lim, lim);
  }
}

}  // namespace

Plan SamplingPlan(const ModelSpec& model, const CostFunction& cost, const State& state,
                  const Plan& nominal, const PlannerConfig& config, std::mt19937_64& rng) {
  config.Validate();
  nominal.Validate();
  if (nominal.KnotCount() != config.knots ||
      std::abs(nominal.horizon_s - config.horizon_s) > 1e-9)
    throw ContractViolation("nominal plan does not match planner config");

  std::normal_distribution<double> gauss(0.0, 1.0);

  Plan incumbent = nominal;
  ClampKnots(model, &incumbent.knots);
  double incumbent_cost = Rollout(model, cost, state, incumbent).cost;

  Plan candidate = incumbent;
  for (int iter = 0; iter < config.iterations; ++iter) {
    // Candidate 0 is the iteration's nominal; the argmin over (cost, index)
    // becomes the next nominal, so ties keep the incumbent.
    Eigen::MatrixXd best_knots = incumbent.knots;
    double best_cost = incumbent_cost;
    for (int c = 1; c < config.candidates; ++c) {
      candidate.knots = incumbent.knots;
      for (int k = 0; k < candidate.knots.cols(); ++k) {
        for (int i = 0; i < model.nu(); ++i) {
          const double sigma = config.noise_scale * 2.0 * model.actuator_limits[i];
          candidate.knots(i, k) += sigma * gauss(rng);
        }
      }
      ClampKnots(model, &candidate.knots);
      const double c_cost = Rollout(model, cost, state, candidate).cost;
      if (c_cost < best_cost) {
        best_knots = candidate.knots;
        best_cost = c_cost;
      }
    }
    incumbent.knots = best_knots;
    incumbent_cost = best_cost;
  }

  if (!std::isfinite(incumbent_cost)) {
    Plan out = nominal;
    out.degraded = true;
    return out;
  }
  return incumbent;
}

}  // namespace horizon

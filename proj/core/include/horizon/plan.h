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

#ifndef HORIZON_PLAN_H_
#define HORIZON_PLAN_H_

#include <vector>

#include "horizon/types.h"

namespace horizon {

// Feedback data attached to plans produced by the iLQG planner: the nominal
// [q; v] trajectory and the time-varying gains of the accepted backward pass.
struct IlqgData {
  std::vector<Eigen::VectorXd> nominal_states;  // N + 1 stacked [q; v]
  std::vector<Eigen::MatrixXd> gains;           // N, control-dim x state-dim
};

// Knot-parameterized control trajectory: uniform knot times spanning
// [0, horizon], piecewise-linear interpolation.
struct Plan {
  double horizon_s = 0.0;
  Eigen::MatrixXd knots;  // control-dim x knot-count
  std::vector<IlqgData> ilqg;  // empty, or one entry when produced by iLQG
  bool degraded = false;

  int KnotCount() const { return static_cast<int>(knots.cols()); }
  double KnotSpacing() const { return horizon_s / (KnotCount() - 1); }

  VecU Sample(double t) const;

  // Time-shift by dt: knot i takes the value at t_i + dt, the tail holds the
  // final value. Feedback data does not survive a shift.
  Plan Shifted(double dt) const;

  void Validate() const;
};

Plan ZeroPlan(int control_dim, int knot_count, double horizon_s);

}  // namespace horizon

#endif  // HORIZON_PLAN_H_

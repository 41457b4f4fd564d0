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

#include "horizon/plan.h"

#include <algorithm>
#include <cmath>

namespace horizon {

void Plan::Validate() const {
  if (!(horizon_s > 0.0)) throw ContractViolation("plan horizon must be positive");
  if (KnotCount() < 2) throw ContractViolation("plan needs at least two knots");
  if (!knots.allFinite()) throw ContractViolation("plan knots must be finite");
}

VecU Plan::Sample(double t) const {
  const int k = KnotCount();
  const double spacing = KnotSpacing();
  const double clamped = std::clamp(t, 0.0, horizon_s);
  const double pos = clamped / spacing;
  const int lo = std::min(static_cast<int>(pos), k - 2);
  const double frac = pos - lo;
  return knots.col(lo) * (1.0 - frac) + knots.col(lo + 1) * frac;
}

Plan Plan::Shifted(double dt) const {
  Plan out;
  out.horizon_s = horizon_s;
  out.knots.resize(knots.rows(), KnotCount());
  const double spacing = KnotSpacing();
  for (int i = 0; i < KnotCount(); ++i) out.knots.col(i) = Sample(i * spacing + dt);
  return out;
}

Plan ZeroPlan(int control_dim, int knot_count, double horizon_s) {
  Plan plan;
  plan.horizon_s = horizon_s;
  plan.knots = Eigen::MatrixXd::Zero(control_dim, knot_count);
  return plan;
}

}  // namespace horizon

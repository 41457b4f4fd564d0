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

#ifndef HORIZON_NORMS_H_
#define HORIZON_NORMS_H_

#include <string>

#include "horizon/types.h"

namespace horizon {

// Twice-differentiable scalar norms with n(0) = 0, mapping signed residuals
// to non-negative costs.
//   smooth-abs: sqrt(x^2 + p^2) - p  (p > 0 controls the corner rounding)
//   quadratic:  0.5 x^2
enum class NormKind { kSmoothAbs, kQuadratic };

struct Norm {
  NormKind kind = NormKind::kQuadratic;
  double p = 0.1;  // smooth-abs smoothing; unused for quadratic
};

struct NormValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

NormValue NormEval(const Norm& norm, double x);

// |r_max - r| through the smooth-abs norm: the cost a reward-defined task
// presents to a minimizing planner.
double RewardToCost(double reward, double r_max, double smoothing);

NormKind NormKindFromString(const std::string& s);
std::string ToString(NormKind kind);

}  // namespace horizon

#endif  // HORIZON_NORMS_H_

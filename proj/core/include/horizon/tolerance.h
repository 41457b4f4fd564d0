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

#ifndef HORIZON_TOLERANCE_H_
#define HORIZON_TOLERANCE_H_

#include <limits>

namespace horizon {

// Soft interval indicator in the dm_control style: 1 inside [lo, hi], then a
// sigmoid of the normalized distance d = dist_to_interval / margin that equals
// value_at_margin at d = 1.
enum class Sigmoid { kGaussian, kQuadratic };

double Tolerance(double x, double lo, double hi, double margin,
                 double value_at_margin = 0.1, Sigmoid sigmoid = Sigmoid::kGaussian);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace horizon

#endif  // HORIZON_TOLERANCE_H_

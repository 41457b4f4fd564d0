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

#include "horizon/tolerance.h"

#include <cmath>

#include "horizon/types.h"

namespace horizon {

double Tolerance(double x, double lo, double hi, double margin, double value_at_margin,
                 Sigmoid sigmoid) {
  if (lo > hi) throw ContractViolation("tolerance bounds out of order");
  if (margin < 0.0) throw ContractViolation("tolerance margin must be non-negative");
  const bool in_bounds = x >= lo && x <= hi;
  if (margin == 0.0) return in_bounds ? 1.0 : 0.0;
  if (in_bounds) return 1.0;

  const double d = (x < lo ? lo - x : x - hi) / margin;
  switch (sigmoid) {
    case Sigmoid::kGaussian: {
      if (!(value_at_margin > 0.0 && value_at_margin < 1.0))
        throw ContractViolation("gaussian sigmoid needs value_at_margin in (0, 1)");
      const double scale = std::sqrt(-2.0 * std::log(value_at_margin));
      return std::exp(-0.5 * d * scale * d * scale);
    }
    case Sigmoid::kQuadratic: {
      if (!(value_at_margin >= 0.0 && value_at_margin < 1.0))
        throw ContractViolation("quadratic sigmoid needs value_at_margin in [0, 1)");
      const double scale = std::sqrt(1.0 - value_at_margin);
      const double sd = d * scale;
      return sd < 1.0 ? 1.0 - sd * sd : 0.0;
    }
  }
  return 0.0;
}

}  // namespace horizon

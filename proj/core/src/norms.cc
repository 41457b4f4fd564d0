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

#include "horizon/norms.h"

#include <cmath>

namespace horizon {

NormValue NormEval(const Norm& norm, double x) {
  NormValue out;
  switch (norm.kind) {
    case NormKind::kSmoothAbs: {
      if (!(norm.p > 0.0)) throw ContractViolation("smooth-abs requires p > 0");
      const double s = std::sqrt(x * x + norm.p * norm.p);
      out.value = s - norm.p;
      out.d1 = x / s;
      out.d2 = norm.p * norm.p / (s * s * s);
      break;
    }
    case NormKind::kQuadratic:
      out.value = 0.5 * x * x;
      out.d1 = x;
      out.d2 = 1.0;
      break;
  }
  return out;
}

double RewardToCost(double reward, double r_max, double smoothing) {
  return NormEval({NormKind::kSmoothAbs, smoothing}, r_max - reward).value;
}

NormKind NormKindFromString(const std::string& s) {
  if (s == "smooth_abs") return NormKind::kSmoothAbs;
  if (s == "quadratic") return NormKind::kQuadratic;
  throw ContractViolation("unknown norm kind: " + s);
}

std::string ToString(NormKind kind) {
  return kind == NormKind::kSmoothAbs ? "smooth_abs" : "quadratic";
}

}  // namespace horizon

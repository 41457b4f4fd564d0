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

#ifndef HORIZON_TYPES_H_
#define HORIZON_TYPES_H_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace horizon {

// Upper bounds on problem sizes. The largest model is the planar biped plus
// the push-task box slider: 8 generalized dofs, 4 actuators, 10 bodies.
// Bounded-dynamic Eigen types keep the stepping hot path off the heap.
inline constexpr int kMaxDof = 8;
inline constexpr int kMaxAct = 4;
inline constexpr int kMaxBodies = 10;

using VecN = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDof, 1>;
using MatN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDof, kMaxDof>;
using VecU = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxAct, 1>;

// Linearization blocks over the stacked state [q; v].
using MatA = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2 * kMaxDof, 2 * kMaxDof>;
using MatB = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2 * kMaxDof, kMaxAct>;

using Vec2 = Eigen::Vector2d;

// Rotation by angle a (counterclockwise positive).
inline Eigen::Matrix2d Rot(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

// Planar cross product omega x r for scalar omega.
inline Vec2 Perp(const Vec2& r) { return Vec2(-r.y(), r.x()); }

// Violated precondition or malformed input.
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite quantities produced while integrating.
class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(const std::string& what, int substep)
      : std::runtime_error(what + " (substep " + std::to_string(substep) + ")"),
        substep_(substep) {}
  int substep() const { return substep_; }

 private:
  int substep_;
};

}  // namespace horizon

#endif  // HORIZON_TYPES_H_

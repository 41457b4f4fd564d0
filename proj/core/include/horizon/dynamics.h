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

#ifndef HORIZON_DYNAMICS_H_
#define HORIZON_DYNAMICS_H_

#include <array>
#include <string>

#include "horizon/model.h"
#include "horizon/types.h"

namespace horizon {

// Per-body world-frame kinematics, plus origin acceleration under zero
// generalized acceleration (the bias/centrifugal pass).
struct BodyKin {
  double phi = 0.0;
  double omega = 0.0;
  Vec2 origin = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
  Vec2 acc0 = Vec2::Zero();
};

struct Kinematics {
  std::array<BodyKin, kMaxBodies> body;
};

void ForwardKinematics(const ModelSpec& model, const State& state, Kinematics* kin);

// World position / velocity of a point given in body-local coordinates.
SitePose PointPose(const ModelSpec& model, const Kinematics& kin, int body, const Vec2& local);

// Jacobian of the world position of a body-local point with respect to q
// (2 x ndof), written into the caller's matrix.
void PointJacobian(const ModelSpec& model, const Kinematics& kin, int body, const Vec2& local,
                   Eigen::Matrix<double, 2, Eigen::Dynamic, 0, 2, kMaxDof>* jac);

// Advances one control timestep (control_dt / physics_dt semi-implicit Euler
// substeps). Control is clamped to actuator limits before integration.
State Step(const ModelSpec& model, const State& state, const ControlVector& control);

// World pose of a named site (position via the kinematic chain, velocity via
// the point Jacobian).
SitePose GetSitePose(const ModelSpec& model, const State& state, const std::string& site);
SitePose GetSitePose(const ModelSpec& model, const State& state, int site_id);

// Mass-weighted robot CoM position and velocity; excludes the box slider.
SitePose CenterOfMass(const ModelSpec& model, const State& state);

// A = d step / d [q; v], B = d step / d control, central finite differences
// over one control timestep with perturbation 1e-6 * max(1, |entry|).
void Linearize(const ModelSpec& model, const State& state, const ControlVector& control,
               MatA* a, MatB* b);

// Kinetic plus gravitational potential energy (springs excluded); used by
// conservation checks on contact-free states.
double MechanicalEnergy(const ModelSpec& model, const State& state);

// Total ground-contact normal force at the current state.
double TotalNormalForce(const ModelSpec& model, const State& state);

ControlVector ClampControl(const ModelSpec& model, const ControlVector& control);

}  // namespace horizon

#endif  // HORIZON_DYNAMICS_H_

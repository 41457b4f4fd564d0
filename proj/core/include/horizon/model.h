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

#ifndef HORIZON_MODEL_H_
#define HORIZON_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "horizon/types.h"

namespace horizon {

// One generalized coordinate per body. Prismatic joints translate along a
// world-fixed axis and are only valid while every ancestor is prismatic
// (planar floating bases and ground sliders), which keeps their axes inertial.
enum class JointType { kPrismaticX, kPrismaticZ, kRevolute };

struct Body {
  int parent = -1;          // -1 = world
  JointType joint = JointType::kRevolute;
  Vec2 anchor = Vec2::Zero();  // joint location in the parent frame
  double mass = 0.0;           // 0 allowed for internal root bodies
  double inertia = 0.0;        // about the body's own CoM
  Vec2 com = Vec2::Zero();     // CoM in the body frame
  std::string name;
};

struct Site {
  int body = 0;
  Vec2 offset = Vec2::Zero();
  std::string name;
};

// Sphere against the ground plane z = 0.
struct ContactSphere {
  int body = 0;
  Vec2 offset = Vec2::Zero();
  double radius = 0.0;
};

struct ContactParams {
  double stiffness = 20000.0;      // N/m
  double damping = 1000.0;         // N.s/m
  double friction = 1.0;
  double smoothing_velocity = 0.1; // m/s, tanh friction transition
};

// Push-task box: a slider along ground x with Coulomb-style ground friction
// and soft one-sided hand contact on its vertical faces.
struct BoxParams {
  double mass = 1.0;        // kg
  double half_width = 0.15; // m
  double height = 1.0;      // m
  double friction = 0.3;    // ground friction coefficient
  double stiffness = 2000.0;   // hand-face N/m
  double damping = 50.0;       // hand-face N.s/m
  double start_x = 0.6;        // initial center position
};

struct ModelSpec {
  std::vector<Body> bodies;
  std::vector<Site> sites;
  std::vector<ContactSphere> contacts;

  // actuators[i] drives dof actuated_dofs[i]; limits are symmetric about 0.
  std::vector<int> actuated_dofs;
  std::vector<double> actuator_limits;

  ContactParams contact;
  double gravity = 9.81;

  double physics_dt = 0.005;
  double control_dt = 0.02;

  // Box slider, present on push models. box_dof is the slider's dof index,
  // hand_sites the sites that interact with its faces.
  std::optional<BoxParams> box;
  int box_dof = -1;
  std::vector<int> hand_sites;

  // Named dof indices used by tasks. -1 when absent.
  int root_x_dof = -1;
  int root_z_dof = -1;
  int root_pitch_dof = -1;

  // Viscous joint damping per dof; empty = none.
  std::vector<double> joint_damping;

  int ndof() const { return static_cast<int>(bodies.size()); }
  int nu() const { return static_cast<int>(actuated_dofs.size()); }
  int substeps() const;

  int SiteId(const std::string& name) const;     // throws on unknown name
  int FindSite(const std::string& name) const;   // -1 on unknown name

  // Checks topology ordering, positivity and timestep divisibility; throws
  // ContractViolation with the offending field named.
  void Validate() const;
};

struct State {
  VecN q;
  VecN v;
  double t = 0.0;
};

using ControlVector = VecU;

struct SitePose {
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
};

// ----- model factories ----------------------------------------------------

// Planar 5-link biped: torso (head/pelvis/hand sites) plus two thigh+shank
// legs with point feet. 7 dofs (root x, z, pitch + 4 joints), 4 actuators.
struct BipedParams {
  double torso_mass = 16.0;
  double torso_length = 0.55;   // pelvis to head site
  double torso_com = 0.25;
  double torso_inertia = 0.45;

  double thigh_mass = 4.5;
  double thigh_length = 0.4;
  double thigh_com = 0.2;
  double thigh_inertia = 0.06;

  double shank_mass = 2.5;
  double shank_length = 0.4;
  double shank_com = 0.2;
  double shank_inertia = 0.035;

  Vec2 hand_offset = Vec2(0.25, 0.1);  // torso frame
  double foot_radius = 0.05;
  double knee_radius = 0.04;
  double pelvis_radius = 0.08;
  double head_radius = 0.08;
  double hand_radius = 0.04;

  double actuator_limit = 150.0;  // N.m, all four joints
  double joint_damping = 0.5;     // N.m.s/rad, actuated joints only

  ContactParams contact;
  double gravity = 9.81;
  double physics_dt = 0.005;
  double control_dt = 0.02;

  std::optional<BoxParams> box;  // set for push models
};

ModelSpec MakeBiped(const BipedParams& params = {});

// 1-dof test models used by oracles and unit tests.
ModelSpec MakePointMass(double mass, double dt, double actuator_limit = 1e9);
ModelSpec MakePendulum(double mass, double length, double gravity, double dt);

}  // namespace horizon

#endif  // HORIZON_MODEL_H_

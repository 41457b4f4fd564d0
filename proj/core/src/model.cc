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

#include "horizon/model.h"

#include <cmath>
#include <string>

namespace horizon {

int ModelSpec::substeps() const {
  return static_cast<int>(std::lround(control_dt / physics_dt));
}

int ModelSpec::FindSite(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
    if (sites[i].name == name) return i;
  }
  return -1;
}

int ModelSpec::SiteId(const std::string& name) const {
  int id = FindSite(name);
  if (id < 0) throw ContractViolation("unknown site: " + name);
  return id;
}

void ModelSpec::Validate() const {
  if (bodies.empty()) throw ContractViolation("model has no bodies");
  if (ndof() > kMaxDof) throw ContractViolation("model exceeds kMaxDof");
  for (int i = 0; i < ndof(); ++i) {
    const Body& b = bodies[i];
    if (b.parent >= i) throw ContractViolation("bodies must be parent-ordered: " + b.name);
    if (b.mass < 0.0 || b.inertia < 0.0)
      throw ContractViolation("negative mass or inertia: " + b.name);
    if (b.joint != JointType::kRevolute) {
      // Prismatic axes are world-fixed; every ancestor must be prismatic.
      for (int p = b.parent; p >= 0; p = bodies[p].parent) {
        if (bodies[p].joint == JointType::kRevolute)
          throw ContractViolation("prismatic joint under a revolute ancestor: " + b.name);
      }
    }
  }
  if (physics_dt <= 0.0 || control_dt <= 0.0)
    throw ContractViolation("timesteps must be positive");
  const double ratio = control_dt / physics_dt;
  if (std::abs(ratio - std::lround(ratio)) > 1e-9 || std::lround(ratio) < 1)
    throw ContractViolation("control_dt must be an integer multiple of physics_dt");
  if (actuated_dofs.size() != actuator_limits.size())
    throw ContractViolation("actuator table size mismatch");
  if (nu() > kMaxAct) throw ContractViolation("model exceeds kMaxAct");
  for (int i = 0; i < nu(); ++i) {
    if (actuated_dofs[i] < 0 || actuated_dofs[i] >= ndof())
      throw ContractViolation("actuated dof out of range");
    if (!(actuator_limits[i] > 0.0))
      throw ContractViolation("actuator limits must be strictly positive");
  }
  if (contact.stiffness <= 0.0 || contact.damping < 0.0 || contact.smoothing_velocity <= 0.0)
    throw ContractViolation("invalid contact parameters");
  for (const Site& s : sites) {
    if (s.body < 0 || s.body >= ndof()) throw ContractViolation("site body out of range: " + s.name);
  }
  for (const ContactSphere& c : contacts) {
    if (c.body < 0 || c.body >= ndof()) throw ContractViolation("contact body out of range");
    if (c.radius < 0.0) throw ContractViolation("contact radius must be non-negative");
  }
  if (box) {
    if (box_dof < 0 || box_dof >= ndof()) throw ContractViolation("box dof out of range");
    if (box->mass <= 0.0 || box->half_width <= 0.0 || box->height <= 0.0 ||
        box->stiffness <= 0.0)
      throw ContractViolation("invalid box parameters");
  }
  if (!joint_damping.empty() && static_cast<int>(joint_damping.size()) != ndof())
    throw ContractViolation("joint_damping size mismatch");
}

ModelSpec MakeBiped(const BipedParams& p) {
  if (p.torso_mass <= 0.0 || p.thigh_mass <= 0.0 || p.shank_mass <= 0.0)
    throw ContractViolation("link masses must be strictly positive");
  if (p.torso_length <= 0.0 || p.thigh_length <= 0.0 || p.shank_length <= 0.0)
    throw ContractViolation("link lengths must be strictly positive");
  if (p.torso_inertia <= 0.0 || p.thigh_inertia <= 0.0 || p.shank_inertia <= 0.0)
    throw ContractViolation("link inertias must be strictly positive");
  if (p.actuator_limit <= 0.0) throw ContractViolation("actuator limit must be strictly positive");

  ModelSpec m;
  m.contact = p.contact;
  m.gravity = p.gravity;
  m.physics_dt = p.physics_dt;
  m.control_dt = p.control_dt;

  // Floating base as a prismatic-x, prismatic-z, revolute chain; the two
  // translation carriers are massless.
  Body root_x{-1, JointType::kPrismaticX, Vec2::Zero(), 0.0, 0.0, Vec2::Zero(), "root_x"};
  Body root_z{0, JointType::kPrismaticZ, Vec2::Zero(), 0.0, 0.0, Vec2::Zero(), "root_z"};
  Body torso{1, JointType::kRevolute, Vec2::Zero(), p.torso_mass, p.torso_inertia,
             Vec2(0.0, p.torso_com), "torso"};
  Body l_thigh{2, JointType::kRevolute, Vec2::Zero(), p.thigh_mass, p.thigh_inertia,
               Vec2(0.0, -p.thigh_com), "left_thigh"};
  Body l_shank{3, JointType::kRevolute, Vec2(0.0, -p.thigh_length), p.shank_mass,
               p.shank_inertia, Vec2(0.0, -p.shank_com), "left_shank"};
  Body r_thigh{2, JointType::kRevolute, Vec2::Zero(), p.thigh_mass, p.thigh_inertia,
               Vec2(0.0, -p.thigh_com), "right_thigh"};
  Body r_shank{5, JointType::kRevolute, Vec2(0.0, -p.thigh_length), p.shank_mass,
               p.shank_inertia, Vec2(0.0, -p.shank_com), "right_shank"};
  m.bodies = {root_x, root_z, torso, l_thigh, l_shank, r_thigh, r_shank};

  m.root_x_dof = 0;
  m.root_z_dof = 1;
  m.root_pitch_dof = 2;

  const int torso_id = 2, l_shank_id = 4, r_shank_id = 6;
  m.sites = {
      {torso_id, Vec2(0.0, p.torso_length), "head"},
      {torso_id, Vec2::Zero(), "pelvis"},
      {l_shank_id, Vec2(0.0, -p.shank_length), "left_foot"},
      {r_shank_id, Vec2(0.0, -p.shank_length), "right_foot"},
      {torso_id, p.hand_offset, "left_hand"},
      {torso_id, p.hand_offset, "right_hand"},
  };

  m.contacts = {
      {l_shank_id, Vec2(0.0, -p.shank_length), p.foot_radius},
      {r_shank_id, Vec2(0.0, -p.shank_length), p.foot_radius},
      {3, Vec2(0.0, -p.thigh_length), p.knee_radius},
      {5, Vec2(0.0, -p.thigh_length), p.knee_radius},
      {torso_id, Vec2::Zero(), p.pelvis_radius},
      {torso_id, Vec2(0.0, p.torso_length), p.head_radius},
      {torso_id, p.hand_offset, p.hand_radius},
  };

  m.actuated_dofs = {3, 4, 5, 6};  // left hip, left knee, right hip, right knee
  m.actuator_limits = std::vector<double>(4, p.actuator_limit);

  m.joint_damping.assign(m.bodies.size(), 0.0);
  for (int dof : m.actuated_dofs) m.joint_damping[dof] = p.joint_damping;

  if (p.box) {
    Body box_body{-1, JointType::kPrismaticX, Vec2::Zero(), p.box->mass, 0.0,
                  Vec2(0.0, p.box->height / 2.0), "box"};
    m.bodies.push_back(box_body);
    m.box = p.box;
    m.box_dof = static_cast<int>(m.bodies.size()) - 1;
    m.joint_damping.push_back(0.0);
    m.hand_sites = {m.SiteId("left_hand"), m.SiteId("right_hand")};
  }

  m.Validate();
  return m;
}

ModelSpec MakePointMass(double mass, double dt, double actuator_limit) {
  ModelSpec m;
  m.bodies = {{-1, JointType::kPrismaticX, Vec2::Zero(), mass, 0.0, Vec2::Zero(), "slider"}};
  m.sites = {{0, Vec2::Zero(), "tip"}};
  m.actuated_dofs = {0};
  m.actuator_limits = {actuator_limit};
  m.gravity = 0.0;
  m.physics_dt = dt;
  m.control_dt = dt;
  m.Validate();
  return m;
}

ModelSpec MakePendulum(double mass, double length, double gravity, double dt) {
  ModelSpec m;
  // Hanging rod, point mass at the tip; angle 0 = straight down.
  m.bodies = {{-1, JointType::kRevolute, Vec2::Zero(), mass, 0.0, Vec2(0.0, -length), "rod"}};
  m.sites = {{0, Vec2(0.0, -length), "tip"}};
  m.actuated_dofs = {0};
  m.actuator_limits = {1e9};
  m.gravity = gravity;
  m.physics_dt = dt;
  m.control_dt = dt;
  m.Validate();
  return m;
}

}  // namespace horizon

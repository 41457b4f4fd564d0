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

#include "horizon/dynamics.h"

#include <algorithm>
#include <cmath>

namespace horizon {

namespace {

using Jac2 = Eigen::Matrix<double, 2, Eigen::Dynamic, 0, 2, kMaxDof>;

void CheckState(const ModelSpec& model, const State& state) {
  if (state.q.size() != model.ndof() || state.v.size() != model.ndof())
    throw ContractViolation("state dimension does not match model");
}

Vec2 PointWorld(const Kinematics& kin, int body, const Vec2& local) {
  const BodyKin& bk = kin.body[body];
  return bk.origin + Rot(bk.phi) * local;
}

// J^T f accumulation for a world-frame force applied at a body point.
void AddPointForce(const ModelSpec& model, const Kinematics& kin, int body, const Vec2& local,
                   const Vec2& force, VecN* f) {
  const Vec2 p = PointWorld(kin, body, local);
  for (int b = body; b >= 0; b = model.bodies[b].parent) {
    switch (model.bodies[b].joint) {
      case JointType::kPrismaticX:
        (*f)(b) += force.x();
        break;
      case JointType::kPrismaticZ:
        (*f)(b) += force.y();
        break;
      case JointType::kRevolute:
        (*f)(b) += Perp(p - kin.body[b].origin).dot(force);
        break;
    }
  }
}

// Ground-plane contact for one sphere; returns the world force (0 if inactive).
Vec2 GroundForce(const ContactParams& cp, const SitePose& pose, double radius) {
  const double pen = radius - pose.position.y();
  if (pen <= 0.0) return Vec2::Zero();
  const double fn = std::max(0.0, cp.stiffness * pen - cp.damping * pose.velocity.y());
  const double ft = -cp.friction * fn * std::tanh(pose.velocity.x() / cp.smoothing_velocity);
  return Vec2(ft, fn);
}

// Applied + gravity + contact + damping forces (everything except the
// velocity-product bias term).
void GeneralizedForces(const ModelSpec& model, const Kinematics& kin, const State& state,
                       const ControlVector& control, VecN* f) {
  const int n = model.ndof();
  f->setZero(n);

  for (int i = 0; i < model.nu(); ++i) (*f)(model.actuated_dofs[i]) += control(i);

  if (!model.joint_damping.empty()) {
    for (int i = 0; i < n; ++i) (*f)(i) -= model.joint_damping[i] * state.v(i);
  }

  const Vec2 g_vec(0.0, -model.gravity);
  for (int b = 0; b < n; ++b) {
    if (model.bodies[b].mass > 0.0)
      AddPointForce(model, kin, b, model.bodies[b].com, model.bodies[b].mass * g_vec, f);
  }

  for (const ContactSphere& c : model.contacts) {
    const SitePose pose = PointPose(model, kin, c.body, c.offset);
    const Vec2 force = GroundForce(model.contact, pose, c.radius);
    if (force != Vec2::Zero()) AddPointForce(model, kin, c.body, c.offset, force, f);
  }

  if (model.box) {
    const BoxParams& box = *model.box;
    const int bq = model.box_dof;
    const double box_x = state.q(bq);
    const double box_v = state.v(bq);
    (*f)(bq) -= box.friction * box.mass * model.gravity *
                std::tanh(box_v / model.contact.smoothing_velocity);

    for (int site_id : model.hand_sites) {
      const Site& site = model.sites[site_id];
      const SitePose hand = PointPose(model, kin, site.body, site.offset);
      const double dx = hand.position.x() - box_x;
      const bool in_height = hand.position.y() >= 0.0 && hand.position.y() <= box.height;
      if (!in_height || std::abs(dx) >= box.half_width) continue;
      const double side = dx >= 0.0 ? 1.0 : -1.0;
      const double pen = box.half_width - std::abs(dx);
      const double rel = hand.velocity.x() - box_v;
      const double mag = std::max(0.0, box.stiffness * pen - box.damping * side * rel);
      const double fx = side * mag;
      AddPointForce(model, kin, site.body, site.offset, Vec2(fx, 0.0), f);
      (*f)(bq) -= fx;
    }
  }
}

// Coriolis/centrifugal generalized force sum_b m_b Jc_b^T a0_b, where a0_b is
// the body CoM acceleration under zero generalized acceleration. In the plane
// the angular part vanishes (no gyroscopic torque).
void BiasForces(const ModelSpec& model, const Kinematics& kin, VecN* bias) {
  const int n = model.ndof();
  bias->setZero(n);
  Jac2 jac(2, n);
  for (int b = 0; b < n; ++b) {
    const Body& body = model.bodies[b];
    if (body.mass <= 0.0) continue;
    const BodyKin& bk = kin.body[b];
    const Vec2 rc = Rot(bk.phi) * body.com;
    const Vec2 a0 = bk.acc0 - bk.omega * bk.omega * rc;
    if (a0 == Vec2::Zero()) continue;
    PointJacobian(model, kin, b, body.com, &jac);
    bias->noalias() += body.mass * (jac.transpose() * a0);
  }
}

void MassMatrix(const ModelSpec& model, const Kinematics& kin, MatN* m_out) {
  const int n = model.ndof();
  m_out->setZero(n, n);
  Jac2 jac(2, n);
  for (int b = 0; b < n; ++b) {
    const Body& body = model.bodies[b];
    if (body.mass > 0.0) {
      PointJacobian(model, kin, b, body.com, &jac);
      m_out->noalias() += body.mass * (jac.transpose() * jac);
    }
    if (body.inertia > 0.0) {
      // Rotational Jacobian: 1 on every revolute joint in the support chain.
      for (int i = b; i >= 0; i = model.bodies[i].parent) {
        if (model.bodies[i].joint != JointType::kRevolute) continue;
        for (int j = b; j >= 0; j = model.bodies[j].parent) {
          if (model.bodies[j].joint != JointType::kRevolute) continue;
          (*m_out)(i, j) += body.inertia;
        }
      }
    }
  }
}

}  // namespace

void ForwardKinematics(const ModelSpec& model, const State& state, Kinematics* kin) {
  const BodyKin world;
  for (int i = 0; i < model.ndof(); ++i) {
    const Body& b = model.bodies[i];
    const BodyKin& par = b.parent < 0 ? world : kin->body[b.parent];
    BodyKin& out = kin->body[i];
    switch (b.joint) {
      case JointType::kPrismaticX:
        out.phi = par.phi;
        out.omega = par.omega;
        out.origin = par.origin + Vec2(state.q(i), 0.0);
        out.vel = par.vel + Vec2(state.v(i), 0.0);
        out.acc0 = par.acc0;
        break;
      case JointType::kPrismaticZ:
        out.phi = par.phi;
        out.omega = par.omega;
        out.origin = par.origin + Vec2(0.0, state.q(i));
        out.vel = par.vel + Vec2(0.0, state.v(i));
        out.acc0 = par.acc0;
        break;
      case JointType::kRevolute: {
        const Vec2 r = Rot(par.phi) * b.anchor;
        out.phi = par.phi + state.q(i);
        out.omega = par.omega + state.v(i);
        out.origin = par.origin + r;
        out.vel = par.vel + par.omega * Perp(r);
        out.acc0 = par.acc0 - par.omega * par.omega * r;
        break;
      }
    }
  }
}

SitePose PointPose(const ModelSpec& model, const Kinematics& kin, int body, const Vec2& local) {
  (void)model;
  const BodyKin& bk = kin.body[body];
  const Vec2 rc = Rot(bk.phi) * local;
  SitePose pose;
  pose.position = bk.origin + rc;
  pose.velocity = bk.vel + bk.omega * Perp(rc);
  return pose;
}

void PointJacobian(const ModelSpec& model, const Kinematics& kin, int body, const Vec2& local,
                   Eigen::Matrix<double, 2, Eigen::Dynamic, 0, 2, kMaxDof>* jac) {
  jac->setZero(2, model.ndof());
  const Vec2 p = PointWorld(kin, body, local);
  for (int b = body; b >= 0; b = model.bodies[b].parent) {
    switch (model.bodies[b].joint) {
      case JointType::kPrismaticX:
        (*jac)(0, b) = 1.0;
        break;
      case JointType::kPrismaticZ:
        (*jac)(1, b) = 1.0;
        break;
      case JointType::kRevolute: {
        const Vec2 col = Perp(p - kin.body[b].origin);
        (*jac)(0, b) = col.x();
        (*jac)(1, b) = col.y();
        break;
      }
    }
  }
}

ControlVector ClampControl(const ModelSpec& model, const ControlVector& control) {
  ControlVector out = control;
  for (int i = 0; i < model.nu(); ++i) {
    const double lim = model.actuator_limits[i];
    out(i) = std::clamp(out(i), -lim, lim);
  }
  return out;
}

State Step(const ModelSpec& model, const State& state, const ControlVector& control) {
  CheckState(model, state);
  if (control.size() != model.nu())
    throw ContractViolation("control dimension does not match model");
  if (!control.allFinite()) throw ContractViolation("control must be finite");

  const ControlVector u = ClampControl(model, control);
  const double h = model.physics_dt;
  const int substeps = model.substeps();

  State s = state;
  Kinematics kin;
  VecN forces(model.ndof()), bias(model.ndof()), acc(model.ndof());
  MatN mass(model.ndof(), model.ndof());
  for (int k = 0; k < substeps; ++k) {
    ForwardKinematics(model, s, &kin);
    GeneralizedForces(model, kin, s, u, &forces);
    BiasForces(model, kin, &bias);
    MassMatrix(model, kin, &mass);
    acc = mass.ldlt().solve(forces - bias);
    s.v += h * acc;
    s.q += h * s.v;
    if (!s.q.allFinite() || !s.v.allFinite())
      throw SimulationDiverged("non-finite state while integrating", k);
  }
  s.t = state.t + model.control_dt;
  return s;
}

SitePose GetSitePose(const ModelSpec& model, const State& state, int site_id) {
  CheckState(model, state);
  if (site_id < 0 || site_id >= static_cast<int>(model.sites.size()))
    throw ContractViolation("site id out of range");
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  const Site& site = model.sites[site_id];
  return PointPose(model, kin, site.body, site.offset);
}

SitePose GetSitePose(const ModelSpec& model, const State& state, const std::string& site) {
  return GetSitePose(model, state, model.SiteId(site));
}

SitePose CenterOfMass(const ModelSpec& model, const State& state) {
  CheckState(model, state);
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  SitePose com;
  double total = 0.0;
  for (int b = 0; b < model.ndof(); ++b) {
    if (b == model.box_dof) continue;
    const Body& body = model.bodies[b];
    if (body.mass <= 0.0) continue;
    const SitePose p = PointPose(model, kin, b, body.com);
    com.position += body.mass * p.position;
    com.velocity += body.mass * p.velocity;
    total += body.mass;
  }
  if (total <= 0.0) throw ContractViolation("model has no mass");
  com.position /= total;
  com.velocity /= total;
  return com;
}

void Linearize(const ModelSpec& model, const State& state, const ControlVector& control,
               MatA* a, MatB* b) {
  const int n = model.ndof();
  const int nx = 2 * n;
  const int nu = model.nu();
  a->resize(nx, nx);
  b->resize(nx, nu);

  auto pack = [n](const State& s, Eigen::Ref<Eigen::VectorXd> out) {
    out.head(n) = s.q;
    out.tail(n) = s.v;
  };

  Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 2 * kMaxDof, 1> plus(nx), minus(nx);
  for (int i = 0; i < nx; ++i) {
    const double base = i < n ? state.q(i) : state.v(i - n);
    const double eps = 1e-6 * std::max(1.0, std::abs(base));
    State sp = state, sm = state;
    (i < n ? sp.q(i) : sp.v(i - n)) += eps;
    (i < n ? sm.q(i) : sm.v(i - n)) -= eps;
    pack(Step(model, sp, control), plus);
    pack(Step(model, sm, control), minus);
    a->col(i) = (plus - minus) / (2.0 * eps);
  }
  for (int i = 0; i < nu; ++i) {
    const double eps = 1e-6 * std::max(1.0, std::abs(control(i)));
    ControlVector up = control, um = control;
    up(i) += eps;
    um(i) -= eps;
    pack(Step(model, state, up), plus);
    pack(Step(model, state, um), minus);
    b->col(i) = (plus - minus) / (2.0 * eps);
  }
}

double MechanicalEnergy(const ModelSpec& model, const State& state) {
  CheckState(model, state);
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  double energy = 0.0;
  for (int b = 0; b < model.ndof(); ++b) {
    const Body& body = model.bodies[b];
    if (body.mass <= 0.0 && body.inertia <= 0.0) continue;
    const SitePose p = PointPose(model, kin, b, body.com);
    energy += 0.5 * body.mass * p.velocity.squaredNorm();
    energy += 0.5 * body.inertia * kin.body[b].omega * kin.body[b].omega;
    energy += body.mass * model.gravity * p.position.y();
  }
  return energy;
}

double TotalNormalForce(const ModelSpec& model, const State& state) {
  CheckState(model, state);
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  double total = 0.0;
  for (const ContactSphere& c : model.contacts) {
    const SitePose pose = PointPose(model, kin, c.body, c.offset);
    total += GroundForce(model.contact, pose, c.radius).y();
  }
  return total;
}

}  // namespace horizon

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

#include "horizon/task.h"

#include <algorithm>
#include <cmath>

#include "horizon/tolerance.h"

namespace horizon {

namespace {

// Residual dispatch indices for ResidualSet.
enum ResidualId {
  kHeadHeight,
  kPelvisFeet,
  kComVelocity,
  kBalance,
  kPosture,
  kFacing,
  kControl,
  kBoxTarget,
  kHandObjectLeft,
  kHandObjectRight,
  kHbRewardGap,
  kResidualCount,
};

constexpr const char* kResidualNames[kResidualCount] = {
    "head_height", "pelvis_feet", "com_velocity",     "balance",
    "posture",     "facing",      "control",          "box_target",
    "hand_object_left",           "hand_object_right", "hb_reward_gap",
};

int ResidualIndex(const std::string& id) {
  for (int i = 0; i < kResidualCount; ++i) {
    if (id == kResidualNames[i]) return i;
  }
  throw ContractViolation("unknown residual id: " + id);
}

SitePose SiteFromKin(const ModelSpec& model, const Kinematics& kin, int site_id) {
  const Site& s = model.sites[site_id];
  return PointPose(model, kin, s.body, s.offset);
}

SitePose ComFromKin(const ModelSpec& model, const Kinematics& kin) {
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
  com.position /= total;
  com.velocity /= total;
  return com;
}

// Hand position minus the nearest point of the box rectangle; zero when the
// hand touches or penetrates the box.
Vec2 HandObjectFromKin(const ModelSpec& model, const Kinematics& kin, const State& state,
                       int hand_site) {
  if (!model.box) throw ContractViolation("hand-object residual requires a box");
  const BoxParams& box = *model.box;
  const double box_x = state.q(model.box_dof);
  const SitePose hand = SiteFromKin(model, kin, hand_site);
  const Vec2 nearest(
      std::clamp(hand.position.x(), box_x - box.half_width, box_x + box.half_width),
      std::clamp(hand.position.y(), 0.0, box.height));
  return hand.position - nearest;
}

double HbRewardFromKin(const ModelSpec& model, const Kinematics& kin, const State& state,
                       const ControlVector& control, const TaskSpec& task, const Goal& goal) {
  // Control factor in [0.8, 1]: quadratic tolerance on each channel,
  // normalized by its actuator limit.
  double small_control = 1.0;
  if (model.nu() > 0) {
    double acc = 0.0;
    for (int i = 0; i < model.nu(); ++i)
      acc += Tolerance(control(i), 0.0, 0.0, model.actuator_limits[i], 0.0, Sigmoid::kQuadratic);
    small_control = (4.0 + acc / model.nu()) / 5.0;
  }

  switch (task.id) {
    case TaskId::kStand: {
      const double head_z = SiteFromKin(model, kin, task.head_site).position.y();
      const double h_min = task.stand_head_min_frac * task.target_head_height;
      return Tolerance(head_z, h_min, kInf, task.stand_head_margin) * small_control;
    }
    case TaskId::kWalk: {
      const double head_z = SiteFromKin(model, kin, task.head_site).position.y();
      const double h_min = task.stand_head_min_frac * task.target_head_height;
      const double stand = Tolerance(head_z, h_min, kInf, task.stand_head_margin) * small_control;
      const double vx = ComFromKin(model, kin).velocity.x();
      return stand * Tolerance(vx, goal.walk_speed, kInf, goal.walk_speed);
    }
    case TaskId::kPush: {
      const double d = state.q(model.box_dof) - goal.box_target_x;
      const double dist_factor = std::exp(-(d * d) / (task.push_sigma * task.push_sigma));
      const double dl = HandObjectFromKin(model, kin, state, task.left_hand_site).norm();
      const double dr = HandObjectFromKin(model, kin, state, task.right_hand_site).norm();
      const double dh = std::min(dl, dr);
      const double prox =
          std::exp(-(dh * dh) / (task.push_hand_sigma * task.push_hand_sigma));
      return dist_factor * prox;
    }
  }
  return 0.0;
}

}  // namespace

TaskId TaskIdFromString(const std::string& s) {
  if (s == "stand") return TaskId::kStand;
  if (s == "walk") return TaskId::kWalk;
  if (s == "push") return TaskId::kPush;
  throw ContractViolation("unknown task id: " + s);
}

CostVariant VariantFromString(const std::string& s) {
  if (s == "ours") return CostVariant::kOurs;
  if (s == "hb") return CostVariant::kHb;
  throw ContractViolation("unknown cost variant: " + s);
}

std::string ToString(TaskId id) {
  switch (id) {
    case TaskId::kStand: return "stand";
    case TaskId::kWalk: return "walk";
    case TaskId::kPush: return "push";
  }
  return "?";
}

std::string ToString(CostVariant v) { return v == CostVariant::kOurs ? "ours" : "hb"; }

Goal TaskSpec::InitialGoal() const {
  Goal goal;
  goal.box_target_x = box_target_x;
  goal.walk_speed = id == TaskId::kWalk ? walk_target_speed : 0.0;
  return goal;
}

void TaskSpec::Validate() const {
  model.Validate();
  cost.Validate();
  if (!(episode_length_s > 0.0)) throw ContractViolation("episode length must be positive");
  const double steps = episode_length_s / model.control_dt;
  if (std::abs(steps - std::lround(steps)) > 1e-9)
    throw ContractViolation("episode length must be a multiple of control_dt");
  if (termination != TerminationRule::kNone && respawn != RespawnRule::kNone)
    throw ContractViolation("termination and respawn rules are mutually exclusive");
  if (respawn == RespawnRule::kRespawnOnSuccess) {
    if (!(workspace_lo < workspace_hi)) throw ContractViolation("degenerate workspace bounds");
    if (!(success_threshold > 0.0)) throw ContractViolation("success threshold must be positive");
    if (workspace_hi - workspace_lo < 4.0 * success_threshold)
      throw ContractViolation("workspace too small for the respawn margin");
  }
  if (q_star.size() != model.nu()) throw ContractViolation("q_star size mismatch");
  if (id == TaskId::kWalk && !(walk_target_speed > 0.0))
    throw ContractViolation("walk target speed must be positive");
  if ((id == TaskId::kPush) != HasBox())
    throw ContractViolation("push tasks require a box; others must not have one");
  if (init_noise_amplitude < 0.0) throw ContractViolation("negative init noise amplitude");
}

CostSpec DefaultCostSpec(TaskId id, CostVariant variant) {
  CostSpec spec;
  if (variant == CostVariant::kHb) {
    spec.name = "hb-" + ToString(id);
    spec.terms = {{"hb_reward_gap", {NormKind::kSmoothAbs, 0.01}, 1.0}};
    return spec;
  }
  spec.name = "ours-" + ToString(id);
  const Norm sabs{NormKind::kSmoothAbs, 0.1};
  const Norm quad{NormKind::kQuadratic, 0.0};
  switch (id) {
    case TaskId::kStand:
      spec.terms = {
          {"head_height", sabs, 100.0}, {"pelvis_feet", sabs, 50.0},
          {"com_velocity", quad, 10.0}, {"balance", sabs, 50.0},
          {"posture", quad, 2.0},       {"facing", quad, 20.0},
          {"control", quad, 2e-4},
      };
      break;
    case TaskId::kWalk:
      spec.terms = {
          {"head_height", sabs, 100.0}, {"pelvis_feet", sabs, 30.0},
          {"com_velocity", quad, 30.0}, {"balance", sabs, 20.0},
          {"posture", quad, 1.0},       {"facing", quad, 20.0},
          {"control", quad, 2e-4},
      };
      break;
    case TaskId::kPush:
      spec.terms = {
          {"head_height", sabs, 100.0},
          {"pelvis_feet", sabs, 30.0},
          {"com_velocity", quad, 2.0},
          {"balance", sabs, 10.0},
          {"posture", quad, 1.0},
          {"facing", quad, 20.0},
          {"control", quad, 2e-4},
          {"box_target", {NormKind::kSmoothAbs, 0.05}, 60.0},
          {"hand_object_left", sabs, 8.0},
          {"hand_object_right", sabs, 8.0},
      };
      break;
  }
  return spec;
}

TaskSpec MakeTask(TaskId id, CostVariant variant, const BipedParams& biped_in) {
  BipedParams biped = biped_in;
  if (id == TaskId::kPush && !biped.box) biped.box = BoxParams{};
  if (id != TaskId::kPush) biped.box.reset();

  TaskSpec task;
  task.id = id;
  task.variant = variant;
  task.model = MakeBiped(biped);
  task.cost = DefaultCostSpec(id, variant);

  task.head_site = task.model.SiteId("head");
  task.pelvis_site = task.model.SiteId("pelvis");
  task.left_foot_site = task.model.SiteId("left_foot");
  task.right_foot_site = task.model.SiteId("right_foot");
  task.left_hand_site = task.model.SiteId("left_hand");
  task.right_hand_site = task.model.SiteId("right_hand");

  // Canonical crouch: hips forward by a, knees folded back by 2a, which puts
  // each foot directly below its hip and the CoM over the feet.
  const double a = 0.25;
  task.q_star.resize(4);
  task.q_star << a, -2.0 * a, a, -2.0 * a;

  task.walk_target_speed = id == TaskId::kWalk ? 1.0 : 0.0;
  if (id == TaskId::kWalk) task.episode_length_s = 8.0;
  if (id == TaskId::kPush) {
    task.respawn = RespawnRule::kRespawnOnSuccess;
    task.box_target_x = 1.2;
  }

  // Calibrate the residual targets so the canonical state scores zero.
  task.target_head_height = 0.0;
  task.target_pelvis_feet_gap = 0.0;
  const State canon = CanonicalState(task);
  const SitePose head = GetSitePose(task.model, canon, task.head_site);
  const SitePose pelvis = GetSitePose(task.model, canon, task.pelvis_site);
  const SitePose lf = GetSitePose(task.model, canon, task.left_foot_site);
  const SitePose rf = GetSitePose(task.model, canon, task.right_foot_site);
  task.target_head_height = head.position.y();
  task.target_pelvis_feet_gap =
      pelvis.position.y() - 0.5 * (lf.position.y() + rf.position.y());

  task.Validate();
  return task;
}

// ----- residuals ------------------------------------------------------------

double ResidualHeadHeight(const ModelSpec& model, const State& state, const TaskSpec& task) {
  return GetSitePose(model, state, task.head_site).position.y() - task.target_head_height;
}

double ResidualPelvisFeet(const ModelSpec& model, const State& state, const TaskSpec& task) {
  const double pelvis = GetSitePose(model, state, task.pelvis_site).position.y();
  const double feet = 0.5 * (GetSitePose(model, state, task.left_foot_site).position.y() +
                             GetSitePose(model, state, task.right_foot_site).position.y());
  return (pelvis - feet) - task.target_pelvis_feet_gap;
}

Vec2 ResidualComVelocity(const ModelSpec& model, const State& state, const TaskSpec& task,
                         const Goal& goal) {
  (void)task;
  const SitePose com = CenterOfMass(model, state);
  return Vec2(com.velocity.x() - goal.walk_speed, com.velocity.y());
}

double ResidualBalance(const ModelSpec& model, const State& state, const TaskSpec& task) {
  const double com_x = CenterOfMass(model, state).position.x();
  const double feet_x = 0.5 * (GetSitePose(model, state, task.left_foot_site).position.x() +
                               GetSitePose(model, state, task.right_foot_site).position.x());
  return com_x - feet_x;
}

VecU ResidualPosture(const ModelSpec& model, const State& state, const TaskSpec& task) {
  VecU r(model.nu());
  for (int i = 0; i < model.nu(); ++i) r(i) = state.q(model.actuated_dofs[i]) - task.q_star(i);
  return r;
}

double ResidualFacing(const ModelSpec& model, const State& state, const TaskSpec& task) {
  (void)task;
  return state.q(model.root_pitch_dof);
}

double ResidualBoxTarget(const ModelSpec& model, const State& state, const Goal& goal) {
  if (!model.box) throw ContractViolation("box-target residual requires a box");
  return state.q(model.box_dof) - goal.box_target_x;
}

Vec2 ResidualHandObject(const ModelSpec& model, const State& state, const std::string& side) {
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  return HandObjectFromKin(model, kin, state, model.SiteId(side + "_hand"));
}

double HbReward(const ModelSpec& model, const State& state, const ControlVector& control,
                const TaskSpec& task, const Goal& goal) {
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  return HbRewardFromKin(model, kin, state, control, task, goal);
}

TerminationResult CheckTerminationAndRespawn(const TaskSpec& task, const State& state,
                                             const Goal& goal, std::mt19937_64& rng) {
  TerminationResult out;
  out.goal = goal;
  if (task.id != TaskId::kPush) return out;
  const double box_x = state.q(task.model.box_dof);
  if (std::abs(box_x - goal.box_target_x) >= task.success_threshold) return out;

  if (task.termination == TerminationRule::kBoxAtTarget) {
    out.terminate = true;
    return out;
  }
  if (task.respawn == RespawnRule::kRespawnOnSuccess) {
    std::uniform_real_distribution<double> dist(task.workspace_lo, task.workspace_hi);
    double target = dist(rng);
    while (std::abs(target - box_x) < 2.0 * task.success_threshold) target = dist(rng);
    out.goal.box_target_x = target;
    out.respawned = true;
  }
  return out;
}

State CanonicalState(const TaskSpec& task) {
  const ModelSpec& model = task.model;
  State state;
  state.q.setZero(model.ndof());
  state.v.setZero(model.ndof());
  for (int i = 0; i < model.nu(); ++i) state.q(model.actuated_dofs[i]) = task.q_star(i);
  if (model.box) state.q(model.box_dof) = model.box->start_x;

  // Drop the root so the lowest contact sphere rests exactly on the ground.
  Kinematics kin;
  ForwardKinematics(model, state, &kin);
  double shift = 0.0;
  for (const ContactSphere& c : model.contacts) {
    const SitePose p = PointPose(model, kin, c.body, c.offset);
    shift = std::max(shift, c.radius - p.position.y());
  }
  state.q(model.root_z_dof) += shift;
  return state;
}

State InitialState(const TaskSpec& task, std::mt19937_64& rng) {
  TaskSpec noisy = task;  // reuse CanonicalState's ground-resting root solve
  if (task.init_noise_amplitude > 0.0) {
    std::uniform_real_distribution<double> dist(-task.init_noise_amplitude,
                                                task.init_noise_amplitude);
    for (int i = 0; i < noisy.q_star.size(); ++i) noisy.q_star(i) += dist(rng);
  }
  return CanonicalState(noisy);
}

// ----- residual registry ----------------------------------------------------

ResidualSet::ResidualSet(const TaskSpec& task, const CostSpec& spec) : task_(&task) {
  const int nu = task.model.nu();
  for (const CostTerm& term : spec.terms) {
    const int kind = ResidualIndex(term.residual);
    if ((kind == kBoxTarget || kind == kHandObjectLeft || kind == kHandObjectRight) &&
        !task.model.box)
      throw ContractViolation("residual requires a box: " + term.residual);
    int size = 1;
    switch (kind) {
      case kComVelocity: size = 2; break;
      case kPosture: size = nu; break;
      case kControl: size = nu; break;
      case kHandObjectLeft:
      case kHandObjectRight: size = 2; break;
      default: size = 1; break;
    }
    kinds_.push_back(kind);
    sizes_.push_back(size);
    total_dim_ += size;
  }
}

bool ResidualSet::IsKnown(const std::string& id) {
  for (int i = 0; i < kResidualCount; ++i) {
    if (id == kResidualNames[i]) return true;
  }
  return false;
}

void ResidualSet::Eval(const State& state, const ControlVector& control, const Goal& goal,
                       ResidualVector* out) const {
  const TaskSpec& task = *task_;
  const ModelSpec& model = task.model;
  Kinematics kin;
  ForwardKinematics(model, state, &kin);

  out->offsets.resize(kinds_.size());
  out->sizes = sizes_;
  out->values.resize(total_dim_);

  int offset = 0;
  for (size_t i = 0; i < kinds_.size(); ++i) {
    out->offsets[i] = offset;
    double* r = out->values.data() + offset;
    switch (kinds_[i]) {
      case kHeadHeight:
        r[0] = SiteFromKin(model, kin, task.head_site).position.y() - task.target_head_height;
        break;
      case kPelvisFeet: {
        const double pelvis = SiteFromKin(model, kin, task.pelvis_site).position.y();
        const double feet =
            0.5 * (SiteFromKin(model, kin, task.left_foot_site).position.y() +
                   SiteFromKin(model, kin, task.right_foot_site).position.y());
        r[0] = (pelvis - feet) - task.target_pelvis_feet_gap;
        break;
      }
      case kComVelocity: {
        const SitePose com = ComFromKin(model, kin);
        r[0] = com.velocity.x() - goal.walk_speed;
        r[1] = com.velocity.y();
        break;
      }
      case kBalance: {
        const double com_x = ComFromKin(model, kin).position.x();
        const double feet_x =
            0.5 * (SiteFromKin(model, kin, task.left_foot_site).position.x() +
                   SiteFromKin(model, kin, task.right_foot_site).position.x());
        r[0] = com_x - feet_x;
        break;
      }
      case kPosture:
        for (int j = 0; j < model.nu(); ++j)
          r[j] = state.q(model.actuated_dofs[j]) - task.q_star(j);
        break;
      case kFacing:
        r[0] = state.q(model.root_pitch_dof);
        break;
      case kControl:
        for (int j = 0; j < model.nu(); ++j) r[j] = control(j);
        break;
      case kBoxTarget:
        r[0] = state.q(model.box_dof) - goal.box_target_x;
        break;
      case kHandObjectLeft: {
        const Vec2 d = HandObjectFromKin(model, kin, state, task.left_hand_site);
        r[0] = d.x();
        r[1] = d.y();
        break;
      }
      case kHandObjectRight: {
        const Vec2 d = HandObjectFromKin(model, kin, state, task.right_hand_site);
        r[0] = d.x();
        r[1] = d.y();
        break;
      }
      case kHbRewardGap:
        r[0] = task.r_max - HbRewardFromKin(model, kin, state, control, task, goal);
        break;
      default:
        throw ContractViolation("unhandled residual kind");
    }
    offset += sizes_[i];
  }
}

// ----- task cost ------------------------------------------------------------

TaskCost::TaskCost(const TaskSpec& task, const Goal& goal)
    : task_(&task), goal_(goal), residuals_(task, task.cost) {}

double TaskCost::Eval(const State& state, const ControlVector& control) const {
  ResidualVector r;
  residuals_.Eval(state, control, goal_, &r);
  return CostEval(task_->cost, r);
}

double TaskCost::Terminal(const State& state) const {
  return Eval(state, ControlVector::Zero(task_->model.nu()));
}

void TaskCost::Residuals(const State& state, const ControlVector& control,
                         ResidualVector* out) const {
  residuals_.Eval(state, control, goal_, out);
}

void TaskCost::Quadratics(const State& state, const ControlVector& control,
                          Eigen::VectorXd* gradient, Eigen::MatrixXd* hessian) const {
  const ModelSpec& model = task_->model;
  const int n = model.ndof();
  const int dim = 2 * n + model.nu();

  ResidualVector base, plus, minus;
  residuals_.Eval(state, control, goal_, &base);

  // Full residual Jacobian over [q; v; u] by central differences, then split
  // into per-term blocks for the Gauss-Newton assembly.
  Eigen::MatrixXd jac(residuals_.TotalDim(), dim);
  for (int i = 0; i < dim; ++i) {
    State sp = state, sm = state;
    ControlVector up = control, um = control;
    double base_val;
    if (i < n) {
      base_val = state.q(i);
    } else if (i < 2 * n) {
      base_val = state.v(i - n);
    } else {
      base_val = control(i - 2 * n);
    }
    const double eps = 1e-6 * std::max(1.0, std::abs(base_val));
    if (i < n) {
      sp.q(i) += eps;
      sm.q(i) -= eps;
    } else if (i < 2 * n) {
      sp.v(i - n) += eps;
      sm.v(i - n) -= eps;
    } else {
      up(i - 2 * n) += eps;
      um(i - 2 * n) -= eps;
    }
    residuals_.Eval(sp, up, goal_, &plus);
    residuals_.Eval(sm, um, goal_, &minus);
    jac.col(i) = (plus.values - minus.values) / (2.0 * eps);
  }

  std::vector<Eigen::MatrixXd> term_jacobians(base.TermCount());
  for (int t = 0; t < base.TermCount(); ++t)
    term_jacobians[t] = jac.middleRows(base.offsets[t], base.sizes[t]);

  CostDerivatives(task_->cost, base, term_jacobians, gradient, hessian);
}

void TaskCost::TerminalQuadratics(const State& state, Eigen::VectorXd* gradient,
                                  Eigen::MatrixXd* hessian) const {
  const int nx = StateDim();
  Eigen::VectorXd full_grad;
  Eigen::MatrixXd full_hess;
  Quadratics(state, ControlVector::Zero(task_->model.nu()), &full_grad, &full_hess);
  *gradient = full_grad.head(nx);
  *hessian = full_hess.topLeftCorner(nx, nx);
}

}  // namespace horizon

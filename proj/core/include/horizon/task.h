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

#ifndef HORIZON_TASK_H_
#define HORIZON_TASK_H_

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "horizon/cost.h"
#include "horizon/dynamics.h"
#include "horizon/model.h"

namespace horizon {

enum class TaskId { kStand, kWalk, kPush };
enum class CostVariant { kOurs, kHb };
enum class TerminationRule { kNone, kBoxAtTarget };
enum class RespawnRule { kNone, kRespawnOnSuccess };

TaskId TaskIdFromString(const std::string& s);
CostVariant VariantFromString(const std::string& s);
std::string ToString(TaskId id);
std::string ToString(CostVariant v);

struct Goal {
  double box_target_x = 0.0;
  double walk_speed = 0.0;
};

struct TaskSpec {
  TaskId id = TaskId::kStand;
  CostVariant variant = CostVariant::kOurs;
  ModelSpec model;
  CostSpec cost;

  double episode_length_s = 8.0;
  TerminationRule termination = TerminationRule::kNone;
  RespawnRule respawn = RespawnRule::kNone;
  double success_threshold = 0.05;   // m
  double workspace_lo = 0.4;         // respawn bounds, m
  double workspace_hi = 2.0;

  double init_noise_amplitude = 0.02;  // rad, uniform on actuated joints

  VecU q_star;                       // canonical actuated-joint posture
  double walk_target_speed = 1.0;    // m/s; 0 for stand/push
  double target_head_height = 0.0;   // calibrated from q_star
  double target_pelvis_feet_gap = 0.0;

  // Benchmark-reward constants.
  double r_max = 1.0;
  double stand_head_min_frac = 0.9;  // h_min = frac * target_head_height
  double stand_head_margin = 0.4;    // m
  double push_sigma = 0.3;           // m, box-to-target factor
  double push_hand_sigma = 0.5;      // m, hand proximity factor
  double box_target_x = 1.2;         // initial goal

  // Cached site ids.
  int head_site = -1, pelvis_site = -1, left_foot_site = -1, right_foot_site = -1;
  int left_hand_site = -1, right_hand_site = -1;

  bool HasBox() const { return model.box.has_value(); }
  Goal InitialGoal() const;
  void Validate() const;
};

// Builds a task with the default biped, calibrating the residual targets from
// the canonical posture. The cost spec defaults to the variant's shipped
// term set and may be replaced afterwards.
TaskSpec MakeTask(TaskId id, CostVariant variant, const BipedParams& biped = {});

// Default cost term sets ("ours" = shaped stability terms plus push dense
// terms; "hb" = single reward-gap term).
CostSpec DefaultCostSpec(TaskId id, CostVariant variant);

// ----- residuals ------------------------------------------------------------

double ResidualHeadHeight(const ModelSpec& model, const State& state, const TaskSpec& task);
double ResidualPelvisFeet(const ModelSpec& model, const State& state, const TaskSpec& task);
Vec2 ResidualComVelocity(const ModelSpec& model, const State& state, const TaskSpec& task,
                         const Goal& goal);
double ResidualBalance(const ModelSpec& model, const State& state, const TaskSpec& task);
VecU ResidualPosture(const ModelSpec& model, const State& state, const TaskSpec& task);
double ResidualFacing(const ModelSpec& model, const State& state, const TaskSpec& task);
double ResidualBoxTarget(const ModelSpec& model, const State& state, const Goal& goal);
Vec2 ResidualHandObject(const ModelSpec& model, const State& state, const std::string& side);

// Benchmark-style instantaneous reward in [0, 1].
double HbReward(const ModelSpec& model, const State& state, const ControlVector& control,
                const TaskSpec& task, const Goal& goal);

struct TerminationResult {
  bool terminate = false;
  Goal goal;
  bool respawned = false;
};

TerminationResult CheckTerminationAndRespawn(const TaskSpec& task, const State& state,
                                             const Goal& goal, std::mt19937_64& rng);

// Canonical posture with the feet resting on the ground (zero penetration).
State CanonicalState(const TaskSpec& task);

// Canonical posture plus uniform joint noise; zero velocities; box at its
// configured start. Deterministic per generator state.
State InitialState(const TaskSpec& task, std::mt19937_64& rng);

// ----- residual registry ----------------------------------------------------

// Evaluates the residual slice layout of a CostSpec in one kinematics pass.
class ResidualSet {
 public:
  ResidualSet(const TaskSpec& task, const CostSpec& spec);

  const std::vector<int>& sizes() const { return sizes_; }
  int TotalDim() const { return total_dim_; }

  void Eval(const State& state, const ControlVector& control, const Goal& goal,
            ResidualVector* out) const;

  static bool IsKnown(const std::string& id);

 private:
  const TaskSpec* task_;
  std::vector<int> kinds_;  // dispatch index per term
  std::vector<int> sizes_;
  int total_dim_ = 0;
};

// CostFunction over a task's residual registry. Residual Jacobians are
// central finite differences over [q; v; u] with the linearize() step rule.
class TaskCost : public CostFunction {
 public:
  TaskCost(const TaskSpec& task, const Goal& goal);

  void SetGoal(const Goal& goal) { goal_ = goal; }
  const Goal& goal() const { return goal_; }

  int StateDim() const override { return 2 * task_->model.ndof(); }
  int ControlDim() const override { return task_->model.nu(); }

  double Eval(const State& state, const ControlVector& control) const override;
  double Terminal(const State& state) const override;
  void Quadratics(const State& state, const ControlVector& control, Eigen::VectorXd* gradient,
                  Eigen::MatrixXd* hessian) const override;
  void TerminalQuadratics(const State& state, Eigen::VectorXd* gradient,
                          Eigen::MatrixXd* hessian) const override;

  void Residuals(const State& state, const ControlVector& control, ResidualVector* out) const;

 private:
  const TaskSpec* task_;
  Goal goal_;
  ResidualSet residuals_;
};

}  // namespace horizon

#endif  // HORIZON_TASK_H_

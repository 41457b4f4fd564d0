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

#include <cmath>
#include <limits>
#include <vector>

#include "horizon/planner.h"

namespace horizon {

namespace {

Eigen::VectorXd StackState(const State& s) {
  const int n = static_cast<int>(s.q.size());
  Eigen::VectorXd x(2 * n);
  x.head(n) = s.q;
  x.tail(n) = s.v;
  return x;
}

struct Expansion {
  std::vector<MatA> a;
  std::vector<MatB> b;
  std::vector<Eigen::VectorXd> grad;   // (nx + nu)
  std::vector<Eigen::MatrixXd> hess;   // (nx + nu)^2
  Eigen::VectorXd terminal_grad;
  Eigen::MatrixXd terminal_hess;
};

struct BackwardResult {
  std::vector<Eigen::VectorXd> k;   // feedforward
  std::vector<Eigen::MatrixXd> gains;
  bool ok = false;
};

// Riccati-style sweep with a Levenberg-Marquardt shift on the control block.
BackwardResult BackwardPass(const Expansion& exp, int horizon, int nx, int nu, double lambda) {
  BackwardResult out;
  out.k.resize(horizon);
  out.gains.resize(horizon);

  Eigen::VectorXd vx = exp.terminal_grad;
  Eigen::MatrixXd vxx = exp.terminal_hess;
  const Eigen::MatrixXd reg = lambda * Eigen::MatrixXd::Identity(nu, nu);

  for (int t = horizon - 1; t >= 0; --t) {
    const auto& a = exp.a[t];
    const auto& b = exp.b[t];
    const Eigen::VectorXd qx = exp.grad[t].head(nx) + a.transpose() * vx;
    const Eigen::VectorXd qu = exp.grad[t].tail(nu) + b.transpose() * vx;
    const Eigen::MatrixXd qxx = exp.hess[t].topLeftCorner(nx, nx) + a.transpose() * vxx * a;
    const Eigen::MatrixXd quu = exp.hess[t].bottomRightCorner(nu, nu) + b.transpose() * vxx * b;
    const Eigen::MatrixXd qux = exp.hess[t].bottomLeftCorner(nu, nx) + b.transpose() * vxx * a;

    Eigen::LLT<Eigen::MatrixXd> llt(quu + reg);
    if (llt.info() != Eigen::Success) return out;
    out.k[t] = -llt.solve(qu);
    out.gains[t] = -llt.solve(qux);

    const Eigen::MatrixXd& kt = out.gains[t];
    vx = qx + kt.transpose() * (quu * out.k[t] + qu) + qux.transpose() * out.k[t];
    vxx = qxx + kt.transpose() * (quu * kt + qux) + qux.transpose() * kt;
    vxx = 0.5 * (vxx + vxx.transpose()).eval();
    if (!vx.allFinite() || !vxx.allFinite() || !out.k[t].allFinite() || !kt.allFinite())
      return out;
  }
  out.ok = true;
  return out;
}

Plan PackPlan(const std::vector<ControlVector>& controls, const std::vector<State>& states,
              const BackwardResult* backward, double horizon_s, int nu) {
  const int steps = static_cast<int>(controls.size());
  Plan plan;
  plan.horizon_s = horizon_s;
  plan.knots.resize(nu, steps + 1);
  for (int t = 0; t < steps; ++t) plan.knots.col(t) = controls[t];
  plan.knots.col(steps) = controls[steps - 1];
  if (backward != nullptr) {
    IlqgData data;
    data.nominal_states.reserve(states.size());
    for (const State& s : states) data.nominal_states.push_back(StackState(s));
    data.gains = backward->gains;
    plan.ilqg.push_back(std::move(data));
  }
  return plan;
}

}  // namespace

Plan IlqgPlan(const ModelSpec& model, const CostFunction& cost, const State& state,
              const Plan& warm_start, const PlannerConfig& config, IlqgStats* stats) {
  config.Validate();
  warm_start.Validate();
  if (std::abs(warm_start.horizon_s - config.horizon_s) > 1e-9)
    throw ContractViolation("warm start horizon does not match planner config");

  const int horizon = config.HorizonSteps(model.control_dt);
  const int nx = 2 * model.ndof();
  const int nu = model.nu();
  const double dt = model.control_dt;

  // Nominal rollout from the warm start.
  std::vector<ControlVector> controls(horizon);
  std::vector<State> states;
  states.reserve(horizon + 1);
  states.push_back(state);
  double nominal_cost = 0.0;
  bool nominal_ok = true;
  for (int t = 0; t < horizon; ++t) {
    controls[t] = ClampControl(model, warm_start.Sample(t * dt));
    nominal_cost += cost.Eval(states.back(), controls[t]);
    try {
      states.push_back(Step(model, states.back(), controls[t]));
    } catch (const SimulationDiverged&) {
      nominal_ok = false;
      break;
    }
  }
  if (nominal_ok) nominal_cost += cost.Terminal(states.back());
  if (stats != nullptr) {
    *stats = IlqgStats{};
    stats->initial_cost = nominal_ok ? nominal_cost : std::numeric_limits<double>::infinity();
  }
  if (!nominal_ok || !std::isfinite(nominal_cost)) {
    Plan out = warm_start;
    out.degraded = true;
    return out;
  }

  Expansion exp;
  exp.a.resize(horizon);
  exp.b.resize(horizon);
  exp.grad.resize(horizon);
  exp.hess.resize(horizon);

  double lambda = config.lambda_init;
  bool expansion_stale = true;
  bool any_accepted = false;
  const BackwardResult* accepted_backward = nullptr;
  BackwardResult backward_store;

  for (int iter = 0; iter < config.iterations; ++iter) {
    if (stats != nullptr) stats->iterations_run = iter + 1;
    if (expansion_stale) {
      bool ok = true;
      try {
        for (int t = 0; t < horizon; ++t) {
          Linearize(model, states[t], controls[t], &exp.a[t], &exp.b[t]);
          cost.Quadratics(states[t], controls[t], &exp.grad[t], &exp.hess[t]);
        }
        cost.TerminalQuadratics(states.back(), &exp.terminal_grad, &exp.terminal_hess);
      } catch (const SimulationDiverged&) {
        ok = false;
      }
      if (!ok) {
        lambda *= config.lambda_scale;
        if (lambda > config.lambda_max) break;
        continue;
      }
      expansion_stale = false;
    }

    BackwardResult backward = BackwardPass(exp, horizon, nx, nu, lambda);
    if (!backward.ok) {
      lambda *= config.lambda_scale;
      if (lambda > config.lambda_max) break;
      continue;
    }

    // Backtracking line search on the feedforward step.
    bool accepted = false;
    double alpha = 1.0;
    for (int ls = 0; ls < config.line_search_steps; ++ls, alpha *= 0.5) {
      std::vector<ControlVector> new_controls(horizon);
      std::vector<State> new_states;
      new_states.reserve(horizon + 1);
      new_states.push_back(state);
      double new_cost = 0.0;
      bool ok = true;
      for (int t = 0; t < horizon; ++t) {
        const Eigen::VectorXd dx = StackState(new_states.back()) - StackState(states[t]);
        const Eigen::VectorXd du = alpha * backward.k[t] + backward.gains[t] * dx;
        ControlVector u = controls[t];
        u += du;
        u = ClampControl(model, u);
        new_controls[t] = u;
        new_cost += cost.Eval(new_states.back(), u);
        if (!std::isfinite(new_cost)) {
          ok = false;
          break;
        }
        try {
          new_states.push_back(Step(model, new_states.back(), u));
        } catch (const SimulationDiverged&) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      new_cost += cost.Terminal(new_states.back());
      if (std::isfinite(new_cost) && new_cost < nominal_cost) {
        controls = std::move(new_controls);
        states = std::move(new_states);
        nominal_cost = new_cost;
        backward_store = std::move(backward);
        accepted_backward = &backward_store;
        accepted = true;
        any_accepted = true;
        if (stats != nullptr) stats->accepted_costs.push_back(new_cost);
        break;
      }
    }

    if (accepted) {
      lambda = std::max(lambda / config.lambda_scale, config.lambda_init);
      expansion_stale = true;
    } else {
      lambda *= config.lambda_scale;
      if (lambda > config.lambda_max) break;
    }
  }

  if (!any_accepted) {
    Plan out = warm_start;
    out.degraded = lambda > config.lambda_max;
    return out;
  }
  return PackPlan(controls, states, accepted_backward, config.horizon_s, nu);
}

}  // namespace horizon

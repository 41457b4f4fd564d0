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

#ifndef HORIZON_COST_H_
#define HORIZON_COST_H_

#include <string>
#include <vector>

#include "horizon/model.h"
#include "horizon/norms.h"
#include "horizon/types.h"

namespace horizon {

// One weighted, normed residual term: w * sum_elements n(r_elem). Vector
// residuals are normed element-wise and summed.
struct CostTerm {
  std::string residual;  // id in the task residual registry
  Norm norm;
  double weight = 1.0;
};

struct CostSpec {
  std::string name;
  std::vector<CostTerm> terms;

  void Validate() const;
};

// Flattened residual values with the per-term slice layout of a CostSpec.
struct ResidualVector {
  std::vector<int> offsets;  // one per term
  std::vector<int> sizes;    // one per term
  Eigen::VectorXd values;

  int TermCount() const { return static_cast<int>(sizes.size()); }
  Eigen::VectorBlock<Eigen::VectorXd> Term(int i) { return values.segment(offsets[i], sizes[i]); }
  Eigen::VectorBlock<const Eigen::VectorXd> Term(int i) const {
    return values.segment(offsets[i], sizes[i]);
  }
};

// c = sum_i w_i * sum_e n_i(r_ie). Throws on layout mismatch.
double CostEval(const CostSpec& spec, const ResidualVector& residuals);

// Gradient and Gauss-Newton Hessian of the cost over the differentiation
// variables (columns of the term Jacobians). Residual curvature is dropped:
//   grad = sum w_i J_i^T n'_i,   hess = sum w_i J_i^T diag(n''_i) J_i.
void CostDerivatives(const CostSpec& spec, const ResidualVector& residuals,
                     const std::vector<Eigen::MatrixXd>& term_jacobians,
                     Eigen::VectorXd* gradient, Eigen::MatrixXd* hessian);

// Planner-facing cost interface: running cost over (state, control), terminal
// cost over state, and Gauss-Newton quadratic expansions over [q; v; u].
class CostFunction {
 public:
  virtual ~CostFunction() = default;

  virtual int StateDim() const = 0;    // 2 * ndof
  virtual int ControlDim() const = 0;

  virtual double Eval(const State& state, const ControlVector& control) const = 0;
  virtual double Terminal(const State& state) const = 0;

  // gradient: (StateDim + ControlDim); hessian: square of the same.
  virtual void Quadratics(const State& state, const ControlVector& control,
                          Eigen::VectorXd* gradient, Eigen::MatrixXd* hessian) const = 0;
  virtual void TerminalQuadratics(const State& state, Eigen::VectorXd* gradient,
                                  Eigen::MatrixXd* hessian) const = 0;
};

}  // namespace horizon

#endif  // HORIZON_COST_H_

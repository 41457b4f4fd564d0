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

#include "horizon/cost.h"

#include <set>

namespace horizon {

void CostSpec::Validate() const {
  if (terms.empty()) throw ContractViolation("cost spec has no terms: " + name);
  std::set<std::string> seen;
  for (const CostTerm& t : terms) {
    if (t.weight < 0.0) throw ContractViolation("negative weight on term: " + t.residual);
    if (t.norm.kind == NormKind::kSmoothAbs && !(t.norm.p > 0.0))
      throw ContractViolation("smooth-abs p must be positive on term: " + t.residual);
    if (!seen.insert(t.residual).second)
      throw ContractViolation("duplicate residual id in spec: " + t.residual);
  }
}

double CostEval(const CostSpec& spec, const ResidualVector& residuals) {
  if (residuals.TermCount() != static_cast<int>(spec.terms.size()))
    throw ContractViolation("residual layout does not match cost spec");
  double cost = 0.0;
  for (int i = 0; i < residuals.TermCount(); ++i) {
    const CostTerm& term = spec.terms[i];
    double term_sum = 0.0;
    const auto r = residuals.Term(i);
    for (int e = 0; e < r.size(); ++e) term_sum += NormEval(term.norm, r(e)).value;
    cost += term.weight * term_sum;
  }
  return cost;
}

void CostDerivatives(const CostSpec& spec, const ResidualVector& residuals,
                     const std::vector<Eigen::MatrixXd>& term_jacobians,
                     Eigen::VectorXd* gradient, Eigen::MatrixXd* hessian) {
  if (residuals.TermCount() != static_cast<int>(spec.terms.size()) ||
      term_jacobians.size() != spec.terms.size())
    throw ContractViolation("residual layout does not match cost spec");

  const int dim = term_jacobians.empty() ? 0 : static_cast<int>(term_jacobians[0].cols());
  gradient->setZero(dim);
  hessian->setZero(dim, dim);

  for (int i = 0; i < residuals.TermCount(); ++i) {
    const CostTerm& term = spec.terms[i];
    const auto r = residuals.Term(i);
    const Eigen::MatrixXd& jac = term_jacobians[i];
    if (jac.rows() != r.size() || jac.cols() != dim)
      throw ContractViolation("jacobian rows do not match residual layout: " + term.residual);
    for (int e = 0; e < r.size(); ++e) {
      const NormValue n = NormEval(term.norm, r(e));
      gradient->noalias() += term.weight * n.d1 * jac.row(e).transpose();
      hessian->noalias() += term.weight * n.d2 * (jac.row(e).transpose() * jac.row(e));
    }
  }
}

}  // namespace horizon

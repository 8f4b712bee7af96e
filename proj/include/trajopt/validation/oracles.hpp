// Copyright 2026 The trajopt Authors
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

#ifndef TRAJOPT_VALIDATION_ORACLES_HPP_
#define TRAJOPT_VALIDATION_ORACLES_HPP_

#include <Eigen/Core>
#include <functional>
#include <vector>

// Reference implementations used to cross-check the production code paths.
// Everything here is deliberately simple and direct: central finite
// differences, a textbook Riccati recursion, projected gradient descent and
// exhaustive active-set enumeration. None of it shares code with the solvers
// it validates.
namespace trajopt {
namespace validation {

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using ScalarFn = std::function<double(const Eigen::VectorXd&)>;

// Central-difference Jacobian with step h.
Eigen::MatrixXd fd_jacobian(const VectorFn& fn, const Eigen::VectorXd& x,
                            double h = 1e-6);

// Second-order central differences: one symmetric Hessian per output.
std::vector<Eigen::MatrixXd> fd_hessian_stack(const VectorFn& fn,
                                              const Eigen::VectorXd& x,
                                              double h = 1e-4);

Eigen::VectorXd fd_gradient(const ScalarFn& fn, const Eigen::VectorXd& x,
                            double h = 1e-6);
Eigen::MatrixXd fd_hessian(const ScalarFn& fn, const Eigen::VectorXd& x,
                           double h = 1e-4);

// Finite-horizon discrete LQR for cost sum x'Qx + u'Ru (+ final x'Qf x) and
// dynamics x' = A x + B u.
struct LqrSolution {
  std::vector<Eigen::MatrixXd> gain;   // u = gain[k] x, length N
  std::vector<Eigen::MatrixXd> value;  // P_k, length N + 1
  double optimal_cost = 0.0;           // from the given initial state
};

LqrSolution riccati_lqr(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                        const Eigen::MatrixXd& qf, const Eigen::VectorXd& x0,
                        int horizon);

// Description of a product-of-cones feasible set: per block either a planar
// friction cone (dim 2, |f_t| <= mu f_n) or a half-line (dim 1, f >= 0).
struct ConeBlockSpec {
  int dim = 2;
  double mu = 0.0;
};

// Euclidean projection of a point onto a single cone block, computed by
// enumerating the KKT active sets (interior, apex, either boundary ray).
Eigen::VectorXd cone_projection_qp(const Eigen::VectorXd& y, double mu);

// Projected gradient descent for min 1/2 f'Bf + f'r over a product of cones,
// run to a tight fixed-point tolerance.
Eigen::VectorXd projected_gradient_cone_qp(const Eigen::MatrixXd& b,
                                           const Eigen::VectorXd& r,
                                           const std::vector<ConeBlockSpec>& blocks,
                                           double tol = 1e-12,
                                           int max_iters = 2000000);

}  // namespace validation
}  // namespace trajopt

#endif  // TRAJOPT_VALIDATION_ORACLES_HPP_

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

#ifndef TRAJOPT_INTEGRATORS_HPP_
#define TRAJOPT_INTEGRATORS_HPP_

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <vector>

#include "trajopt/autodiff.hpp"
#include "trajopt/linsolve.hpp"
#include "trajopt/model.hpp"
#include "trajopt/rbd.hpp"
#include "trajopt/rbd_core.hpp"

namespace trajopt {
namespace integ {

enum class SchemeKind { kExplicitForwardEuler, kImplicitBackwardEuler };

struct StepScheme {
  SchemeKind kind = SchemeKind::kExplicitForwardEuler;
  double h = 0.01;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
};

struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Which algebraic form the step residual g(x', x, u) = 0 takes. The wrapped
// form rewrites an explicit step map as g = f(x, u) - x'; the inverse-dynamics
// form expresses the same explicit step through the momentum balance at the
// current state; backward Euler evaluates the dynamics at the next state.
enum class ResidualForm {
  kExplicitWrapped,
  kExplicitInverseDynamics,
  kBackwardEuler,
};

// Step residual with its derivatives over the stacked argument
// z = (x', x, u). Second-order slices are filled only on request.
struct DynamicsResidual {
  Eigen::VectorXd g;
  Eigen::MatrixXd jac;                // nx rows, 2 nx + nu columns
  std::vector<Eigen::MatrixXd> hess;  // nx slices over z, optional
  int nx = 0;
  int nu = 0;

  auto g_xp() const { return jac.leftCols(nx); }
  auto g_x() const { return jac.middleCols(nx, nx); }
  auto g_u() const { return jac.rightCols(nu); }
  bool has_second() const { return !hess.empty(); }

  // sum_i s_i hess_i, the only reduction of the tensor the solver needs.
  Eigen::MatrixXd contract_second(const Eigen::VectorXd& s) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(jac.cols(), jac.cols());
    for (int i = 0; i < nx; ++i) out += s[i] * hess[i];
    return out;
  }

  enum class Block { kNext = 0, kCurrent = 1, kControl = 2 };
  int block_offset(Block b) const {
    switch (b) {
      case Block::kNext: return 0;
      case Block::kCurrent: return nx;
      default: return 2 * nx;
    }
  }
  int block_dim(Block b) const { return b == Block::kControl ? nu : nx; }

  // Named second-order tensor, e.g. (kNext, kCurrent) is g_{x'x}.
  ad::JetTensor tensor_block(Block a, Block b) const {
    std::vector<Eigen::MatrixXd> slices(nx);
    for (int i = 0; i < nx; ++i) {
      slices[i] = hess[i].block(block_offset(a), block_offset(b), block_dim(a),
                                block_dim(b));
    }
    return ad::JetTensor::second_order_tensor(std::move(slices), block_dim(a),
                                              block_dim(b));
  }
};

// Generic damped Newton iteration on a residual given separate value and
// Jacobian callbacks. Step lengths are halved until the residual norm drops.
struct NewtonResult {
  Eigen::VectorXd x;
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;
};

NewtonResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& jacobian,
    Eigen::VectorXd x0, const NewtonOptions& opts);

// One explicit forward-Euler step: q' = q + h v, v' = v + h vdot(q, v, u, f).
// `forces` is the stacked force vector over all declared contacts; it may be
// empty. Throws StepFailure on non-finite results.
rbd::State explicit_step(const rbd::RobotModel& m, const StepScheme& scheme,
                         const rbd::State& s, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& forces = {});

// Residual values only, in the form implied by the scheme (wrapped explicit
// or backward Euler). Contact forces enter as fixed data.
Eigen::VectorXd implicit_residual(const rbd::RobotModel& m,
                                  const StepScheme& scheme,
                                  const Eigen::VectorXd& x_next,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& forces = {});

// Residual derivatives of a chosen form. order 2 fills the tensor slices.
DynamicsResidual residual_derivatives(const rbd::RobotModel& m,
                                      ResidualForm form, double h,
                                      const Eigen::VectorXd& x_next,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& forces, int order);

// Scheme-driven overload: explicit maps to the wrapped form, implicit to
// backward Euler.
DynamicsResidual residual_derivatives(const rbd::RobotModel& m,
                                      const StepScheme& scheme,
                                      const Eigen::VectorXd& x_next,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& forces, int order);

// Backward-Euler step by Newton iteration with contact forces held fixed.
// Throws StepFailure when the iteration does not reach `opts.tol`.
rbd::State implicit_step(const rbd::RobotModel& m, const StepScheme& scheme,
                         const rbd::State& s, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& forces = {},
                         const NewtonOptions& opts = {});

namespace detail {

// Momentum-balance residual blocks shared by the scalar-generic forms.
// z = (q', v', q, v, u).
template <class T>
rbd::VecXT<T> residual_form_eval(const rbd::RobotModel& m, ResidualForm form,
                                 double h, const rbd::VecXT<T>& z,
                                 const Eigen::VectorXd& forces) {
  const int nv = m.n_v();
  const int nu = m.n_u();
  const rbd::VecXT<T> qn = z.segment(0, nv);
  const rbd::VecXT<T> vn = z.segment(nv, nv);
  const rbd::VecXT<T> q = z.segment(2 * nv, nv);
  const rbd::VecXT<T> v = z.segment(3 * nv, nv);
  const rbd::VecXT<T> u = z.segment(4 * nv, nu);

  rbd::VecXT<T> actuation = rbd::VecXT<T>::Zero(nv);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nu; ++j) actuation[i] += T(m.actuation(i, j)) * u[j];
  }

  rbd::VecXT<T> g(2 * nv);
  const T inv_h = T(1.0 / h);
  const rbd::VecXT<T> vdot = (vn - v) * inv_h;

  if (form == ResidualForm::kBackwardEuler) {
    g.head(nv) = qn - q - vn * T(h);
    rbd::VecXT<T> dyn = rbd::rnea<T>(m, qn, vn, vdot) - actuation;
    if (forces.size() > 0) {
      const auto kin = rbd::forward_kinematics<T>(
          m, qn, vn, rbd::VecXT<T>::Zero(nv), false);
      for (size_t ci = 0; ci < m.contact_points.size(); ++ci) {
        const auto& cp = m.contact_points[ci];
        const int at = m.contact_row_offset(static_cast<int>(ci));
        const auto rows = rbd::contact_jacobian_rows<T>(m, kin, cp);
        for (int r = 0; r < cp.rows(); ++r) {
          const double fr = forces[at + r];
          if (fr == 0.0) continue;
          dyn -= rows.row(r).transpose() * T(fr);
        }
      }
    }
    g.tail(nv) = dyn * T(h);
    return g;
  }

  // Explicit forward Euler written as a momentum balance at the current state.
  g.head(nv) = qn - q - v * T(h);
  rbd::VecXT<T> dyn = rbd::rnea<T>(m, q, v, vdot) - actuation;
  if (forces.size() > 0) {
    const auto kin =
        rbd::forward_kinematics<T>(m, q, v, rbd::VecXT<T>::Zero(nv), false);
    for (size_t ci = 0; ci < m.contact_points.size(); ++ci) {
      const auto& cp = m.contact_points[ci];
      const int at = m.contact_row_offset(static_cast<int>(ci));
      const auto rows = rbd::contact_jacobian_rows<T>(m, kin, cp);
      for (int r = 0; r < cp.rows(); ++r) {
        const double fr = forces[at + r];
        if (fr == 0.0) continue;
        dyn -= rows.row(r).transpose() * T(fr);
      }
    }
  }
  g.tail(nv) = dyn * T(h);
  return g;
}

// Explicit step map lifted over duals (mass-matrix solve included), used by
// the wrapped residual form and the classical derivative path.
template <class T>
rbd::VecXT<T> explicit_step_eval(const rbd::RobotModel& m, double h,
                                 const rbd::VecXT<T>& x,
                                 const rbd::VecXT<T>& u,
                                 const Eigen::VectorXd& forces) {
  const int nv = m.n_v();
  const int nu = m.n_u();
  const rbd::VecXT<T> q = x.segment(0, nv);
  const rbd::VecXT<T> v = x.segment(nv, nv);

  rbd::VecXT<T> rhs = -rbd::rnea<T>(m, q, v, rbd::VecXT<T>::Zero(nv));
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nu; ++j) rhs[i] += T(m.actuation(i, j)) * u[j];
  }
  if (forces.size() > 0) {
    const auto kin =
        rbd::forward_kinematics<T>(m, q, v, rbd::VecXT<T>::Zero(nv), false);
    for (size_t ci = 0; ci < m.contact_points.size(); ++ci) {
      const auto& cp = m.contact_points[ci];
      const int at = m.contact_row_offset(static_cast<int>(ci));
      const auto rows = rbd::contact_jacobian_rows<T>(m, kin, cp);
      for (int r = 0; r < cp.rows(); ++r) {
        const double fr = forces[at + r];
        if (fr == 0.0) continue;
        rhs += rows.row(r).transpose() * T(fr);
      }
    }
  }

  // Mass matrix assembled column-wise from the scalar-generic inverse
  // dynamics, then solved with the pivoted dense routine.
  const rbd::VecXT<T> zero = rbd::VecXT<T>::Zero(nv);
  const rbd::VecXT<T> grav = rbd::rnea<T>(m, q, zero, zero);
  rbd::MatXT<T> mass(nv, nv);
  for (int j = 0; j < nv; ++j) {
    rbd::VecXT<T> e = rbd::VecXT<T>::Zero(nv);
    e[j] = T(1);
    mass.col(j) = rbd::rnea<T>(m, q, zero, e) - grav;
  }
  const rbd::VecXT<T> vdot = linear_solve<T>(mass, rhs);

  rbd::VecXT<T> next(2 * nv);
  next.head(nv) = q + v * T(h);
  next.tail(nv) = v + vdot * T(h);
  return next;
}

}  // namespace detail

}  // namespace integ
}  // namespace trajopt

#endif  // TRAJOPT_INTEGRATORS_HPP_

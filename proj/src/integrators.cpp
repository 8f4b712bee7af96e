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

#include "trajopt/integrators.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace trajopt {
namespace integ {

namespace {

bool all_finite(const Eigen::VectorXd& x) {
  return x.allFinite();
}

Eigen::VectorXd stack_z(const Eigen::VectorXd& x_next, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& u) {
  Eigen::VectorXd z(x_next.size() + x.size() + u.size());
  z << x_next, x, u;
  return z;
}

}  // namespace

NewtonResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& jacobian,
    Eigen::VectorXd x0, const NewtonOptions& opts) {
  NewtonResult out;
  out.x = std::move(x0);
  Eigen::VectorXd g = residual(out.x);
  double norm = g.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < opts.max_iter; ++it) {
    if (!std::isfinite(norm)) break;
    if (norm <= opts.tol) {
      out.converged = true;
      break;
    }
    const Eigen::MatrixXd jac = jacobian(out.x);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const Eigen::VectorXd step = lu.solve(-g);
    if (!all_finite(step)) break;

    // Halving backtracking on the residual norm.
    double alpha = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      const Eigen::VectorXd candidate = out.x + alpha * step;
      const Eigen::VectorXd gc = residual(candidate);
      const double nc = gc.lpNorm<Eigen::Infinity>();
      if (std::isfinite(nc) && nc < norm) {
        out.x = candidate;
        g = gc;
        norm = nc;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    ++out.iterations;
    if (!improved) break;
  }
  if (!out.converged && norm <= opts.tol && std::isfinite(norm)) {
    out.converged = true;
  }
  out.residual_norm = norm;
  return out;
}

rbd::State explicit_step(const rbd::RobotModel& m, const StepScheme& scheme,
                         const rbd::State& s, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& forces) {
  const Eigen::VectorXd vdot = rbd::forward_dynamics(m, s, u, forces);
  rbd::State next;
  next.q = s.q + scheme.h * s.v;
  next.v = s.v + scheme.h * vdot;
  if (!all_finite(next.q) || !all_finite(next.v)) {
    throw StepFailure("explicit_step: non-finite state");
  }
  return next;
}

Eigen::VectorXd implicit_residual(const rbd::RobotModel& m,
                                  const StepScheme& scheme,
                                  const Eigen::VectorXd& x_next,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& forces) {
  const ResidualForm form = scheme.kind == SchemeKind::kImplicitBackwardEuler
                                ? ResidualForm::kBackwardEuler
                                : ResidualForm::kExplicitWrapped;
  if (form == ResidualForm::kExplicitWrapped) {
    const Eigen::VectorXd fx =
        detail::explicit_step_eval<double>(m, scheme.h, x, u, forces);
    return fx - x_next;
  }
  const Eigen::VectorXd z = stack_z(x_next, x, u);
  return detail::residual_form_eval<double>(m, form, scheme.h, z, forces);
}

DynamicsResidual residual_derivatives(const rbd::RobotModel& m,
                                      ResidualForm form, double h,
                                      const Eigen::VectorXd& x_next,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& forces,
                                      int order) {
  const int nx = m.nx();
  const int nu = m.n_u();
  DynamicsResidual out;
  out.nx = nx;
  out.nu = nu;
  const Eigen::VectorXd z = stack_z(x_next, x, u);

  const auto eval = [&m, form, h, nx, nu, &forces](const auto& zz) {
    using Vec = std::decay_t<decltype(zz)>;
    if (form == ResidualForm::kExplicitWrapped) {
      const Vec xx = zz.segment(nx, nx);
      const Vec uu = zz.segment(2 * nx, nu);
      Vec g = detail::explicit_step_eval(m, h, xx, uu, forces);
      g -= zz.segment(0, nx);
      return g;
    }
    return detail::residual_form_eval(m, form, h, zz, forces);
  };

  auto [value, jac] = ad::value_and_jacobian(eval, z);
  out.g = std::move(value);
  out.jac = std::move(jac);
  if (order >= 2) {
    ad::JetTensor tensor = ad::second_order(eval, z);
    out.hess.reserve(nx);
    for (int i = 0; i < nx; ++i) out.hess.push_back(tensor.slice(i));
  }
  return out;
}

DynamicsResidual residual_derivatives(const rbd::RobotModel& m,
                                      const StepScheme& scheme,
                                      const Eigen::VectorXd& x_next,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& forces,
                                      int order) {
  const ResidualForm form = scheme.kind == SchemeKind::kImplicitBackwardEuler
                                ? ResidualForm::kBackwardEuler
                                : ResidualForm::kExplicitWrapped;
  return residual_derivatives(m, form, scheme.h, x_next, x, u, forces, order);
}

rbd::State implicit_step(const rbd::RobotModel& m, const StepScheme& scheme,
                         const rbd::State& s, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& forces,
                         const NewtonOptions& opts) {
  const int nx = m.nx();
  const Eigen::VectorXd x = s.to_vector();

  const auto value = [&](const Eigen::VectorXd& xn) {
    const Eigen::VectorXd z = stack_z(xn, x, u);
    return detail::residual_form_eval<double>(m, ResidualForm::kBackwardEuler,
                                              scheme.h, z, forces);
  };
  const auto jac = [&](const Eigen::VectorXd& xn) {
    const auto eval = [&](const auto& xnn) {
      using Vec = std::decay_t<decltype(xnn)>;
      Vec z(2 * nx + m.n_u());
      for (int i = 0; i < nx; ++i) z[i] = xnn[i];
      for (int i = 0; i < nx; ++i) z[nx + i] = x[i];
      for (int i = 0; i < m.n_u(); ++i) z[2 * nx + i] = u[i];
      return detail::residual_form_eval(m, ResidualForm::kBackwardEuler,
                                        scheme.h, z, forces);
    };
    return ad::jacobian(eval, xn).matrix();
  };

  // Constant-velocity predictor.
  Eigen::VectorXd x0(nx);
  x0 << s.q + scheme.h * s.v, s.v;

  const NewtonResult result = newton_solve(value, jac, std::move(x0), opts);
  if (!result.converged) {
    throw StepFailure("implicit_step: Newton iteration stalled at residual " +
                      std::to_string(result.residual_norm));
  }
  return rbd::State::from_vector(result.x);
}

}  // namespace integ
}  // namespace trajopt

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

#include "trajopt/validation/oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trajopt {
namespace validation {

Eigen::MatrixXd fd_jacobian(const VectorFn& fn, const Eigen::VectorXd& x,
                            double h) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd jac;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Eigen::VectorXd col = (fn(xp) - fn(xm)) / (2.0 * h);
    if (jac.size() == 0) jac.resize(col.size(), n);
    jac.col(j) = col;
  }
  return jac;
}

std::vector<Eigen::MatrixXd> fd_hessian_stack(const VectorFn& fn,
                                              const Eigen::VectorXd& x,
                                              double h) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(fn(x).size());
  std::vector<Eigen::MatrixXd> out(m, Eigen::MatrixXd::Zero(n, n));
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[j] += h;
      xpp[k] += h;
      xpm[j] += h;
      xpm[k] -= h;
      xmp[j] -= h;
      xmp[k] += h;
      xmm[j] -= h;
      xmm[k] -= h;
      const Eigen::VectorXd d =
          (fn(xpp) - fn(xpm) - fn(xmp) + fn(xmm)) / (4.0 * h * h);
      for (int i = 0; i < m; ++i) {
        out[i](j, k) = d[i];
        out[i](k, j) = d[i];
      }
    }
  }
  return out;
}

Eigen::VectorXd fd_gradient(const ScalarFn& fn, const Eigen::VectorXd& x,
                            double h) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd g(n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    g[j] = (fn(xp) - fn(xm)) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const ScalarFn& fn, const Eigen::VectorXd& x,
                           double h) {
  const VectorFn wrapped = [&fn](const Eigen::VectorXd& z) {
    Eigen::VectorXd y(1);
    y[0] = fn(z);
    return y;
  };
  return fd_hessian_stack(wrapped, x, h)[0];
}

LqrSolution riccati_lqr(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                        const Eigen::MatrixXd& qf, const Eigen::VectorXd& x0,
                        int horizon) {
  LqrSolution sol;
  sol.value.assign(horizon + 1, Eigen::MatrixXd());
  sol.gain.assign(horizon, Eigen::MatrixXd());
  sol.value[horizon] = qf;
  for (int k = horizon - 1; k >= 0; --k) {
    const Eigen::MatrixXd& p_next = sol.value[k + 1];
    const Eigen::MatrixXd huu = r + b.transpose() * p_next * b;
    const Eigen::MatrixXd hux = b.transpose() * p_next * a;
    const Eigen::MatrixXd gain = -huu.ldlt().solve(hux);
    sol.gain[k] = gain;
    const Eigen::MatrixXd acl = a + b * gain;
    Eigen::MatrixXd p = q + gain.transpose() * r * gain +
                        acl.transpose() * p_next * acl;
    sol.value[k] = 0.5 * (p + p.transpose());
  }
  sol.optimal_cost = x0.dot(sol.value[0] * x0);
  return sol;
}

namespace {

bool in_cone(const Eigen::Vector2d& f, double mu, double slack) {
  return f[1] >= -slack && std::abs(f[0]) <= mu * f[1] + slack;
}

}  // namespace

Eigen::VectorXd cone_projection_qp(const Eigen::VectorXd& y, double mu) {
  if (y.size() == 1) {
    Eigen::VectorXd out(1);
    out[0] = std::max(0.0, y[0]);
    return out;
  }
  if (y.size() != 2) {
    throw std::invalid_argument("cone_projection_qp: expected 1 or 2 components");
  }
  const Eigen::Vector2d p(y[0], y[1]);

  // Candidate minimizers of 1/2 |f - y|^2 over the cone: the point itself,
  // the apex, and the projections onto either boundary ray.
  std::vector<Eigen::Vector2d> candidates;
  if (in_cone(p, mu, 0.0)) candidates.push_back(p);
  candidates.push_back(Eigen::Vector2d::Zero());
  for (const double sign : {-1.0, 1.0}) {
    Eigen::Vector2d dir(sign * mu, 1.0);
    dir.normalize();
    const double s = dir.dot(p);
    if (s >= 0.0) candidates.push_back(s * dir);
  }

  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector2d arg = Eigen::Vector2d::Zero();
  for (const auto& f : candidates) {
    if (!in_cone(f, mu, 1e-14)) continue;
    const double obj = 0.5 * (f - p).squaredNorm();
    if (obj < best) {
      best = obj;
      arg = f;
    }
  }
  return arg;
}

Eigen::VectorXd projected_gradient_cone_qp(const Eigen::MatrixXd& b,
                                           const Eigen::VectorXd& r,
                                           const std::vector<ConeBlockSpec>& blocks,
                                           double tol, int max_iters) {
  const int n = static_cast<int>(r.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  const double lip = eig.eigenvalues().maxCoeff();
  if (lip <= 0.0) {
    throw std::invalid_argument("projected_gradient_cone_qp: B must be positive definite");
  }
  const double step = 1.0 / lip;

  const auto project = [&blocks](Eigen::VectorXd f) {
    int at = 0;
    for (const auto& blk : blocks) {
      f.segment(at, blk.dim) = cone_projection_qp(f.segment(at, blk.dim), blk.mu);
      at += blk.dim;
    }
    return f;
  };

  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXd next = project(f - step * (b * f + r));
    const double change = (next - f).lpNorm<Eigen::Infinity>();
    f = next;
    if (change < tol) break;
  }
  return f;
}

}  // namespace validation
}  // namespace trajopt

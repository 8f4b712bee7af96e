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

#include "trajopt/rbd.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "trajopt/rbd_core.hpp"

namespace trajopt {
namespace rbd {

Eigen::VectorXd rnea(const RobotModel& m, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& v, const Eigen::VectorXd& vdot) {
  return rnea<double>(m, q, v, vdot);
}

Eigen::MatrixXd mass_matrix(const RobotModel& m, const Eigen::VectorXd& q) {
  const int nv = m.n_v();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(nv);
  const Eigen::VectorXd grav = rnea<double>(m, q, zero, zero);
  Eigen::MatrixXd mass(nv, nv);
  for (int j = 0; j < nv; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nv);
    e[j] = 1.0;
    mass.col(j) = rnea<double>(m, q, zero, e) - grav;
  }
  return 0.5 * (mass + mass.transpose());
}

Eigen::VectorXd bias_forces(const RobotModel& m, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& v) {
  return rnea<double>(m, q, v, Eigen::VectorXd::Zero(m.n_v()));
}

Eigen::VectorXd gravity_forces(const RobotModel& m, const Eigen::VectorXd& q) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(m.n_v());
  return rnea<double>(m, q, zero, zero);
}

ContactKinematics contact_kinematics(const RobotModel& m, const State& s) {
  const int nc = static_cast<int>(m.contact_points.size());
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(m.n_v());
  const auto kin = forward_kinematics<double>(m, s.q, s.v, zero, false);

  ContactKinematics out;
  out.phi.resize(nc);
  out.jacobian = Eigen::MatrixXd::Zero(m.contact_rows(), m.n_v());
  out.jdot_v = Eigen::VectorXd::Zero(m.contact_rows());
  for (int i = 0; i < nc; ++i) {
    const ContactPointSpec& c = m.contact_points[i];
    const int at = m.contact_row_offset(i);
    out.phi[i] = contact_gap<double>(m, kin, s.q, c);
    out.jacobian.middleRows(at, c.rows()) = contact_jacobian_rows<double>(m, kin, c);
    if (c.kind == ContactKind::kEnvironment) {
      out.jdot_v.segment<2>(at) = contact_bias_acceleration<double>(m, kin, c);
    }
  }
  return out;
}

Eigen::VectorXd forward_dynamics(const RobotModel& m, const State& s,
                                 const Eigen::VectorXd& tau,
                                 const Eigen::VectorXd& forces) {
  Eigen::VectorXd rhs = m.actuation * tau - bias_forces(m, s.q, s.v);
  if (forces.size() > 0) {
    if (forces.size() != m.contact_rows()) {
      throw std::invalid_argument("forward_dynamics: bad contact force size");
    }
    const ContactKinematics kin = contact_kinematics(m, s);
    rhs += kin.jacobian.transpose() * forces;
  }
  const Eigen::MatrixXd mass = mass_matrix(m, s.q);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(mass);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("forward_dynamics: mass matrix factorization failed");
  }
  return ldlt.solve(rhs);
}

Eigen::VectorXd inverse_dynamics(const RobotModel& m, const State& s,
                                 const Eigen::VectorXd& vdot,
                                 const Eigen::VectorXd& forces) {
  Eigen::VectorXd tau = rnea(m, s.q, s.v, vdot);
  if (forces.size() > 0) {
    if (forces.size() != m.contact_rows()) {
      throw std::invalid_argument("inverse_dynamics: bad contact force size");
    }
    const ContactKinematics kin = contact_kinematics(m, s);
    tau -= kin.jacobian.transpose() * forces;
  }
  return tau;
}

double potential_energy(const RobotModel& m, const Eigen::VectorXd& q) {
  return potential_energy<double>(m, q);
}

double kinetic_energy(const RobotModel& m, const State& s) {
  return kinetic_energy<double>(m, s.q, s.v);
}

double total_energy(const RobotModel& m, const State& s) {
  return potential_energy(m, s.q) + kinetic_energy(m, s);
}

}  // namespace rbd
}  // namespace trajopt

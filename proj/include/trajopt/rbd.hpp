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

#ifndef TRAJOPT_RBD_HPP_
#define TRAJOPT_RBD_HPP_

#include <Eigen/Core>
#include <vector>

#include "trajopt/model.hpp"

namespace trajopt {
namespace rbd {

// Generalized force M(q) vdot + H(q, v); gravity included, contacts excluded.
Eigen::VectorXd rnea(const RobotModel& m, const Eigen::VectorXd& q,
                     const Eigen::VectorXd& v, const Eigen::VectorXd& vdot);

// Symmetric positive definite joint-space inertia, assembled column by column
// from inverse-dynamics calls and symmetrized.
Eigen::MatrixXd mass_matrix(const RobotModel& m, const Eigen::VectorXd& q);

// Coriolis, centrifugal and gravity forces H(q, v).
Eigen::VectorXd bias_forces(const RobotModel& m, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& v);

// Gravity load H(q, 0).
Eigen::VectorXd gravity_forces(const RobotModel& m, const Eigen::VectorXd& q);

// Per-contact gap, Jacobian rows and Jacobian-rate term, stacked in
// declaration order. Row offsets follow RobotModel::contact_row_offset.
struct ContactKinematics {
  Eigen::VectorXd phi;        // one gap per contact point
  Eigen::MatrixXd jacobian;   // contact_rows() x n_v
  Eigen::VectorXd jdot_v;     // contact_rows()
};

ContactKinematics contact_kinematics(const RobotModel& m, const State& s);

// Solves M vdot = S tau - H + J^T f for vdot. `forces` is the stacked force
// vector over all declared contacts (zero rows for inactive ones) and may be
// empty.
Eigen::VectorXd forward_dynamics(const RobotModel& m, const State& s,
                                 const Eigen::VectorXd& tau,
                                 const Eigen::VectorXd& forces = {});

// Returns M vdot + H - J^T f, the generalized force the actuation must supply.
Eigen::VectorXd inverse_dynamics(const RobotModel& m, const State& s,
                                 const Eigen::VectorXd& vdot,
                                 const Eigen::VectorXd& forces = {});

double potential_energy(const RobotModel& m, const Eigen::VectorXd& q);
double kinetic_energy(const RobotModel& m, const State& s);
double total_energy(const RobotModel& m, const State& s);

}  // namespace rbd
}  // namespace trajopt

#endif  // TRAJOPT_RBD_HPP_

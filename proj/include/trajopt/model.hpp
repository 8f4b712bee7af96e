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

#ifndef TRAJOPT_MODEL_HPP_
#define TRAJOPT_MODEL_HPP_

#include <Eigen/Core>
#include <string>
#include <vector>

namespace trajopt {
namespace rbd {

// Planar kinematic chains: an optional floating root (x, z, angle) followed
// by revolute joints. Body i is connected to body i-1 by joints[i].
enum class JointKind { kFloating, kRevolute };

struct JointSpec {
  JointKind kind = JointKind::kRevolute;
  Eigen::Vector2d anchor = Eigen::Vector2d::Zero();  // in the parent frame
  double angle_offset = 0.0;  // frame angle at zero joint coordinate
};

struct LinkSpec {
  double mass = 0.0;
  Eigen::Vector2d com = Eigen::Vector2d::Zero();  // in the body frame
  double inertia = 0.0;                           // about the COM
  double length = 0.0;                            // geometric extent only
};

enum class ContactKind { kEnvironment, kJointLimit };

// Environment contacts are points against the ground plane z = 0 with a
// tangential and a normal force component, ordered (f_t, f_n). Joint limits
// are one-dimensional unilateral contacts on a single coordinate.
struct ContactPointSpec {
  ContactKind kind = ContactKind::kEnvironment;
  std::string name;
  int body = 0;
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
  double mu = 0.0;
  int joint_coord = 0;
  double limit = 0.0;
  int side = +1;  // +1: q <= limit, -1: q >= limit

  static ContactPointSpec environment(std::string name, int body,
                                      const Eigen::Vector2d& offset, double mu);
  static ContactPointSpec upper_limit(std::string name, int joint_coord,
                                      double limit);
  static ContactPointSpec lower_limit(std::string name, int joint_coord,
                                      double limit);

  int rows() const { return kind == ContactKind::kEnvironment ? 2 : 1; }
};

struct RobotModel {
  std::string name;
  std::vector<JointSpec> joints;
  std::vector<LinkSpec> links;
  Eigen::MatrixXd actuation;  // maps joint torques to generalized forces
  double gravity = 9.81;
  std::vector<ContactPointSpec> contact_points;

  int n_bodies() const { return static_cast<int>(links.size()); }
  int n_v() const;
  int n_q() const { return n_v(); }
  int n_u() const { return static_cast<int>(actuation.cols()); }
  int nx() const { return 2 * n_v(); }

  // First generalized-coordinate index of joint i.
  int joint_coord_start(int joint) const;
  // Total stacked force dimension over all declared contacts.
  int contact_rows() const;
  int contact_row_offset(int contact) const;

  void validate() const;  // throws std::invalid_argument on bad parameters
};

struct State {
  Eigen::VectorXd q;
  Eigen::VectorXd v;

  State() = default;
  State(Eigen::VectorXd q_in, Eigen::VectorXd v_in)
      : q(std::move(q_in)), v(std::move(v_in)) {}

  static State zero(const RobotModel& m) {
    return State(Eigen::VectorXd::Zero(m.n_q()), Eigen::VectorXd::Zero(m.n_v()));
  }
  static State from_vector(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size()) / 2;
    return State(x.head(n), x.tail(n));
  }
  Eigen::VectorXd to_vector() const {
    Eigen::VectorXd x(q.size() + v.size());
    x << q, v;
    return x;
  }
};

struct PendulumParams {
  double m1 = 1.0, m2 = 1.0;
  double l1 = 1.0, l2 = 1.0;
  double gravity = 9.81;
  double joint_limit = 3.0 * 3.14159265358979323846;  // symmetric, radians
};

struct LegParams {
  double foot_mass = 1.0, shank_mass = 2.0, thigh_mass = 2.0, torso_mass = 5.0;
  double foot_length = 0.25, shank_length = 0.4, thigh_length = 0.4;
  double foot_clearance = 0.05;   // ankle height above the sole
  double contact_half_span = 0.1; // heel/toe distance from the ankle projection
  double torso_inertia = 0.5;
  double gravity = 9.81;
  double mu = 0.7;
};

// Two point masses at the link tips; q = 0 is the hanging configuration and
// both joints are actuated.
RobotModel make_double_pendulum(const PendulumParams& p = {});

// Floating foot, shank, thigh and a torso-equivalent mass at the hip.
// Coordinates: (x, z, foot angle, ankle, knee, hip); the three joints are
// actuated. Contact points: heel, toe, knee, hip against the ground plane.
RobotModel make_planar_leg(const LegParams& p = {});

}  // namespace rbd
}  // namespace trajopt

#endif  // TRAJOPT_MODEL_HPP_

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

#include "trajopt/model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trajopt {
namespace rbd {

ContactPointSpec ContactPointSpec::environment(std::string name, int body,
                                               const Eigen::Vector2d& offset,
                                               double mu) {
  ContactPointSpec c;
  c.kind = ContactKind::kEnvironment;
  c.name = std::move(name);
  c.body = body;
  c.offset = offset;
  c.mu = mu;
  return c;
}

ContactPointSpec ContactPointSpec::upper_limit(std::string name,
                                               int joint_coord, double limit) {
  ContactPointSpec c;
  c.kind = ContactKind::kJointLimit;
  c.name = std::move(name);
  c.joint_coord = joint_coord;
  c.limit = limit;
  c.side = +1;
  return c;
}

ContactPointSpec ContactPointSpec::lower_limit(std::string name,
                                               int joint_coord, double limit) {
  ContactPointSpec c;
  c.kind = ContactKind::kJointLimit;
  c.name = std::move(name);
  c.joint_coord = joint_coord;
  c.limit = limit;
  c.side = -1;
  return c;
}

int RobotModel::n_v() const {
  int n = 0;
  for (const auto& j : joints) n += j.kind == JointKind::kFloating ? 3 : 1;
  return n;
}

int RobotModel::joint_coord_start(int joint) const {
  int at = 0;
  for (int i = 0; i < joint; ++i) {
    at += joints[i].kind == JointKind::kFloating ? 3 : 1;
  }
  return at;
}

int RobotModel::contact_rows() const {
  int n = 0;
  for (const auto& c : contact_points) n += c.rows();
  return n;
}

int RobotModel::contact_row_offset(int contact) const {
  int at = 0;
  for (int i = 0; i < contact; ++i) at += contact_points[i].rows();
  return at;
}

void RobotModel::validate() const {
  if (joints.size() != links.size()) {
    throw std::invalid_argument("model: one joint per body required");
  }
  for (size_t i = 0; i < joints.size(); ++i) {
    if (joints[i].kind == JointKind::kFloating && i != 0) {
      throw std::invalid_argument("model: floating joint only at the root");
    }
  }
  for (const auto& link : links) {
    if (link.mass <= 0.0) throw std::invalid_argument("model: masses must be positive");
    if (link.inertia < 0.0) throw std::invalid_argument("model: negative inertia");
  }
  if (actuation.rows() != n_v()) {
    throw std::invalid_argument("model: actuation row count must equal n_v");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(actuation);
  if (lu.rank() != actuation.cols()) {
    throw std::invalid_argument("model: actuation matrix must have full column rank");
  }
  for (const auto& c : contact_points) {
    if (c.mu < 0.0) throw std::invalid_argument("model: negative friction coefficient");
    if (c.kind == ContactKind::kJointLimit && c.mu != 0.0) {
      throw std::invalid_argument("model: joint limits are frictionless");
    }
    if (c.kind == ContactKind::kEnvironment &&
        (c.body < 0 || c.body >= n_bodies())) {
      throw std::invalid_argument("model: contact body out of range");
    }
    if (c.kind == ContactKind::kJointLimit &&
        (c.joint_coord < 0 || c.joint_coord >= n_v())) {
      throw std::invalid_argument("model: joint-limit coordinate out of range");
    }
  }
}

RobotModel make_double_pendulum(const PendulumParams& p) {
  RobotModel m;
  m.name = "double-pendulum";
  m.gravity = p.gravity;

  JointSpec shoulder;
  shoulder.kind = JointKind::kRevolute;
  shoulder.anchor = Eigen::Vector2d::Zero();
  shoulder.angle_offset = -std::numbers::pi / 2.0;  // q = 0 hangs down
  JointSpec elbow;
  elbow.kind = JointKind::kRevolute;
  elbow.anchor = Eigen::Vector2d(p.l1, 0.0);
  elbow.angle_offset = 0.0;
  m.joints = {shoulder, elbow};

  LinkSpec link1;
  link1.mass = p.m1;
  link1.com = Eigen::Vector2d(p.l1, 0.0);  // point mass at the tip
  link1.inertia = 0.0;
  link1.length = p.l1;
  LinkSpec link2;
  link2.mass = p.m2;
  link2.com = Eigen::Vector2d(p.l2, 0.0);
  link2.inertia = 0.0;
  link2.length = p.l2;
  m.links = {link1, link2};

  m.actuation = Eigen::MatrixXd::Identity(2, 2);

  m.contact_points = {
      ContactPointSpec::upper_limit("q1_max", 0, p.joint_limit),
      ContactPointSpec::lower_limit("q1_min", 0, -p.joint_limit),
      ContactPointSpec::upper_limit("q2_max", 1, p.joint_limit),
      ContactPointSpec::lower_limit("q2_min", 1, -p.joint_limit),
  };

  m.validate();
  return m;
}

RobotModel make_planar_leg(const LegParams& p) {
  RobotModel m;
  m.name = "planar-leg";
  m.gravity = p.gravity;

  JointSpec root;
  root.kind = JointKind::kFloating;  // (x, z, angle) of the foot
  JointSpec ankle;
  ankle.kind = JointKind::kRevolute;
  ankle.anchor = Eigen::Vector2d::Zero();
  ankle.angle_offset = std::numbers::pi / 2.0;  // shank points up at q = 0
  JointSpec knee;
  knee.kind = JointKind::kRevolute;
  knee.anchor = Eigen::Vector2d(p.shank_length, 0.0);
  JointSpec hip;
  hip.kind = JointKind::kRevolute;
  hip.anchor = Eigen::Vector2d(p.thigh_length, 0.0);
  m.joints = {root, ankle, knee, hip};

  LinkSpec foot;
  foot.mass = p.foot_mass;
  foot.com = Eigen::Vector2d(0.0, -p.foot_clearance / 2.0);
  foot.inertia = p.foot_mass *
                 (p.foot_length * p.foot_length + p.foot_clearance * p.foot_clearance) / 12.0;
  foot.length = p.foot_length;
  LinkSpec shank;
  shank.mass = p.shank_mass;
  shank.com = Eigen::Vector2d(p.shank_length / 2.0, 0.0);
  shank.inertia = p.shank_mass * p.shank_length * p.shank_length / 12.0;
  shank.length = p.shank_length;
  LinkSpec thigh;
  thigh.mass = p.thigh_mass;
  thigh.com = Eigen::Vector2d(p.thigh_length / 2.0, 0.0);
  thigh.inertia = p.thigh_mass * p.thigh_length * p.thigh_length / 12.0;
  thigh.length = p.thigh_length;
  LinkSpec torso;
  torso.mass = p.torso_mass;  // lumped at the hip
  torso.com = Eigen::Vector2d::Zero();
  torso.inertia = p.torso_inertia;
  torso.length = 0.0;
  m.links = {foot, shank, thigh, torso};

  m.actuation = Eigen::MatrixXd::Zero(6, 3);
  m.actuation(3, 0) = 1.0;  // ankle
  m.actuation(4, 1) = 1.0;  // knee
  m.actuation(5, 2) = 1.0;  // hip

  const double sole = -p.foot_clearance;
  m.contact_points = {
      ContactPointSpec::environment("heel", 0, {-p.contact_half_span, sole}, p.mu),
      ContactPointSpec::environment("toe", 0, {p.contact_half_span, sole}, p.mu),
      ContactPointSpec::environment("knee", 2, {0.0, 0.0}, p.mu),
      ContactPointSpec::environment("hip", 3, {0.0, 0.0}, p.mu),
  };

  m.validate();
  return m;
}

}  // namespace rbd
}  // namespace trajopt

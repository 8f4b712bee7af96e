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

#ifndef TRAJOPT_RBD_CORE_HPP_
#define TRAJOPT_RBD_CORE_HPP_

#include <Eigen/Core>
#include <vector>

#include "trajopt/dual.hpp"
#include "trajopt/model.hpp"

// Scalar-generic planar kinematics and inverse dynamics. Everything here is
// templated so dual numbers can flow through when step residuals are
// differentiated; plain-double wrappers live in rbd.hpp.
namespace trajopt {
namespace rbd {

template <class T>
using Vec2T = Eigen::Matrix<T, 2, 1>;
template <class T>
using VecXT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatXT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
Vec2T<T> perp(const Vec2T<T>& r) {
  return Vec2T<T>(-r[1], r[0]);
}

template <class T>
T cross2(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

template <class T>
Vec2T<T> rotate(const T& angle, const Eigen::Vector2d& r) {
  using ad::cos;
  using ad::sin;
  using std::cos;
  using std::sin;
  const T c = cos(angle);
  const T s = sin(angle);
  return Vec2T<T>(c * T(r[0]) - s * T(r[1]), s * T(r[0]) + c * T(r[1]));
}

template <class T>
struct BodyKin {
  Vec2T<T> pos;   // body frame origin (the inboard joint for revolute bodies)
  T theta;        // absolute frame angle
  Vec2T<T> vel;   // origin velocity
  T omega;
  Vec2T<T> acc;   // origin acceleration (may carry the gravity offset)
  T omega_dot;
};

// Outward pass over the chain. When `gravity_offset` is true the root is
// given an upward acceleration g, which folds gravity into the Newton-Euler
// balance; pass false to obtain purely kinematic accelerations.
template <class T>
std::vector<BodyKin<T>> forward_kinematics(const RobotModel& m,
                                           const VecXT<T>& q,
                                           const VecXT<T>& v,
                                           const VecXT<T>& vdot,
                                           bool gravity_offset) {
  const int nb = m.n_bodies();
  std::vector<BodyKin<T>> kin(nb);
  BodyKin<T> world;
  world.pos = Vec2T<T>(T(0), T(0));
  world.theta = T(0);
  world.vel = Vec2T<T>(T(0), T(0));
  world.omega = T(0);
  world.acc = Vec2T<T>(T(0), gravity_offset ? T(m.gravity) : T(0));
  world.omega_dot = T(0);
  for (int b = 0; b < nb; ++b) {
    const BodyKin<T>& parent = b == 0 ? world : kin[b - 1];
    const JointSpec& joint = m.joints[b];
    const int at = m.joint_coord_start(b);
    BodyKin<T>& body = kin[b];
    if (joint.kind == JointKind::kFloating) {
      body.pos = Vec2T<T>(q[at], q[at + 1]);
      body.theta = q[at + 2] + T(joint.angle_offset);
      body.vel = Vec2T<T>(v[at], v[at + 1]);
      body.omega = v[at + 2];
      body.acc = parent.acc + Vec2T<T>(vdot[at], vdot[at + 1]);
      body.omega_dot = vdot[at + 2];
    } else {
      const Vec2T<T> r = rotate(parent.theta, joint.anchor);
      body.pos = parent.pos + r;
      body.theta = parent.theta + q[at] + T(joint.angle_offset);
      body.omega = parent.omega + v[at];
      body.vel = parent.vel + perp(r) * parent.omega;
      body.acc = parent.acc + perp(r) * parent.omega_dot -
                 r * (parent.omega * parent.omega);
      body.omega_dot = parent.omega_dot + vdot[at];
    }
  }
  return kin;
}

// Generalized force M(q) vdot + H(q, v), gravity included, no contacts.
template <class T>
VecXT<T> rnea(const RobotModel& m, const VecXT<T>& q, const VecXT<T>& v,
              const VecXT<T>& vdot) {
  const int nb = m.n_bodies();
  const auto kin = forward_kinematics<T>(m, q, v, vdot, /*gravity_offset=*/true);

  // Per-body net wrench (force, moment about the body origin).
  std::vector<Vec2T<T>> force(nb);
  std::vector<T> moment(nb);
  for (int b = 0; b < nb; ++b) {
    const LinkSpec& link = m.links[b];
    const Vec2T<T> c = rotate(kin[b].theta, link.com);
    const Vec2T<T> a_com = kin[b].acc + perp(c) * kin[b].omega_dot -
                           c * (kin[b].omega * kin[b].omega);
    force[b] = a_com * T(link.mass);
    moment[b] = T(link.inertia) * kin[b].omega_dot + cross2(c, force[b]);
  }

  // Inward accumulation along the chain.
  for (int b = nb - 1; b > 0; --b) {
    const Vec2T<T> lever = kin[b].pos - kin[b - 1].pos;
    moment[b - 1] += moment[b] + cross2(lever, force[b]);
    force[b - 1] += force[b];
  }

  VecXT<T> tau = VecXT<T>::Zero(m.n_v());
  for (int b = 0; b < nb; ++b) {
    const int at = m.joint_coord_start(b);
    if (m.joints[b].kind == JointKind::kFloating) {
      tau[at] = force[b][0];
      tau[at + 1] = force[b][1];
      tau[at + 2] = moment[b];
    } else {
      tau[at] = moment[b];
    }
  }
  return tau;
}

template <class T>
T potential_energy(const RobotModel& m, const VecXT<T>& q) {
  const VecXT<T> zeros = VecXT<T>::Zero(m.n_v());
  const auto kin = forward_kinematics<T>(m, q, zeros, zeros, false);
  T u(0);
  for (int b = 0; b < m.n_bodies(); ++b) {
    const Vec2T<T> c = kin[b].pos + rotate(kin[b].theta, m.links[b].com);
    u += T(m.links[b].mass * m.gravity) * c[1];
  }
  return u;
}

template <class T>
T kinetic_energy(const RobotModel& m, const VecXT<T>& q, const VecXT<T>& v) {
  const VecXT<T> zeros = VecXT<T>::Zero(m.n_v());
  const auto kin = forward_kinematics<T>(m, q, v, zeros, false);
  T e(0);
  for (int b = 0; b < m.n_bodies(); ++b) {
    const Vec2T<T> c = rotate(kin[b].theta, m.links[b].com);
    const Vec2T<T> vel_com = kin[b].vel + perp(c) * kin[b].omega;
    e += T(0.5 * m.links[b].mass) * (vel_com[0] * vel_com[0] + vel_com[1] * vel_com[1]);
    e += T(0.5 * m.links[b].inertia) * kin[b].omega * kin[b].omega;
  }
  return e;
}

// World position of an environment contact point.
template <class T>
Vec2T<T> contact_point_position(const RobotModel& m,
                                const std::vector<BodyKin<T>>& kin,
                                const ContactPointSpec& c) {
  return kin[c.body].pos + rotate(kin[c.body].theta, c.offset);
}

// Gap function: height above the ground plane for environment contacts,
// signed distance to the bound for joint limits. Positive when separated.
template <class T>
T contact_gap(const RobotModel& m, const std::vector<BodyKin<T>>& kin,
              const VecXT<T>& q, const ContactPointSpec& c) {
  if (c.kind == ContactKind::kEnvironment) {
    return contact_point_position(m, kin, c)[1];
  }
  return c.side > 0 ? T(c.limit) - q[c.joint_coord] : q[c.joint_coord] - T(c.limit);
}

// Rows of the contact Jacobian: the map from generalized velocity to the
// contact-space velocity, ordered (tangent, normal) for environment contacts
// and a single row (the gap rate) for joint limits.
template <class T>
MatXT<T> contact_jacobian_rows(const RobotModel& m,
                               const std::vector<BodyKin<T>>& kin,
                               const ContactPointSpec& c) {
  const int nv = m.n_v();
  if (c.kind == ContactKind::kJointLimit) {
    MatXT<T> j = MatXT<T>::Zero(1, nv);
    j(0, c.joint_coord) = T(c.side > 0 ? -1.0 : 1.0);
    return j;
  }
  MatXT<T> j = MatXT<T>::Zero(2, nv);
  const Vec2T<T> p = contact_point_position(m, kin, c);
  for (int b = 0; b <= c.body; ++b) {
    const int at = m.joint_coord_start(b);
    if (m.joints[b].kind == JointKind::kFloating) {
      j(0, at) = T(1);
      j(1, at + 1) = T(1);
      const Vec2T<T> lever = perp<T>(p - kin[b].pos);
      j(0, at + 2) = lever[0];
      j(1, at + 2) = lever[1];
    } else {
      const Vec2T<T> lever = perp<T>(p - kin[b].pos);
      j(0, at) = lever[0];
      j(1, at) = lever[1];
    }
  }
  return j;
}

// Velocity-product acceleration of the contact point (the Jacobian-rate term
// J_dot v): the point acceleration at zero generalized acceleration.
template <class T>
Vec2T<T> contact_bias_acceleration(const RobotModel& m,
                                   const std::vector<BodyKin<T>>& kin_zero_acc,
                                   const ContactPointSpec& c) {
  const BodyKin<T>& b = kin_zero_acc[c.body];
  const Vec2T<T> r = rotate(b.theta, c.offset);
  return b.acc + perp(r) * b.omega_dot - r * (b.omega * b.omega);
}

}  // namespace rbd
}  // namespace trajopt

#endif  // TRAJOPT_RBD_CORE_HPP_

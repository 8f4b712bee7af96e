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

#include <doctest.h>

#include <Eigen/Dense>
#include <numbers>
#include <random>

#include "trajopt/autodiff.hpp"
#include "trajopt/rbd_core.hpp"
#include "trajopt/validation/oracles.hpp"

namespace rbd = trajopt::rbd;
namespace ad = trajopt::ad;
namespace validation = trajopt::validation;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGravity = 9.81;

// Lagrangian-derived dynamics for two unit point masses on unit links,
// q = 0 hanging down. Independent of the chain code under test.
Eigen::Matrix2d pendulum_mass_oracle(const Eigen::Vector2d& q) {
  const double c2 = std::cos(q[1]);
  Eigen::Matrix2d m;
  m << 3.0 + 2.0 * c2, 1.0 + c2, 1.0 + c2, 1.0;
  return m;
}

Eigen::Vector2d pendulum_gravity_oracle(const Eigen::Vector2d& q) {
  const double s1 = std::sin(q[0]);
  const double s12 = std::sin(q[0] + q[1]);
  return kGravity * Eigen::Vector2d(2.0 * s1 + s12, s12);
}

Eigen::Vector2d pendulum_coriolis_oracle(const Eigen::Vector2d& q,
                                         const Eigen::Vector2d& v) {
  const double s2 = std::sin(q[1]);
  return Eigen::Vector2d(-s2 * (2.0 * v[0] * v[1] + v[1] * v[1]),
                         s2 * v[0] * v[0]);
}

Eigen::VectorXd random_vector(std::mt19937& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = dist(rng);
  return x;
}

}  // namespace

TEST_CASE("pendulum mass matrix at reference configurations") {
  const auto model = rbd::make_double_pendulum();
  {
    Eigen::VectorXd q(2);
    q << 0.4, 0.0;
    const Eigen::MatrixXd m = rbd::mass_matrix(model, q);
    CHECK(m(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(m(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m(1, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    Eigen::VectorXd q(2);
    q << -1.1, kPi / 2.0;
    const Eigen::MatrixXd m = rbd::mass_matrix(model, q);
    CHECK(m(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pendulum mass matrix matches the Lagrangian oracle") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd q = random_vector(rng, 2, -kPi, kPi);
    const Eigen::MatrixXd m = rbd::mass_matrix(model, q);
    const Eigen::Matrix2d want = pendulum_mass_oracle(q);
    CHECK((m - want).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("hanging rest state is an equilibrium") {
  const auto model = rbd::make_double_pendulum();
  const Eigen::VectorXd q = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd h = rbd::bias_forces(model, q, Eigen::VectorXd::Zero(2));
  CHECK(h.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gravity load equals the potential-energy gradient") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd q = random_vector(rng, 2, -kPi, kPi);
    const Eigen::VectorXd grav = rbd::gravity_forces(model, q);
    auto potential = [&model](const auto& qq) {
      using T = typename std::decay_t<decltype(qq)>::Scalar;
      Eigen::Matrix<T, Eigen::Dynamic, 1> out(1);
      out[0] = rbd::potential_energy<T>(model, qq);
      return out;
    };
    const Eigen::MatrixXd want = ad::jacobian(potential, q).matrix();
    CHECK((grav.transpose() - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("velocity terms are quadratic in the velocity") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(9);
  const Eigen::VectorXd q = random_vector(rng, 2, -kPi, kPi);
  const Eigen::VectorXd v = random_vector(rng, 2, -2.0, 2.0);
  const Eigen::VectorXd grav = rbd::gravity_forces(model, q);
  const Eigen::VectorXd c1 = rbd::bias_forces(model, q, v) - grav;
  const Eigen::VectorXd c2 = rbd::bias_forces(model, q, 2.0 * v) - grav;
  CHECK((c2 - 4.0 * c1).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("bias forces match the Coriolis plus gravity oracle") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd q = random_vector(rng, 2, -kPi, kPi);
    const Eigen::VectorXd v = random_vector(rng, 2, -3.0, 3.0);
    const Eigen::VectorXd h = rbd::bias_forces(model, q, v);
    const Eigen::Vector2d want =
        pendulum_coriolis_oracle(q, v) + pendulum_gravity_oracle(q);
    CHECK((h - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("forward dynamics at rest equilibrium is zero") {
  const auto model = rbd::make_double_pendulum();
  const rbd::State s = rbd::State::zero(model);
  const Eigen::VectorXd vdot =
      rbd::forward_dynamics(model, s, Eigen::VectorXd::Zero(2));
  CHECK(vdot.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("forward and inverse dynamics are mutual inverses") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const rbd::State s(random_vector(rng, 2, -kPi, kPi),
                       random_vector(rng, 2, -3.0, 3.0));
    const Eigen::VectorXd tau = random_vector(rng, 2, -5.0, 5.0);
    const Eigen::VectorXd vdot = rbd::forward_dynamics(model, s, tau);
    const Eigen::VectorXd back = rbd::inverse_dynamics(model, s, vdot);
    CHECK((back - model.actuation * tau).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("forward dynamics matches the dense oracle solve") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const rbd::State s(random_vector(rng, 2, -kPi, kPi),
                       random_vector(rng, 2, -3.0, 3.0));
    const Eigen::VectorXd tau = random_vector(rng, 2, -5.0, 5.0);
    const Eigen::VectorXd vdot = rbd::forward_dynamics(model, s, tau);
    const Eigen::Vector2d rhs =
        tau - pendulum_coriolis_oracle(s.q, s.v) - pendulum_gravity_oracle(s.q);
    const Eigen::Vector2d want = pendulum_mass_oracle(s.q).ldlt().solve(rhs);
    CHECK((vdot - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("inverse dynamics of a rest state returns the gravity load") {
  const auto model = rbd::make_double_pendulum();
  Eigen::VectorXd q(2);
  q << 0.8, -0.5;
  const rbd::State s(q, Eigen::VectorXd::Zero(2));
  const Eigen::VectorXd tau =
      rbd::inverse_dynamics(model, s, Eigen::VectorXd::Zero(2));
  CHECK((tau - rbd::gravity_forces(model, q)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("energy rate equals actuation power along the dynamics") {
  const auto model = rbd::make_double_pendulum();
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const rbd::State s(random_vector(rng, 2, -kPi, kPi),
                       random_vector(rng, 2, -2.0, 2.0));
    const Eigen::VectorXd tau = random_vector(rng, 2, -4.0, 4.0);
    const Eigen::VectorXd vdot = rbd::forward_dynamics(model, s, tau);

    auto energy = [&model](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      const int nv = 2;
      Eigen::Matrix<T, Eigen::Dynamic, 1> q = x.head(nv);
      Eigen::Matrix<T, Eigen::Dynamic, 1> v = x.tail(nv);
      Eigen::Matrix<T, Eigen::Dynamic, 1> out(1);
      out[0] = rbd::potential_energy<T>(model, q) + rbd::kinetic_energy<T>(model, q, v);
      return out;
    };
    const Eigen::MatrixXd grad = ad::jacobian(energy, s.to_vector()).matrix();
    Eigen::VectorXd xdot(4);
    xdot << s.v, vdot;
    const double de_dt = (grad * xdot)(0, 0);
    const double power = s.v.dot(model.actuation * tau);
    CHECK(de_dt == doctest::Approx(power).epsilon(1e-8));
  }
}

TEST_CASE("leg foot contacts touch the ground in the reference stance") {
  const auto model = rbd::make_planar_leg();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(6);
  q[1] = 0.05;  // ankle height: sole exactly on the plane
  const rbd::State s(q, Eigen::VectorXd::Zero(6));
  const auto kin = rbd::contact_kinematics(model, s);
  CHECK(kin.phi[0] == doctest::Approx(0.0));  // heel
  CHECK(kin.phi[1] == doctest::Approx(0.0));  // toe
  CHECK(kin.phi[2] > 0.3);                    // knee well above ground
  CHECK(kin.phi[3] > 0.7);                    // hip well above ground
}

TEST_CASE("joint limit gap and Jacobian row at the bound") {
  rbd::PendulumParams params;
  params.joint_limit = 1.0;
  const auto model = rbd::make_double_pendulum(params);
  Eigen::VectorXd q(2);
  q << 1.0, 0.0;  // first joint exactly at its upper limit
  const rbd::State s(q, Eigen::VectorXd::Zero(2));
  const auto kin = rbd::contact_kinematics(model, s);
  CHECK(kin.phi[0] == doctest::Approx(0.0));
  CHECK(kin.jacobian(0, 0) == doctest::Approx(-1.0));
  CHECK(kin.jacobian(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("contact Jacobian matches finite differences of the point map") {
  const auto model = rbd::make_planar_leg();
  std::mt19937 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd q = random_vector(rng, 6, -0.8, 0.8);
    q[1] += 1.0;  // keep the chain in a generic aerial pose
    for (size_t ci = 0; ci < model.contact_points.size(); ++ci) {
      const auto& spec = model.contact_points[ci];
      auto point_map = [&](const Eigen::VectorXd& qq) {
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(6);
        const auto kin = rbd::forward_kinematics<double>(model, qq, zero, zero, false);
        const auto p = rbd::contact_point_position<double>(model, kin, spec);
        Eigen::VectorXd out(2);
        out << p[0], p[1];
        return out;
      };
      const Eigen::MatrixXd want = validation::fd_jacobian(point_map, q, 1e-6);
      const auto kin = rbd::contact_kinematics(model, rbd::State(q, Eigen::VectorXd::Zero(6)));
      const Eigen::MatrixXd got = kin.jacobian.middleRows(model.contact_row_offset(ci), 2);
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("Jacobian-rate term matches finite differences along the flow") {
  const auto model = rbd::make_planar_leg();
  std::mt19937 rng(31);
  const Eigen::VectorXd q0 = random_vector(rng, 6, -0.5, 0.5);
  const Eigen::VectorXd v = random_vector(rng, 6, -1.0, 1.0);
  const rbd::State s(q0, v);
  const auto kin0 = rbd::contact_kinematics(model, s);

  const double eps = 1e-6;
  const auto jac_at = [&](double t) {
    const rbd::State st(q0 + t * v, v);
    return rbd::contact_kinematics(model, st).jacobian;
  };
  const Eigen::VectorXd want = ((jac_at(eps) - jac_at(-eps)) / (2.0 * eps)) * v;
  CHECK((kin0.jdot_v - want).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("leg mass matrix is positive definite in random poses") {
  const auto model = rbd::make_planar_leg();
  std::mt19937 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd q = random_vector(rng, 6, -1.0, 1.0);
    const Eigen::MatrixXd m = rbd::mass_matrix(model, q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    CHECK(eig.eigenvalues().minCoeff() > 1e-6);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("leg round trip through forward and inverse dynamics with forces") {
  const auto model = rbd::make_planar_leg();
  std::mt19937 rng(41);
  const rbd::State s(random_vector(rng, 6, -0.5, 0.5),
                     random_vector(rng, 6, -1.0, 1.0));
  const Eigen::VectorXd tau = random_vector(rng, 3, -3.0, 3.0);
  Eigen::VectorXd forces = random_vector(rng, model.contact_rows(), -2.0, 2.0);
  const Eigen::VectorXd vdot = rbd::forward_dynamics(model, s, tau, forces);
  const Eigen::VectorXd back = rbd::inverse_dynamics(model, s, vdot, forces);
  CHECK((back - model.actuation * tau).cwiseAbs().maxCoeff() < 1e-9);
}

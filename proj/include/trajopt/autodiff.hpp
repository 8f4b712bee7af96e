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

#ifndef TRAJOPT_AUTODIFF_HPP_
#define TRAJOPT_AUTODIFF_HPP_

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trajopt/dual.hpp"

namespace trajopt {
namespace ad {

template <class T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// Dense derivative tensor of a vector-valued map: order 1 is the m-by-n
// Jacobian, order 2 the m-by-n-by-n Hessian stack (one symmetric slice per
// output).
class JetTensor {
 public:
  static JetTensor first_order(Eigen::MatrixXd jac) {
    JetTensor t;
    t.order_ = 1;
    t.m_ = static_cast<int>(jac.rows());
    t.n1_ = static_cast<int>(jac.cols());
    t.n2_ = 0;
    t.mat_ = std::move(jac);
    return t;
  }

  static JetTensor second_order_tensor(std::vector<Eigen::MatrixXd> slices,
                                       int n1, int n2) {
    JetTensor t;
    t.order_ = 2;
    t.m_ = static_cast<int>(slices.size());
    t.n1_ = n1;
    t.n2_ = n2;
    t.slices_ = std::move(slices);
    return t;
  }

  JetTensor() = default;

  int order() const { return order_; }
  int outputs() const { return m_; }
  int inputs1() const { return n1_; }
  int inputs2() const { return n2_; }
  bool empty() const { return order_ == 0; }

  const Eigen::MatrixXd& matrix() const { return mat_; }
  const Eigen::MatrixXd& slice(int i) const { return slices_[i]; }

  double operator()(int i, int j) const { return mat_(i, j); }
  double operator()(int i, int j, int k) const { return slices_[i](j, k); }

  // Contracts the output index against a weight vector: sum_i w_i T_i.
  Eigen::MatrixXd contract_output(const Eigen::VectorXd& w) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n1_, n2_);
    for (int i = 0; i < m_; ++i) out += w[i] * slices_[i];
    return out;
  }

 private:
  int order_ = 0;
  int m_ = 0, n1_ = 0, n2_ = 0;
  Eigen::MatrixXd mat_;
  std::vector<Eigen::MatrixXd> slices_;
};

struct DifferentiationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_finite(double v, const char* what, int i, int j) {
  if (!std::isfinite(v)) {
    throw DifferentiationError(std::string(what) + " produced a non-finite entry at output " +
                               std::to_string(i) + ", input " + std::to_string(j));
  }
}

}  // namespace detail

// Jacobian of fn: R^n -> R^m at `point`. All input directions are seeded in a
// single pass, so fn is evaluated once on dual-lifted inputs.
template <class F>
JetTensor jacobian(F&& fn, const Eigen::VectorXd& point) {
  using D = Dual<double>;
  const int n = static_cast<int>(point.size());
  VecX<D> x(n);
  for (int i = 0; i < n; ++i) x[i] = D::seeded(point[i], n, i);
  const VecX<D> y = fn(x);
  const int m = static_cast<int>(y.size());
  Eigen::MatrixXd jac(m, n);
  for (int i = 0; i < m; ++i) {
    detail::check_finite(y[i].value(), "jacobian", i, -1);
    for (int j = 0; j < n; ++j) {
      jac(i, j) = y[i].der_at(j);
      detail::check_finite(jac(i, j), "jacobian", i, j);
    }
  }
  return JetTensor::first_order(std::move(jac));
}

// Second-derivative tensor of fn: R^n -> R^m, computed with nested duals and
// symmetrized over the two input indices.
template <class F>
JetTensor second_order(F&& fn, const Eigen::VectorXd& point) {
  using D1 = Dual<double>;
  using D2 = Dual<D1>;
  const int n = static_cast<int>(point.size());
  VecX<D2> x(n);
  for (int i = 0; i < n; ++i) {
    D1 inner = D1::seeded(point[i], n, i);
    typename D2::DerVec outer = D2::DerVec::Zero(n);
    outer[i] = D1(1.0);
    x[i] = D2(std::move(inner), std::move(outer));
  }
  const VecX<D2> y = fn(x);
  const int m = static_cast<int>(y.size());
  std::vector<Eigen::MatrixXd> slices(m);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd h(n, n);
    for (int j = 0; j < n; ++j) {
      const D1 dj = y[i].der_at(j);
      for (int k = 0; k < n; ++k) {
        h(j, k) = dj.der_at(k);
        detail::check_finite(h(j, k), "second_order", i, j);
      }
    }
    slices[i] = 0.5 * (h + h.transpose());
  }
  return JetTensor::second_order_tensor(std::move(slices), n, n);
}

// Value-and-Jacobian convenience for maps already lifted over duals.
template <class F>
std::pair<Eigen::VectorXd, Eigen::MatrixXd> value_and_jacobian(
    F&& fn, const Eigen::VectorXd& point) {
  using D = Dual<double>;
  const int n = static_cast<int>(point.size());
  VecX<D> x(n);
  for (int i = 0; i < n; ++i) x[i] = D::seeded(point[i], n, i);
  const VecX<D> y = fn(x);
  const int m = static_cast<int>(y.size());
  Eigen::VectorXd val(m);
  Eigen::MatrixXd jac(m, n);
  for (int i = 0; i < m; ++i) {
    val[i] = y[i].value();
    for (int j = 0; j < n; ++j) jac(i, j) = y[i].der_at(j);
  }
  return {std::move(val), std::move(jac)};
}

}  // namespace ad
}  // namespace trajopt

#endif  // TRAJOPT_AUTODIFF_HPP_

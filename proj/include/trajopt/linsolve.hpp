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

#ifndef TRAJOPT_LINSOLVE_HPP_
#define TRAJOPT_LINSOLVE_HPP_

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "trajopt/dual.hpp"

namespace trajopt {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense solve by Gaussian elimination with partial pivoting, templated over
// the scalar so dual numbers flow through. Pivoting decisions use the real
// parts only. Intended for the small (<= ~16) systems in this library.
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> linear_solve(
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> a,
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> b) {
  using ad::real_part;
  const int n = static_cast<int>(a.rows());
  const int nrhs = static_cast<int>(b.cols());
  if (a.cols() != n || b.rows() != n) {
    throw std::invalid_argument("linear_solve: dimension mismatch");
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(real_part(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      const double mag = std::abs(real_part(a(r, col)));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      throw SingularMatrixError("linear_solve: singular matrix");
    }
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      b.row(pivot).swap(b.row(col));
    }
    const T inv = T(1) / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const T factor = a(r, col) * inv;
      if (real_part(factor) == 0.0) {
        // A zero real part can still carry derivative information.
        bool zero = true;
        if constexpr (ad::scalar_traits<T>::order > 0) {
          zero = !factor.has_der();
        }
        if (zero) continue;
      }
      for (int c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
      for (int c = 0; c < nrhs; ++c) b(r, c) -= factor * b(col, c);
      a(r, col) = T(0);
    }
  }
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> x(n, nrhs);
  for (int c = 0; c < nrhs; ++c) {
    for (int r = n - 1; r >= 0; --r) {
      T acc = b(r, c);
      for (int k = r + 1; k < n; ++k) acc -= a(r, k) * x(k, c);
      x(r, c) = acc / a(r, r);
    }
  }
  return x;
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> linear_solve(
    const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<T, Eigen::Dynamic, 1>& b) {
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> rhs = b;
  return linear_solve<T>(a, rhs).col(0);
}

}  // namespace trajopt

#endif  // TRAJOPT_LINSOLVE_HPP_

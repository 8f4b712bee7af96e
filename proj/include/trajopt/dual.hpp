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

#ifndef TRAJOPT_DUAL_HPP_
#define TRAJOPT_DUAL_HPP_

#include <Eigen/Core>
#include <cassert>
#include <cmath>
#include <type_traits>

namespace trajopt {
namespace ad {

// Forward-mode dual number carrying a vector of directional derivatives.
// An empty derivative vector means "identically zero derivative"; this keeps
// constants cheap and avoids allocating for every literal in an expression.
// Nesting Dual<Dual<double>> yields exact second derivatives.
template <class T>
class Dual {
 public:
  using Value = T;
  using DerVec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  Dual() : val_(T(0)) {}
  Dual(const T& v) : val_(v) {}  // NOLINT: implicit lift from the value type
  template <class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
  Dual(A v) : val_(T(static_cast<double>(v))) {}  // NOLINT: implicit from literals
  Dual(T v, DerVec d) : val_(std::move(v)), der_(std::move(d)) {}

  static Dual seeded(const T& v, int n, int index) {
    DerVec d = DerVec::Zero(n);
    d[index] = T(1);
    return Dual(v, std::move(d));
  }

  const T& value() const { return val_; }
  T& value() { return val_; }
  const DerVec& der() const { return der_; }
  bool has_der() const { return der_.size() > 0; }

  // Derivative in direction j, zero when no derivative is stored.
  T der_at(int j) const { return has_der() ? der_[j] : T(0); }

  Dual operator-() const {
    Dual r(-val_);
    if (has_der()) r.der_ = -der_;
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.val_ + b.val_);
    if (a.has_der() && b.has_der()) {
      assert(a.der_.size() == b.der_.size());
      r.der_ = a.der_ + b.der_;
    } else if (a.has_der()) {
      r.der_ = a.der_;
    } else if (b.has_der()) {
      r.der_ = b.der_;
    }
    return r;
  }

  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.val_ - b.val_);
    if (a.has_der() && b.has_der()) {
      assert(a.der_.size() == b.der_.size());
      r.der_ = a.der_ - b.der_;
    } else if (a.has_der()) {
      r.der_ = a.der_;
    } else if (b.has_der()) {
      r.der_ = -b.der_;
    }
    return r;
  }

  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.val_ * b.val_);
    if (a.has_der() && b.has_der()) {
      assert(a.der_.size() == b.der_.size());
      r.der_ = a.der_ * b.val_ + b.der_ * a.val_;
    } else if (a.has_der()) {
      r.der_ = a.der_ * b.val_;
    } else if (b.has_der()) {
      r.der_ = b.der_ * a.val_;
    }
    return r;
  }

  friend Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1) / b.val_;
    Dual r(a.val_ * inv);
    if (a.has_der() && b.has_der()) {
      assert(a.der_.size() == b.der_.size());
      r.der_ = (a.der_ - b.der_ * r.val_) * inv;
    } else if (a.has_der()) {
      r.der_ = a.der_ * inv;
    } else if (b.has_der()) {
      r.der_ = b.der_ * (-r.val_ * inv);
    }
    return r;
  }

 private:
  T val_;
  DerVec der_;  // empty means zero
};

// Innermost real part, used for branching and pivot selection.
inline double real_part(double x) { return x; }
template <class T>
double real_part(const Dual<T>& x) {
  return real_part(x.value());
}

template <class T>
bool operator<(const Dual<T>& a, const Dual<T>& b) {
  return real_part(a) < real_part(b);
}
template <class T>
bool operator<(const Dual<T>& a, double b) {
  return real_part(a) < b;
}
template <class T>
bool operator<(double a, const Dual<T>& b) {
  return a < real_part(b);
}
template <class T>
bool operator>(const Dual<T>& a, const Dual<T>& b) {
  return b < a;
}
template <class T>
bool operator>(const Dual<T>& a, double b) {
  return b < a;
}
template <class T>
bool operator>(double a, const Dual<T>& b) {
  return b < a;
}
template <class T>
bool operator<=(const Dual<T>& a, const Dual<T>& b) {
  return !(b < a);
}
template <class T>
bool operator<=(const Dual<T>& a, double b) {
  return !(b < a);
}
template <class T>
bool operator<=(double a, const Dual<T>& b) {
  return !(b < a);
}
template <class T>
bool operator>=(const Dual<T>& a, const Dual<T>& b) {
  return !(a < b);
}
template <class T>
bool operator>=(const Dual<T>& a, double b) {
  return !(a < b);
}
template <class T>
bool operator>=(double a, const Dual<T>& b) {
  return !(a < b);
}
template <class T>
bool operator==(const Dual<T>& a, const Dual<T>& b) {
  return real_part(a) == real_part(b);
}
template <class T>
bool operator==(const Dual<T>& a, double b) {
  return real_part(a) == b;
}
template <class T>
bool operator!=(const Dual<T>& a, const Dual<T>& b) {
  return !(a == b);
}

// Mixed arithmetic with plain scalars lifts the scalar to a constant dual.
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator+(const Dual<T>& a, A b) {
  return a + Dual<T>(b);
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator+(A a, const Dual<T>& b) {
  return Dual<T>(a) + b;
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator-(const Dual<T>& a, A b) {
  return a - Dual<T>(b);
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator-(A a, const Dual<T>& b) {
  return Dual<T>(a) - b;
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator*(const Dual<T>& a, A b) {
  return a * Dual<T>(b);
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator*(A a, const Dual<T>& b) {
  return Dual<T>(a) * b;
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator/(const Dual<T>& a, A b) {
  return a / Dual<T>(b);
}
template <class T, class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
Dual<T> operator/(A a, const Dual<T>& b) {
  return Dual<T>(a) / b;
}

// Elementary functions. Each applies the chain rule to the stored directions.
template <class T>
Dual<T> chain(const Dual<T>& x, T fval, T dfdx) {
  Dual<T> r(std::move(fval));
  if (x.has_der()) {
    return Dual<T>(r.value(), typename Dual<T>::DerVec(x.der() * dfdx));
  }
  return r;
}

using std::abs;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return chain(x, T(sin(x.value())), T(cos(x.value())));
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return chain(x, T(cos(x.value())), T(-sin(x.value())));
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  const T t = tan(x.value());
  return chain(x, t, T(1) + t * t);
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  const T e = exp(x.value());
  return chain(x, e, e);
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return chain(x, T(log(x.value())), T(1) / x.value());
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  const T s = sqrt(x.value());
  return chain(x, s, T(0.5) / s);
}
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  return chain(x, T(pow(x.value(), p)), T(p) * T(pow(x.value(), p - 1.0)));
}

// |x| with derivative sign(x); the non-negative branch is used at x == 0.
template <class T>
Dual<T> abs(const Dual<T>& x) {
  return real_part(x) >= 0.0 ? x : -x;
}

template <class T>
Dual<T> min(const Dual<T>& a, const Dual<T>& b) {
  return a <= b ? a : b;
}
template <class T>
Dual<T> max(const Dual<T>& a, const Dual<T>& b) {
  return a >= b ? a : b;
}

template <class T>
struct scalar_traits {
  static constexpr int order = 0;
};
template <class T>
struct scalar_traits<Dual<T>> {
  static constexpr int order = 1 + scalar_traits<T>::order;
};

}  // namespace ad
}  // namespace trajopt

namespace Eigen {

template <class T>
struct NumTraits<trajopt::ad::Dual<T>>
    : GenericNumTraits<trajopt::ad::Dual<T>> {
  using Self = trajopt::ad::Dual<T>;
  using Real = Self;
  using NonInteger = Self;
  using Nested = Self;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1 + NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 4 * NumTraits<T>::MulCost,
  };
  static inline Self epsilon() { return Self(NumTraits<double>::epsilon()); }
  static inline Self dummy_precision() {
    return Self(NumTraits<double>::dummy_precision());
  }
  static inline Self highest() { return Self(NumTraits<double>::highest()); }
  static inline Self lowest() { return Self(NumTraits<double>::lowest()); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

}  // namespace Eigen

#endif  // TRAJOPT_DUAL_HPP_

#pragma once

#include <cmath>
#include <ostream>

#include "errors.hpp"
#include "scalar.hpp"

namespace quatfun {

/// Quaternion q = z1 + z2 j in the complex-pair model, z1 j = j conj(z1).
///
/// `C` is the complex scalar: `cplx` for numeric paths, `ExactComplex` for
/// exact identity checks. Only right multiplication is provided.
template <typename C> struct BasicQuat {
  using traits = scalar_traits<C>;
  using real_type = typename traits::real_type;

  C z1{};
  C z2{};

  BasicQuat() = default;
  BasicQuat(C a, C b = C{}) : z1(std::move(a)), z2(std::move(b)) {}

  static BasicQuat one() { return {C(1), C{}}; }
  static BasicQuat j() { return {C{}, C(1)}; }

  BasicQuat &operator+=(const BasicQuat &o) {
    z1 += o.z1;
    z2 += o.z2;
    return *this;
  }
  BasicQuat &operator-=(const BasicQuat &o) {
    z1 -= o.z1;
    z2 -= o.z2;
    return *this;
  }
  friend BasicQuat operator+(BasicQuat a, const BasicQuat &b) { return a += b; }
  friend BasicQuat operator-(BasicQuat a, const BasicQuat &b) { return a -= b; }
  friend BasicQuat operator-(const BasicQuat &a) { return {-a.z1, -a.z2}; }
  friend bool operator==(const BasicQuat &a, const BasicQuat &b) {
    return a.z1 == b.z1 && a.z2 == b.z2;
  }

  // (z1 + z2 j)(w1 + w2 j) = z1 w1 - z2 conj(w2) + (z1 w2 + z2 conj(w1)) j
  friend BasicQuat operator*(const BasicQuat &q, const BasicQuat &p) {
    return {q.z1 * p.z1 - q.z2 * traits::conj(p.z2), q.z1 * p.z2 + q.z2 * traits::conj(p.z1)};
  }
  BasicQuat &operator*=(const BasicQuat &p) { return *this = *this * p; }
};

using Quat = BasicQuat<cplx>;
using ExactQuat = BasicQuat<ExactComplex>;

template <typename C> BasicQuat<C> mul(const BasicQuat<C> &q, const BasicQuat<C> &p) {
  return q * p;
}

template <typename C> BasicQuat<C> conj(const BasicQuat<C> &q) {
  return {scalar_traits<C>::conj(q.z1), -q.z2};
}

template <typename C> auto modulus_sq(const BasicQuat<C> &q) {
  using R = decltype(scalar_traits<C>::norm(q.z1));
  return R(scalar_traits<C>::norm(q.z1) + scalar_traits<C>::norm(q.z2));
}

inline double modulus(const Quat &q) { return std::sqrt(modulus_sq(q)); }

/// Right inverse (|z1|^2 + |z2|^2)^-1 (conj(z1) - z2 j). Two-sided in fact.
template <typename C> BasicQuat<C> inv(const BasicQuat<C> &q) {
  using T = scalar_traits<C>;
  auto n = modulus_sq(q);
  if (T::is_zero(n))
    throw ZeroDivision();
  auto s = T::inv(n);
  return {T::scale(T::conj(q.z1), s), T::scale(-q.z2, s)};
}

inline ExactQuat to_exact(const Quat &q) { return {exact_from_cplx(q.z1), exact_from_cplx(q.z2)}; }
inline Quat to_numeric(const ExactQuat &q) { return {q.z1.to_cplx(), q.z2.to_cplx()}; }

inline Quat operator*(const Quat &q, double s) { return {q.z1 * s, q.z2 * s}; }
inline Quat operator*(double s, const Quat &q) { return q * s; }

inline std::ostream &operator<<(std::ostream &os, const Quat &q) {
  return os << "(" << q.z1 << ", " << q.z2 << ")";
}

} // namespace quatfun

#pragma once

#include <complex>
#include <ostream>
#include <sstream>
#include <string>

#include <gmpxx.h>

namespace quatfun {

using cplx = std::complex<double>;
using Rational = mpq_class;

// Exact complex number over arbitrary-precision rationals.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(long r) : re(r) {}
  ExactComplex(int r) : re(r) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  ExactComplex &operator+=(const ExactComplex &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex &operator-=(const ExactComplex &o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex &operator*=(const ExactComplex &o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex &b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex &b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex &b) { return a *= b; }
  friend ExactComplex operator-(const ExactComplex &a) { return {-a.re, -a.im}; }
  friend bool operator==(const ExactComplex &a, const ExactComplex &b) {
    return a.re == b.re && a.im == b.im;
  }

  friend ExactComplex operator/(const ExactComplex &a, const ExactComplex &b) {
    Rational n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }

  cplx to_cplx() const { return {re.get_d(), im.get_d()}; }

  friend std::ostream &operator<<(std::ostream &os, const ExactComplex &c) {
    if (sgn(c.im) == 0)
      return os << c.re;
    if (sgn(c.re) == 0)
      return os << c.im << "i";
    os << "(" << c.re << (sgn(c.im) > 0 ? "+" : "-") << abs(c.im) << "i)";
    return os;
  }
};

inline ExactComplex conj(const ExactComplex &c) { return {c.re, -c.im}; }
inline Rational norm(const ExactComplex &c) { return c.re * c.re + c.im * c.im; }

// Doubles are dyadic rationals, so this conversion is exact.
inline Rational exact_from_double(double x) { return Rational(x); }
inline ExactComplex exact_from_cplx(cplx z) {
  return {exact_from_double(z.real()), exact_from_double(z.imag())};
}

inline std::string to_string(const ExactComplex &c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

// Scalar traits used by the templated quaternion.
template <typename C> struct scalar_traits;

template <> struct scalar_traits<cplx> {
  using real_type = double;
  static cplx conj(const cplx &z) { return std::conj(z); }
  static double norm(const cplx &z) { return std::norm(z); }
  static bool is_zero(double r) { return r == 0.0; }
  static cplx scale(const cplx &z, double r) { return z * r; }
  static double inv(double r) { return 1.0 / r; }
};

template <> struct scalar_traits<ExactComplex> {
  using real_type = Rational;
  static ExactComplex conj(const ExactComplex &z) { return quatfun::conj(z); }
  static Rational norm(const ExactComplex &z) { return quatfun::norm(z); }
  static bool is_zero(const Rational &r) { return sgn(r) == 0; }
  static ExactComplex scale(const ExactComplex &z, const Rational &r) {
    return {z.re * r, z.im * r};
  }
  static Rational inv(const Rational &r) { return Rational(1) / r; }
};

} // namespace quatfun

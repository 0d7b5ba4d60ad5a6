#pragma once

// Shared generators and independent oracles for the test suites.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "quatfun/quatfun.hpp"

namespace qtest {

using namespace quatfun;

/// Real 4x4 left-multiplication matrix of a + b i + c j + d k; the pair
/// (z1, z2) is a + b i + (c + d i) j = a + b i + c j + d k.
using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

inline Vec4 to_vec(const Quat &q) { return {q.z1.real(), q.z1.imag(), q.z2.real(), q.z2.imag()}; }
inline Quat from_vec(const Vec4 &v) { return {cplx(v[0], v[1]), cplx(v[2], v[3])}; }

inline Mat4 left_matrix(const Quat &q) {
  const auto [a, b, c, d] = to_vec(q);
  return {{{a, -b, -c, -d}, {b, a, -d, c}, {c, d, a, -b}, {d, -c, b, a}}};
}

inline Quat matrix_mul(const Quat &q, const Quat &p) {
  const Mat4 L = left_matrix(q);
  const Vec4 v = to_vec(p);
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      r[i] += L[i][k] * v[k];
  return from_vec(r);
}

inline double det4(Mat4 m) {
  double det = 1.0;
  for (int i = 0; i < 4; ++i) {
    int p = i;
    for (int r = i + 1; r < 4; ++r)
      if (std::abs(m[r][i]) > std::abs(m[p][i]))
        p = r;
    if (m[p][i] == 0.0)
      return 0.0;
    if (p != i) {
      std::swap(m[i], m[p]);
      det = -det;
    }
    det *= m[i][i];
    for (int r = i + 1; r < 4; ++r) {
      double f = m[r][i] / m[i][i];
      for (int c = i; c < 4; ++c)
        m[r][c] -= f * m[i][c];
    }
  }
  return det;
}

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }

  Quat quat(double scale = 2.0) {
    return {cplx(uniform(-scale, scale), uniform(-scale, scale)),
            cplx(uniform(-scale, scale), uniform(-scale, scale))};
  }

  /// Point with ||q|| in [rmin, rmax].
  Quat quat_shell(double rmin, double rmax) {
    Vec4 v;
    double n = 0;
    do {
      for (auto &x : v)
        x = normal();
      n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    } while (n < 1e-3);
    const double r = uniform(rmin, rmax);
    for (auto &x : v)
      x *= r / n;
    return from_vec(v);
  }

  Rational rational(int span = 9, int maxden = 6) {
    Rational r(integer(-span, span), integer(1, maxden));
    r.canonicalize();
    return r;
  }
  ExactComplex exact_complex() { return {rational(), rational()}; }
  ExactQuat exact_quat() { return {exact_complex(), exact_complex()}; }

  /// Sparse random polynomial with up to `terms` monomials of degree <= deg.
  ConjPoly poly(int terms = 4, int deg = 3, bool holomorphic = false) {
    ConjPoly p;
    for (int t = 0; t < terms; ++t) {
      Exponent e{0, 0, 0, 0};
      int budget = integer(0, deg);
      for (int k = 0; k < budget; ++k) {
        int v = holomorphic ? 2 * integer(0, 1) : integer(0, 3);
        e[v] += 1;
      }
      p.add_term(e, exact_complex());
    }
    return p;
  }

  /// Real-valued polynomial p + conj(p).
  ConjPoly real_poly(int terms = 3, int deg = 2) {
    ConjPoly p = poly(terms, deg);
    return p + p.conjugate();
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

/// Real-affine family f1 = p z1 + p̄ z̄1 + r z2 + r̄ z̄2 + A,
/// f2 = -r̄ z1 - r z̄1 + p̄ z2 + p z̄2 + B: real components, Df = 0.
inline QFunction real_affine(const ExactComplex &p, const ExactComplex &r, const Rational &A,
                             const Rational &B) {
  const ConjPoly z1 = ConjPoly::z1(), c1 = ConjPoly::z1bar(), z2 = ConjPoly::z2(),
                 c2 = ConjPoly::z2bar();
  ConjPoly f1 = z1.scaled(p) + c1.scaled(conj(p)) + z2.scaled(r) + c2.scaled(conj(r)) +
                ConjPoly(ExactComplex(A));
  ConjPoly f2 = -z1.scaled(conj(r)) - c1.scaled(r) + z2.scaled(conj(p)) + c2.scaled(p) +
                ConjPoly(ExactComplex(B));
  return {ConjRational(f1), ConjRational(f2)};
}

inline double qdist(const Quat &a, const Quat &b) { return modulus(a - b); }

/// Σ_i w_i f(x_i) over the radial integral ∫_0^R b(r/R) r dr by composite
/// Gauss-Legendre; shared by the holomorphic residue checks.
inline double radial_bump_integral(double R = 1.0) {
  double s = 0.0;
  const int panels = 40;
  for (int p = 0; p < panels; ++p) {
    auto [x, w] = gauss_legendre(20, R * p / panels, R * (p + 1) / panels);
    for (std::size_t i = 0; i < x.size(); ++i)
      s += w[i] * bump(x[i] / R) * x[i];
  }
  return s;
}

/// -4 ∫ ψ1(q) e^{-iθ1} dr1 dθ1 dx2 dy2: the absolutely convergent
/// integral ∫ (1/z1) ψ1 dz1∧dz̄1∧dz2∧dz̄2 in polar coordinates for z1.
template <typename Psi>
cplx pv_z1_oracle(Psi &&psi1, double r1_max, cplx c2, double half, int n_r = 48, int n_t = 64,
                  int n_x = 48) {
  std::vector<double> rx, rw, xx, xw;
  const int panels = 4;
  for (int p = 0; p < panels; ++p) {
    auto [a, b] = gauss_legendre(n_r / panels, r1_max * p / panels, r1_max * (p + 1) / panels);
    rx.insert(rx.end(), a.begin(), a.end());
    rw.insert(rw.end(), b.begin(), b.end());
    auto [c, d] = gauss_legendre(n_x / panels, -half + 2 * half * p / panels,
                                 -half + 2 * half * (p + 1) / panels);
    xx.insert(xx.end(), c.begin(), c.end());
    xw.insert(xw.end(), d.begin(), d.end());
  }
  cplx sum = 0.0;
  const double wt = 2 * pi / n_t;
  for (std::size_t i = 0; i < rx.size(); ++i)
    for (int t = 0; t < n_t; ++t) {
      const double th = wt * t;
      const cplx z1 = std::polar(rx[i], th);
      const cplx phase = std::polar(1.0, -th);
      for (std::size_t a = 0; a < xx.size(); ++a)
        for (std::size_t b = 0; b < xx.size(); ++b) {
          const cplx z2 = c2 + cplx(xx[a], xx[b]);
          sum += psi1(Quat{z1, z2}) * phase * (rw[i] * wt * xw[a] * xw[b]);
        }
    }
  return -4.0 * sum;
}

} // namespace qtest

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace quatfun;
using qtest::Gen;

namespace {

const cplx I(0, 1);

double factorial(int n) { return std::tgamma(n + 1.0); }

/// ∫_{S³} |z1|^{2a} |z2|^{2c} dσ = 4π² a! c! / (2 (a + c + 1)!).
double even_moment(int a, int c) {
  return 4 * pi * pi * factorial(a) * factorial(c) / (2 * factorial(a + c + 1));
}

TestForm2 form2(const char *p11, const char *p12, const char *p21, const char *p22, double R = 1.0,
                Quat c = {}) {
  return {TestCoefficient::parse(p11), TestCoefficient::parse(p12), TestCoefficient::parse(p21),
          TestCoefficient::parse(p22), Support{R, c}};
}

TestForm3 form3(const char *p1, const char *p2, const char *p3, const char *p4, double R = 1.0,
                Quat c = {}) {
  return {TestCoefficient::parse(p1), TestCoefficient::parse(p2), TestCoefficient::parse(p3),
          TestCoefficient::parse(p4), Support{R, c}};
}

/// Coefficient-wise a·φ + b·φ' for forms sharing a support.
TestForm2 combine(const TestForm2 &x, const TestForm2 &y, ExactComplex a, ExactComplex b) {
  auto mix = [&](const TestCoefficient &u, const TestCoefficient &v) {
    return TestCoefficient(u.poly().scaled(a) + v.poly().scaled(b));
  };
  return {mix(x.phi11, y.phi11), mix(x.phi12, y.phi12), mix(x.phi21, y.phi21),
          mix(x.phi22, y.phi22), x.support};
}

TestForm3 combine(const TestForm3 &x, const TestForm3 &y, ExactComplex a, ExactComplex b) {
  auto mix = [&](const TestCoefficient &u, const TestCoefficient &v) {
    return TestCoefficient(u.poly().scaled(a) + v.poly().scaled(b));
  };
  return {mix(x.psi1, y.psi1), mix(x.psi2, y.psi2), mix(x.psi3, y.psi3), mix(x.psi4, y.psi4),
          x.support};
}

} // namespace

TEST(Quadrature, SphereArea) {
  QuadratureRule r = build_quadrature(32, 64);
  EXPECT_NEAR(r.integrate<double>([](const Quat &) { return 1.0; }), 2 * pi * pi, 1e-10);
  QuadratureRule s = build_quadrature(16, 8);
  EXPECT_NEAR(s.integrate<double>([](const Quat &) { return 1.0; }), 2 * pi * pi, 1e-10);
  for (double w : r.w_eta)
    EXPECT_GT(w, 0);
  EXPECT_GT(r.w_xi, 0);
}

TEST(Quadrature, Moments) {
  QuadratureRule r = build_quadrature(32, 64);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + c <= 4; ++c)
        for (int d = 0; a + b + c + d <= 4; ++d) {
          cplx v = r.integrate<cplx>([&](const Quat &q) {
            return std::pow(q.z1, a) * std::pow(std::conj(q.z1), b) * std::pow(q.z2, c) *
                   std::pow(std::conj(q.z2), d);
          });
          if (a != b || c != d)
            EXPECT_LT(std::abs(v), 1e-12) << a << b << c << d;
          else
            EXPECT_NEAR(v.real(), even_moment(a, c), 1e-10) << a << b << c << d;
        }
}

TEST(Quadrature, MonteCarloOracle) {
  // Uniform points on S³ from normalized Gaussians; mean of |z1|² times 2π².
  Gen g(401);
  const int n = 400000;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < n; ++k) {
    Quat q = g.quat_shell(1, 1);
    double v = std::norm(q.z1);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n, sd = std::sqrt(sum2 / n - mean * mean) / std::sqrt(double(n));
  const double mc = 2 * pi * pi * mean;
  QuadratureRule r = build_quadrature(32, 64);
  const double quad = r.integrate<double>([](const Quat &q) { return std::norm(q.z1); });
  EXPECT_NEAR(quad, pi * pi, 1e-10);
  EXPECT_NEAR(quad, mc, 5 * 2 * pi * pi * sd);
}

TEST(Quadrature, TooCoarse) {
  EXPECT_THROW(build_quadrature(3, 64), TooCoarse);
  EXPECT_THROW(build_quadrature(16, 7), TooCoarse);
  EXPECT_NO_THROW(build_quadrature(4, 8));
}

TEST(Chart, VolumePullbackMatchesRealJacobian) {
  // dz1∧dz̄1∧dz2∧dz̄2 = (-2i)² dx1∧dy1∧dx2∧dy2 = -4 dV.
  Gen g(402);
  for (int k = 0; k < 20; ++k) {
    const double lam = g.uniform(0.1, 2), eta = g.uniform(0.05, 1.5), x1 = g.uniform(0, 6),
                 x2 = g.uniform(0, 6);
    auto chart = [&](const std::array<double, 4> &p) {
      return qtest::to_vec(SphereChart::point(p[1], p[2], p[3]) * p[0]);
    };
    qtest::Mat4 J{};
    const std::array<double, 4> base{lam, eta, x1, x2};
    const double h = 1e-6;
    for (int c = 0; c < 4; ++c) {
      auto up = base, dn = base;
      up[c] += h;
      dn[c] -= h;
      auto a = chart(up), b = chart(dn);
      for (int r = 0; r < 4; ++r)
        J[r][c] = (a[r] - b[r]) / (2 * h);
    }
    const double det = qtest::det4(J);
    EXPECT_NEAR(std::abs(det), lam * lam * lam * std::sin(eta) * std::cos(eta), 1e-7);
    cplx v = SphereChart::volume_pullback(lam, eta, x1, x2);
    EXPECT_NEAR(v.real(), -4 * det, 1e-6);
    EXPECT_NEAR(v.imag(), 0, 1e-12);
  }
  EXPECT_EQ(std::abs(SphereChart::orientation()), 1.0);
}

TEST(Adaptive, GaussKronrod) {
  auto id = [](double x) { return std::abs(x); };
  auto r1 = adaptive_gk<double>([](double x) { return std::sqrt(x); }, 0, 1, id, 1e-14, 1e-12);
  EXPECT_NEAR(r1.value, 2.0 / 3.0, 1e-11);
  auto r2 = adaptive_gk<double>([](double x) { return std::sin(x); }, 0, pi, id, 1e-14, 1e-12);
  EXPECT_NEAR(r2.value, 2.0, 1e-12);
  auto r3 = adaptive_gk<double>([](double x) { return 1e-4 / (x * x + 1e-8); }, -1, 1, id, 1e-14,
                                1e-11);
  EXPECT_NEAR(r3.value, 2e-4 / 1e-4 * std::atan(1e4), 1e-8);
}

TEST(Schedule, ValuesAndChecks) {
  EpsilonSchedule s = EpsilonSchedule::for_support(2.0);
  auto v = s.values();
  ASSERT_EQ(v.size(), 12u);
  EXPECT_EQ(v[0], 1.0);
  for (std::size_t k = 1; k < v.size(); ++k)
    EXPECT_LT(v[k], v[k - 1]);
  EXPECT_THROW(s.check_within(1.0), Error);
  EXPECT_THROW((EpsilonSchedule{0.5, 1.2, 4}.values()), Error);
}

TEST(Schedule, ConvergenceRuleIsHonest) {
  CurrentEstimate e;
  for (int k = 0; k < 10; ++k) {
    e.eps.push_back(std::pow(0.7, k));
    e.values.push_back(Quat{1.0 + std::pow(0.5, k), 0});
  }
  assess(e);
  EXPECT_TRUE(e.converged);
  // Same data but the last step stalls.
  CurrentEstimate f = e;
  f.values.back() = f.values[f.values.size() - 2] + Quat{0.01, 0};
  assess(f);
  EXPECT_FALSE(f.converged);
  // Oscillation never converges.
  CurrentEstimate o;
  for (int k = 0; k < 10; ++k) {
    o.eps.push_back(std::pow(0.7, k));
    o.values.push_back(Quat{double(k % 2), 0});
  }
  assess(o);
  EXPECT_FALSE(o.converged);
  // Exact constants converge by the rounding floor.
  CurrentEstimate c;
  for (int k = 0; k < 6; ++k) {
    c.eps.push_back(std::pow(0.7, k));
    c.values.push_back(Quat{3.0, 0});
  }
  assess(c);
  EXPECT_TRUE(c.converged);
}

TEST(Schedule, ExtrapolationIsExactOnQuadratics) {
  std::vector<double> eps;
  std::vector<Quat> v;
  for (int k = 0; k < 8; ++k) {
    double e = 0.5 * std::pow(0.7, k);
    eps.push_back(e);
    v.push_back(Quat{cplx(2 + 3 * e - e * e, -1 + e), cplx(e * e, 0.25)});
  }
  EXPECT_LT(qtest::qdist(extrapolate(eps, v), Quat{cplx(2, -1), cplx(0, 0.25)}), 1e-12);
}

TEST(OneDim, SimplePoleThreeProfiles) {
  Laurent1D g = Laurent1D::pole(1);
  // Partial values carry an ε⁴ term the quadratic fit does not absorb, so the
  // 1e-8 level needs radii down to about 1e-3.
  EpsilonSchedule s{0.25, 0.7, 20};
  std::vector<std::pair<TestFunction1D, cplx>> cases = {
      {monomial_bump(0, 1.0), 1.0},
      {[](cplx z) { return (1.0 + z + std::conj(z) * 2.0) * bump(std::abs(z) / 0.8); }, 1.0},
      {[](cplx z) { return cplx(3, -1) * std::exp(z * std::conj(z)) * bump(std::abs(z - 0.1) / 2); },
       cplx(3, -1) * bump(0.05)},
  };
  for (auto &[phi, at0] : cases) {
    CurrentEstimate e = res_limit_1d(g, phi, s);
    EXPECT_TRUE(e.converged);
    cplx v = e.extrapolated.z1;
    cplx want = 2 * pi * I * at0;
    EXPECT_LT(std::abs(v - want), 1e-8 * std::abs(want)) << v;
  }
}

TEST(OneDim, HolomorphicGivesZero) {
  Laurent1D g;
  g.tail = {cplx(1, 2), cplx(-3, 0), cplx(0, 1)};
  cplx v = residue_1d(g, monomial_bump(0), 0.1);
  EXPECT_LT(std::abs(v), 1e-14);
}

TEST(OneDim, RecoversHigherCoefficients) {
  EpsilonSchedule s{0.25, 0.7, 12};
  CurrentEstimate e = res_limit_1d(Laurent1D::pole(2), monomial_bump(1), s);
  EXPECT_TRUE(e.converged);
  EXPECT_LT(std::abs(e.extrapolated.z1 - 2 * pi * I), 1e-6 * 2 * pi);
  // At the reference radii the contour integral is 2πi b(ε) exactly.
  for (double eps : {0.1, 0.05, 0.025})
    EXPECT_LT(std::abs(residue_1d(Laurent1D::pole(2), monomial_bump(1), eps) -
                       2 * pi * I * bump(eps)),
              1e-13);
  // b_j = 2πi a_{-(j+1)} / j!.
  CurrentEstimate b2 = recover_b(Laurent1D::pole(3, cplx(0, 2)), 2, s);
  EXPECT_LT(std::abs(b2.extrapolated.z1 - 2 * pi * I * cplx(0, 2) / 2.0), 1e-6 * 2 * pi);
}

TEST(OneDim, PrincipalValue) {
  Laurent1D g = Laurent1D::pole(1);
  EpsilonSchedule s{0.25, 0.7, 20};
  CurrentEstimate radial = pv_1d(g, [](cplx z) { return cplx(bump(std::abs(z))); }, 1.0, s);
  for (const Quat &v : radial.values)
    EXPECT_LT(modulus(v), 1e-14);
  CurrentEstimate zero = pv_1d(g, [](cplx) { return cplx(0); }, 1.0, s);
  EXPECT_EQ(modulus(zero.extrapolated), 0.0);
  CurrentEstimate lin = pv_1d(g, [](cplx z) { return z * bump(std::abs(z)); }, 1.0, s);
  const cplx want = -2.0 * I * 2.0 * pi * qtest::radial_bump_integral();
  EXPECT_TRUE(lin.converged);
  EXPECT_LT(std::abs(lin.extrapolated.z1 - want), 1e-8 * std::abs(want));
}

TEST(Currents, ZeroFormsGiveZero) {
  QuadratureRule rule = build_quadrature(8, 8);
  EpsilonSchedule s{0.3, 0.7, 5};
  QFunction f = builtin("conj").f;
  CurrentEstimate r = residue_pair(f, form2("0", "0", "0", "0"), rule, s);
  EXPECT_EQ(modulus(r.extrapolated), 0.0);
  CurrentEstimate p = pv_pair(f, form3("0", "0", "0", "0"), rule, s);
  EXPECT_EQ(modulus(p.extrapolated), 0.0);
}

TEST(Currents, ResidueLinearInTestForm) {
  QuadratureRule rule = build_quadrature(12, 16);
  TestForm2 a = form2("bump", "z1", "c2 + 1", "z1*c1 - 2*z2");
  TestForm2 b = form2("z2*c1", "bump", "0", "(1+2i)*c1");
  const ExactComplex ca(2, -1), cb(Rational(1, 3), 4);
  const cplx na = ca.to_cplx(), nb = cb.to_cplx();
  for (Domain d : {Domain::Ball, Domain::Level}) {
    CurrentOptions opt;
    opt.domain = d;
    for (const char *name : {"conj", "F", "q_conj"}) {
      QFunction f = builtin(name).f;
      const double eps = 0.3;
      Quat va = residue_at(f, a, rule, eps, opt), vb = residue_at(f, b, rule, eps, opt);
      Quat vc = residue_at(f, combine(a, b, ca, cb), rule, eps, opt);
      // The j-component pairs with φ̄, so it is conjugate-linear.
      Quat want{va.z1 * na + vb.z1 * nb, va.z2 * std::conj(na) + vb.z2 * std::conj(nb)};
      EXPECT_LT(qtest::qdist(vc, want), 1e-10 * (1 + modulus(vc))) << name << " " << to_string(d);
    }
  }
}

TEST(Currents, RealLinearityOfPairings) {
  QuadratureRule rule = build_quadrature(8, 16);
  Gen g(403);
  TestForm3 a = form3("bump", "z2", "c1*z2", "0", 1.0);
  TestForm3 b = form3("z1 + c2", "bump", "0", "c1", 1.0);
  TestForm2 p = form2("bump", "z1", "c2 + 1", "z1*c1 - 2*z2");
  TestForm2 q = form2("z2*c1", "bump", "0", "c1");
  EpsilonSchedule s{0.3, 0.7, 4};
  for (int k = 0; k < 3; ++k) {
    const Rational x = g.rational(), y = g.rational();
    const double nx = x.get_d(), ny = y.get_d();
    QFunction f = builtin("conj").f;
    Quat va = pv_pair(f, a, rule, s).values.back(), vb = pv_pair(f, b, rule, s).values.back();
    Quat vc = pv_pair(f, combine(a, b, ExactComplex(x), ExactComplex(y)), rule, s).values.back();
    EXPECT_LT(qtest::qdist(vc, va * nx + vb * ny), 1e-10 * (1 + modulus(vc)));
    Quat ra = residue_at(f, p, rule, 0.2), rb = residue_at(f, q, rule, 0.2);
    Quat rc = residue_at(f, combine(p, q, ExactComplex(x), ExactComplex(y)), rule, 0.2);
    EXPECT_LT(qtest::qdist(rc, ra * nx + rb * ny), 1e-10 * (1 + modulus(rc)));
  }
}

TEST(Currents, LevelAndBallAgreeForConj) {
  // |conj(q)| = ||q||, so both domains are the same sphere.
  QuadratureRule rule = build_quadrature(16, 16);
  TestForm2 phi = form2("z1", "bump", "c2", "bump");
  QFunction f = builtin("conj").f;
  for (double eps : {0.4, 0.2}) {
    CurrentOptions ball{Domain::Ball};
    Quat a = residue_at(f, phi, rule, eps, ball), b = residue_at(f, phi, rule, eps);
    EXPECT_LT(qtest::qdist(a, b), 1e-9 * (1 + modulus(a)));
  }
}

TEST(Currents, ConjResidueShrinksWithEps) {
  // The integrand is homogeneous of degree -1 and the surface scales as eps³.
  QuadratureRule rule = build_quadrature(16, 16);
  TestForm2 phi = form2("bump", "bump", "bump", "bump");
  CurrentOptions ball{Domain::Ball};
  QFunction f = builtin("conj").f;
  const double v1 = modulus(residue_at(f, phi, rule, 0.2, ball));
  const double v2 = modulus(residue_at(f, phi, rule, 0.1, ball));
  EXPECT_LT(v2, 0.3 * v1 + 1e-14);
}

TEST(Currents, PoleOnDomain) {
  QuadratureRule rule = build_quadrature(8, 8);
  EpsilonSchedule s{0.3, 0.7, 3};
  TestForm2 phi = form2("0", "0", "0", "bump");
  EXPECT_THROW(residue_pair(builtin("cauchy_kernel").f, phi, rule, s), PoleOnDomain);
  EXPECT_THROW(residue_pair(builtin("prop34", {1, 2}).f, phi, rule, s), PoleOnDomain);
  QFunction holed = QFunction::from_sampler([](const Quat &q) {
    if (std::abs(q.z2) < 0.2 && modulus(q) > 0.4)
      throw PoleError();
    return Quat{std::conj(q.z1), std::conj(q.z2)};
  });
  EXPECT_THROW(pv_pair(holed, form3("bump", "0", "0", "0"), rule, s), PoleOnDomain);
  try {
    residue_pair(builtin("cauchy_kernel").f, phi, rule, s);
  } catch (const Error &e) {
    EXPECT_TRUE(e.domain_error());
  }
}

TEST(Currents, PvConjRadialIsOdd) {
  QuadratureRule rule = build_quadrature(12, 16);
  CurrentEstimate e = pv_pair(builtin("conj").f, form3("0", "bump", "0", "0"), rule,
                              EpsilonSchedule{0.5, 0.7, 6});
  for (const Quat &v : e.values)
    EXPECT_LT(modulus(v), 1e-6);
}

TEST(Currents, SamplerMatchesSymbolic) {
  QuadratureRule rule = build_quadrature(8, 16);
  QFunction f = builtin("conj").f;
  QFunction s = QFunction::from_sampler([f](const Quat &q) { return f(q); });
  TestForm2 phi = form2("z1", "bump", "c2", "bump");
  CurrentOptions ball{Domain::Ball};
  Quat a = residue_at(f, phi, rule, 0.3, ball), b = residue_at(s, phi, rule, 0.3, ball);
  EXPECT_LT(qtest::qdist(a, b), 1e-7 * (1 + modulus(a)));
}

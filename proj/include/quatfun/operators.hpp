#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qfunction.hpp"

namespace quatfun {

/// Df = d1 + d2 j for D = ½(∂/∂z̄1 + j ∂/∂z̄2).
///
/// Moving j through ∂/∂z̄2 conjugates, so in the right form
/// d2 = ½(∂f2/∂z̄1 + ∂f̄1/∂z2).
struct DResult {
  ConjRational d1, d2;

  bool is_zero() const { return d1.is_zero() && d2.is_zero(); }
  QFunction as_function() const { return {d1, d2}; }
  Quat operator()(const Quat &q) const { return {d1.eval(q), d2.eval(q)}; }
};

inline DResult apply_D(const QFunction &f) {
  const ExactComplex half(Rational(1, 2));
  ConjRational d1 = f.f1().derive(Var::z1bar) - f.f2().conjugate().derive(Var::z2);
  ConjRational d2 = f.f2().derive(Var::z1bar) + f.f1().conjugate().derive(Var::z2);
  return {d1.scaled(half), d2.scaled(half)};
}

/// D applied to a jet: ∂f̄2/∂z2 = conj(∂f2/∂z̄2), ∂f̄1/∂z2 = conj(∂f1/∂z̄2).
inline Quat apply_D(const WirtingerJet &j) {
  return {0.5 * (j.d(1, Var::z1bar) - std::conj(j.d(2, Var::z2bar))),
          0.5 * (j.d(2, Var::z1bar) + std::conj(j.d(1, Var::z2bar)))};
}

enum class JetMethod { Auto, Symbolic, FiniteDifference, Richardson };

/// Pointwise Df(q). Auto uses symbolic partials when available.
inline Quat apply_D_at(const QFunction &f, const Quat &q, JetMethod m = JetMethod::Auto,
                       double h = 1e-4) {
  if (m == JetMethod::Symbolic || (m == JetMethod::Auto && f.is_symbolic()))
    return apply_D(symbolic_jet(f, q));
  return apply_D(numeric_jet(f, q, h, m == JetMethod::Richardson));
}

/// Squared modulus |f1|² + |f2|² as a real rational function.
inline ConjRational modulus_sq(const QFunction &f) {
  return f.f1() * f.f1().conjugate() + f.f2() * f.f2().conjugate();
}

/// Right inverse 1/f = |f|⁻¹(f̄1 - f2 j), |f| standing for |f1|² + |f2|².
inline QFunction inverse_function(const QFunction &f) {
  if (f.is_zero())
    throw IdenticallyZero();
  ConjRational n = modulus_sq(f);
  return {f.f1().conjugate().divided_by_real(n), (-f.f2()).divided_by_real(n)};
}

/// Residual of the twisted Leibniz rule
///   D(f*g) = (Df)*g + ½(f1 ∂g/∂z̄1 + (f2 j)*∂g/∂z1 + (f̄1 j)*∂g/∂z̄2 - f̄2 ∂g/∂z2),
/// where ∂g/∂v means ∂g1/∂v + (∂g2/∂v) j. For hyperholomorphic f the first
/// term is (Df)*g = 0 = Df*jg.
struct ProductRuleReport {
  DResult residual;
  std::vector<std::string> warnings;
  bool holds() const { return residual.is_zero(); }
};

inline ProductRuleReport check_product_rule(const QFunction &f, const QFunction &g,
                                            bool soft = false) {
  ProductRuleReport rep;
  for (auto [fn, name] : {std::pair{&f, "f"}, std::pair{&g, "g"}}) {
    if (!apply_D(*fn).is_zero()) {
      if (!soft)
        throw NotHyperholomorphic(name);
      rep.warnings.push_back(std::string(name) + " is not hyperholomorphic");
    }
  }
  const ExactComplex half(Rational(1, 2));
  auto cj = [](const ConjRational &c) { return QFunction({}, c); };
  auto scal = [](const ConjRational &c) { return QFunction(c, {}); };
  QFunction lhs = apply_D(product(f, g)).as_function();
  QFunction twist = product(scal(f.f1()), derive(g, Var::z1bar)) +
                    product(cj(f.f2()), derive(g, Var::z1)) +
                    product(cj(f.f1().conjugate()), derive(g, Var::z2bar)) -
                    product(scal(f.f2().conjugate()), derive(g, Var::z2));
  QFunction rhs = product(apply_D(f).as_function(), g) + scale_real(twist, Rational(1, 2));
  QFunction r = lhs - rhs;
  rep.residual = {r.f1(), r.f2()};
  return rep;
}

/// Residual of D(f*g) = Df*jg + f*Dg, the real-component form.
inline ProductRuleReport check_real_product_rule(const QFunction &f, const QFunction &g,
                                                 bool soft = false) {
  ProductRuleReport rep;
  for (auto [fn, name] : {std::pair{&f, "f"}, std::pair{&g, "g"}}) {
    if (!fn->has_real_components()) {
      if (!soft)
        throw NotRealValued(std::string(name) + " has non-real components");
      rep.warnings.push_back(std::string(name) + " has non-real components");
    }
  }
  QFunction j = QFunction::constant(ExactQuat::j());
  QFunction lhs = apply_D(product(f, g)).as_function();
  QFunction rhs = product(product(apply_D(f).as_function(), j), g) +
                  product(f, apply_D(g).as_function());
  QFunction r = lhs - rhs;
  rep.residual = {r.f1(), r.f2()};
  return rep;
}

/// Left-hand sides of the two equations characterizing hyperholomorphy of
/// 1/f for hyperholomorphic f.
struct HypermeroResiduals {
  ConjRational eq3, eq4;
  bool vanish() const { return eq3.is_zero() && eq4.is_zero(); }
};

inline HypermeroResiduals hypermero_residuals(const QFunction &f) {
  const ConjRational &f1 = f.f1(), &f2 = f.f2();
  const ConjRational f1b = f1.conjugate(), f2b = f2.conjugate();
  const ConjRational diff = f1b - f1;
  ConjRational eq3 =
      diff * f1b.derive(Var::z1) - f2b * f2.derive(Var::z1) - f2 * f1b.derive(Var::z2bar);
  ConjRational eq4 =
      f2b * f1.derive(Var::z1) + f2b.derive(Var::z1) * diff - f2 * f2b.derive(Var::z2bar);
  return {std::move(eq3), std::move(eq4)};
}

inline bool is_hyperholomorphic(const QFunction &f) { return apply_D(f).is_zero(); }

inline bool is_hypermeromorphic(const QFunction &f) {
  return is_hyperholomorphic(f) && hypermero_residuals(f).vanish();
}

/// Product-compatibility system for f*g; `real` holds the specialized
/// system when all components are real-valued.
struct ProductCompat {
  ConjRational r1, r2;
  std::optional<std::pair<ConjRational, ConjRational>> real;
  std::vector<std::string> warnings;
  bool vanish() const { return r1.is_zero() && r2.is_zero(); }
};

inline ProductCompat product_compat_residuals(const QFunction &f, const QFunction &g,
                                              bool soft = false) {
  ProductCompat out;
  for (auto [fn, name] : {std::pair{&f, "f"}, std::pair{&g, "g"}}) {
    if (!is_hypermeromorphic(*fn)) {
      if (!soft)
        throw NotHypermeromorphic(name);
      out.warnings.push_back(std::string(name) + " is not hypermeromorphic");
    }
  }
  const ConjRational &f1 = f.f1(), &f2 = f.f2(), &g1 = g.f1(), &g2 = g.f2();
  const ConjRational f1b = f1.conjugate(), f2b = f2.conjugate(), g2b = g2.conjugate();
  out.r1 = g1 * (f1.derive(Var::z1bar) + f2b.derive(Var::z2)) + (f1 - f1b) * g1.derive(Var::z1bar) +
           f2b * g1.derive(Var::z2) - f2 * g2b.derive(Var::z1bar);
  out.r2 = g1 * (f1.derive(Var::z2bar) - f2b.derive(Var::z1)) + (f1 - f1b) * g1.derive(Var::z2bar) -
           f2b * g1.derive(Var::z1) - f2 * g2b.derive(Var::z2bar);
  if (f.has_real_components() && g.has_real_components()) {
    ConjRational s1 = g1 * (f1.derive(Var::z1bar) + f2.derive(Var::z2)) +
                      f2 * g1.derive(Var::z2) - f2 * g2.derive(Var::z1bar);
    ConjRational s2 = g1 * (f1.derive(Var::z2bar) - f2.derive(Var::z1)) -
                      f2 * g1.derive(Var::z1) - f2 * g2.derive(Var::z2bar);
    out.real = std::pair{std::move(s1), std::move(s2)};
  }
  return out;
}

struct ClosureResult {
  std::string partner;
  bool sum_hypermeromorphic;
  bool product_hypermeromorphic;
};

struct Classification {
  bool hyperholomorphic = false;
  bool hypermeromorphic = false;
  DResult d;
  HypermeroResiduals residuals;
  // D of 1/f: exact status and the largest pointwise |D(1/f)| seen on the
  // sample points.
  std::optional<bool> inverse_hyperholomorphic;
  double inverse_numeric_max = 0.0;
  bool disagreement = false;
  std::vector<ClosureResult> closure;
  std::vector<std::string> notes;
};

/// Deterministic sample points on a few spheres, used by numeric checks.
inline std::vector<Quat> sample_points(int n) {
  std::vector<Quat> pts;
  for (int k = 0; k < n; ++k) {
    double t = k + 1;
    double r = 0.6 + 0.9 * std::fmod(0.618033988749895 * t, 1.0);
    double eta = 0.1 + 1.37 * std::fmod(0.7548776662466927 * t, 1.0);
    double a = 6.283185307179586 * std::fmod(0.5698402909980532 * t, 1.0);
    double b = 6.283185307179586 * std::fmod(0.4142135623730950 * t, 1.0);
    pts.push_back({std::polar(r * std::cos(eta), a), std::polar(r * std::sin(eta), b)});
  }
  return pts;
}

inline Classification classify(const QFunction &f, const std::vector<QFunction> &partners = {}) {
  Classification c;
  c.d = apply_D(f);
  c.hyperholomorphic = c.d.is_zero();
  c.residuals = hypermero_residuals(f);
  c.hypermeromorphic = c.hyperholomorphic && c.residuals.vanish();
  if (f.is_zero()) {
    c.notes.push_back("identically zero: no inverse");
  } else {
    QFunction g = inverse_function(f);
    DResult dg = apply_D(g);
    c.inverse_hyperholomorphic = dg.is_zero();
    CompiledFunction cg(g);
    int used = 0;
    for (const Quat &q : sample_points(24)) {
      try {
        Quat v = apply_D(cg.jet(q));
        c.inverse_numeric_max = std::max(c.inverse_numeric_max, modulus(v));
        ++used;
      } catch (const PoleError &) {
      }
    }
    if (used == 0)
      c.notes.push_back("1/f has a pole at every sample point");
    if (c.hyperholomorphic && *c.inverse_hyperholomorphic != c.residuals.vanish()) {
      c.disagreement = true;
      c.notes.push_back("residual status and D(1/f) status disagree");
    }
  }
  if (f.f1().is_zero() || f.f2().is_zero())
    c.notes.push_back("a component vanishes identically");
  for (std::size_t i = 0; i < partners.size(); ++i) {
    const QFunction &g = partners[i];
    std::string name = g.label().empty() ? "partner" + std::to_string(i) : g.label();
    c.closure.push_back(
        {name, is_hypermeromorphic(f + g), is_hypermeromorphic(product(f, g))});
  }
  return c;
}

} // namespace quatfun

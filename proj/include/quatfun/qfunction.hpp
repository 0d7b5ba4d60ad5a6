#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "conj_rational.hpp"
#include "errors.hpp"
#include "quat.hpp"

namespace quatfun {

using Sampler = std::function<Quat(const Quat &)>;

/// Quaternionic function f = f1 + f2 j, either symbolic (rational components)
/// or an opaque numeric sampler. Points of ℍ ≅ ℂ² are passed as Quat.
class QFunction {
public:
  QFunction() = default;
  QFunction(ConjRational f1, ConjRational f2 = {}, std::string label = {})
      : sym_(std::make_shared<Components>(Components{std::move(f1), std::move(f2)})),
        label_(std::move(label)) {}

  static QFunction from_sampler(Sampler s, std::string label = "sampler") {
    QFunction f;
    f.sampler_ = std::move(s);
    f.label_ = std::move(label);
    return f;
  }

  static QFunction constant(const ExactQuat &c) { return {ConjRational(c.z1), ConjRational(c.z2)}; }

  bool is_symbolic() const { return sym_ != nullptr; }
  const ConjRational &f1() const { return components().f1; }
  const ConjRational &f2() const { return components().f2; }

  const std::string &label() const { return label_; }
  QFunction &set_label(std::string l) {
    label_ = std::move(l);
    return *this;
  }

  bool is_zero() const { return is_symbolic() && f1().is_zero() && f2().is_zero(); }
  bool has_real_components() const { return is_symbolic() && f1().is_real() && f2().is_real(); }

  Quat operator()(const Quat &q) const {
    if (sampler_)
      return sampler_(q);
    return {f1().eval(q), f2().eval(q)};
  }

  ExactQuat eval_exact(const ExactQuat &q) const { return {f1().eval(q), f2().eval(q)}; }

  /// Literal "N1 / D1 ; N2 / D2" that the parser reads back.
  std::string to_string() const {
    if (!is_symbolic())
      return label_;
    return f1().to_string() + " ; " + f2().to_string();
  }

private:
  struct Components {
    ConjRational f1, f2;
  };
  const Components &components() const {
    if (!sym_)
      throw Error("function '" + label_ + "' has no symbolic form", false);
    return *sym_;
  }

  std::shared_ptr<const Components> sym_;
  Sampler sampler_;
  std::string label_;
};

inline Quat eval_fn(const QFunction &f, const Quat &q) { return f(q); }

// Componentwise algebra on symbolic functions.
inline QFunction operator+(const QFunction &f, const QFunction &g) {
  return {f.f1() + g.f1(), f.f2() + g.f2()};
}
inline QFunction operator-(const QFunction &f, const QFunction &g) {
  return {f.f1() - g.f1(), f.f2() - g.f2()};
}

/// f * g = f1 g1 - f2 conj(g2) + (f1 g2 + f2 conj(g1)) j
inline QFunction product(const QFunction &f, const QFunction &g) {
  return {f.f1() * g.f1() - f.f2() * g.f2().conjugate(),
          f.f1() * g.f2() + f.f2() * g.f1().conjugate()};
}

inline QFunction conjugate_fn(const QFunction &f) {
  return {f.f1().conjugate(), -f.f2()};
}

/// Wirtinger partial of each component: the quaternionic function
/// ∂f1/∂v + (∂f2/∂v) j.
inline QFunction derive(const QFunction &f, Var v) { return {f.f1().derive(v), f.f2().derive(v)}; }

inline QFunction scale_real(const QFunction &f, const Rational &alpha) {
  ExactComplex a(alpha);
  return {f.f1().scaled(a), f.f2().scaled(a)};
}

inline QFunction right_scalar(const QFunction &f, const ExactQuat &alpha) {
  return product(f, QFunction::constant(alpha));
}

/// True when both components agree as rational functions.
inline bool equivalent(const QFunction &f, const QFunction &g) {
  return equivalent(f.f1(), g.f1()) && equivalent(f.f2(), g.f2());
}

/// Value and the eight Wirtinger partials at a point.
struct WirtingerJet {
  Quat value;
  // partials[i][v]: derivative of component i+1 by variable v.
  std::array<std::array<cplx, 4>, 2> partials{};

  cplx d(int component, Var v) const { return partials[component - 1][static_cast<int>(v)]; }
  /// Quaternion ∂f1/∂v + (∂f2/∂v) j.
  Quat dq(Var v) const { return {d(1, v), d(2, v)}; }
};

/// Double evaluator for a symbolic function and its first partials.
class CompiledFunction {
public:
  CompiledFunction() = default;
  explicit CompiledFunction(const QFunction &f, bool with_partials = true)
      : f1_(f.f1()), f2_(f.f2()), has_partials_(with_partials) {
    if (with_partials)
      for (Var v : all_vars) {
        d1_[static_cast<int>(v)] = NumericRational(f.f1().derive(v));
        d2_[static_cast<int>(v)] = NumericRational(f.f2().derive(v));
      }
  }

  Quat operator()(const Quat &q) const { return {f1_(q), f2_(q)}; }

  WirtingerJet jet(const Quat &q) const {
    if (!has_partials_)
      throw Error("compiled without partials", false);
    WirtingerJet j;
    j.value = (*this)(q);
    for (int k = 0; k < 4; ++k) {
      j.partials[0][k] = d1_[k](q);
      j.partials[1][k] = d2_[k](q);
    }
    return j;
  }

private:
  NumericRational f1_, f2_;
  std::array<NumericRational, 4> d1_, d2_;
  bool has_partials_ = false;
};

inline WirtingerJet symbolic_jet(const QFunction &f, const Quat &q) {
  return CompiledFunction(f).jet(q);
}

/// Central-difference Wirtinger jet in the four real coordinates.
///
/// With `richardson` the step-h and step-h/2 estimates are combined to
/// cancel the h² term.
inline WirtingerJet numeric_jet(const QFunction &f, const Quat &q, double h = 1e-4,
                                bool richardson = false) {
  auto real_partials = [&](double step) {
    // Order x1, y1, x2, y2.
    std::array<Quat, 4> out;
    const std::array<Quat, 4> dirs{Quat{cplx(1, 0), 0.0}, Quat{cplx(0, 1), 0.0},
                                   Quat{0.0, cplx(1, 0)}, Quat{0.0, cplx(0, 1)}};
    for (int k = 0; k < 4; ++k) {
      Quat p = f(q + dirs[k] * step), m = f(q - dirs[k] * step);
      out[k] = (p - m) * (0.5 / step);
    }
    return out;
  };
  std::array<Quat, 4> r = real_partials(h);
  if (richardson) {
    std::array<Quat, 4> r2 = real_partials(0.5 * h);
    for (int k = 0; k < 4; ++k)
      r[k] = (r2[k] * 4.0 - r[k]) * (1.0 / 3.0);
  }
  WirtingerJet j;
  j.value = f(q);
  const cplx I(0, 1);
  for (int c = 0; c < 2; ++c) {
    auto comp = [&](const Quat &x) { return c == 0 ? x.z1 : x.z2; };
    for (int z = 0; z < 2; ++z) {
      cplx dx = comp(r[2 * z]), dy = comp(r[2 * z + 1]);
      j.partials[c][2 * z] = 0.5 * (dx - I * dy);
      j.partials[c][2 * z + 1] = 0.5 * (dx + I * dy);
    }
  }
  return j;
}

/// Vanishing order: lowest total degree in the Taylor expansion at q.
/// nullopt stands for the identically zero polynomial (infinite order).
inline std::optional<unsigned> vanishing_order(const ConjPoly &p, const ExactQuat &q) {
  return p.shifted(q).lowest_degree();
}

/// Rational version: order of the numerator, the denominator being
/// required not to vanish at q.
inline std::optional<unsigned> vanishing_order(const ConjRational &r, const ExactQuat &q) {
  if (r.is_zero())
    return std::nullopt;
  for (const auto &f : r.factors())
    if (f.poly.eval(q).is_zero())
      throw PoleError("denominator vanishes at the expansion point");
  return vanishing_order(r.num(), q);
}

struct VanishingOrders {
  std::optional<unsigned> m1, m2, mq;
};

inline VanishingOrders vanishing_order_pair(const QFunction &f, const ExactQuat &q) {
  VanishingOrders v{vanishing_order(f.f1(), q), vanishing_order(f.f2(), q), std::nullopt};
  if (v.m1 && v.m2)
    v.mq = std::min(*v.m1, *v.m2);
  else
    v.mq = v.m1 ? v.m1 : v.m2;
  return v;
}

} // namespace quatfun

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "conj_poly.hpp"
#include "errors.hpp"

namespace quatfun {

/// Rational function num / den in the conjugate variables with a real
/// denominator.
///
/// The denominator is kept factored as a product of powers of normalized,
/// non-constant, real polynomials. Sums use the lcm of the factor lists and
/// common factors are cancelled by exact division only; no gcd is computed,
/// so two equal rationals may have different representations. Compare them
/// with `equivalent`, which tests the cross-multiplied numerator.
class ConjRational {
public:
  struct Factor {
    ConjPoly poly;
    unsigned exp;
  };

  ConjRational() = default;
  ConjRational(ConjPoly num) : num_(std::move(num)) {}
  ConjRational(ExactComplex c) : num_(std::move(c)) {}
  ConjRational(long c) : num_(c) {}

  /// num / den; `den` must be a nonzero real-valued polynomial.
  static ConjRational fraction(ConjPoly num, const ConjPoly &den) {
    return ConjRational(std::move(num)) * reciprocal(den);
  }

  /// 1 / p for a real-valued polynomial p.
  static ConjRational reciprocal(const ConjPoly &p) {
    if (p.is_zero())
      throw ZeroDivision();
    if (!p.is_real())
      throw NotRealValued("denominator " + p.to_string() + " is not real-valued");
    ConjRational r(ConjPoly(1));
    r.divide_by_real_poly(p);
    return r;
  }

  const ConjPoly &num() const { return num_; }
  const std::vector<Factor> &factors() const { return factors_; }

  ConjPoly den() const {
    ConjPoly d(1);
    for (const auto &f : factors_)
      d *= f.poly.pow(f.exp);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return factors_.empty(); }
  bool is_real() const { return num_.is_real(); }
  bool is_constant() const { return factors_.empty() && num_.is_constant(); }

  ConjRational &operator+=(const ConjRational &o) { return *this = combine(*this, o, false); }
  ConjRational &operator-=(const ConjRational &o) { return *this = combine(*this, o, true); }
  friend ConjRational operator+(const ConjRational &a, const ConjRational &b) {
    return combine(a, b, false);
  }
  friend ConjRational operator-(const ConjRational &a, const ConjRational &b) {
    return combine(a, b, true);
  }
  friend ConjRational operator-(const ConjRational &a) {
    ConjRational r = a;
    r.num_ = -r.num_;
    return r;
  }

  friend ConjRational operator*(const ConjRational &a, const ConjRational &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    ConjRational r;
    r.num_ = a.num_ * b.num_;
    r.factors_ = a.factors_;
    for (const auto &f : b.factors_)
      r.add_factor(f.poly, f.exp);
    r.cancel();
    return r;
  }
  ConjRational &operator*=(const ConjRational &o) { return *this = *this * o; }

  ConjRational scaled(const ExactComplex &s) const {
    if (s.is_zero())
      return {};
    ConjRational r = *this;
    r.num_ = r.num_.scaled(s);
    return r;
  }

  /// this / r for a real-valued rational r.
  ConjRational divided_by_real(const ConjRational &r) const {
    if (r.is_zero())
      throw ZeroDivision();
    if (!r.is_real())
      throw NotRealValued("divisor is not real-valued");
    ConjRational out = *this;
    // Multiply by den(r), then divide by num(r).
    for (const auto &f : r.factors_)
      out.num_ *= f.poly.pow(f.exp);
    out.divide_by_real_poly(r.num_);
    out.cancel();
    return out;
  }

  /// Formal conjugate. Denominator factors are real, so only num changes.
  ConjRational conjugate() const {
    ConjRational r = *this;
    r.num_ = num_.conjugate();
    return r;
  }

  /// Formal partial derivative by the quotient rule over the factored den.
  ConjRational derive(Var v) const {
    std::vector<ConjPoly> dp(factors_.size());
    std::vector<bool> active(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      dp[i] = factors_[i].poly.derive(v);
      active[i] = !dp[i].is_zero();
    }
    // d(n / P) with P = prod p_i^e_i, S = factors depending on v:
    //   [dn * prod_S p_i - n * sum_S e_i dp_i prod_{S \ i} p_k] / (P prod_S p_i)
    ConjPoly top = num_.derive(v);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (active[i])
        top *= factors_[i].poly;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (!active[i])
        continue;
      ConjPoly t = num_ * dp[i].scaled(ExactComplex(long(factors_[i].exp)));
      for (std::size_t k = 0; k < factors_.size(); ++k)
        if (k != i && active[k])
          t *= factors_[k].poly;
      top -= t;
    }
    ConjRational r;
    if (top.is_zero())
      return r;
    r.num_ = std::move(top);
    r.factors_ = factors_;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (active[i])
        r.factors_[i].exp += 1;
    r.cancel();
    return r;
  }

  /// True when a - b is the zero function (cross-multiplied numerator test).
  friend bool equivalent(const ConjRational &a, const ConjRational &b) { return (a - b).is_zero(); }

  /// Substitute z_k -> z_k + a_k in numerator and denominator.
  ConjRational shifted(const ExactQuat &a) const {
    ConjRational r;
    r.num_ = num_.shifted(a);
    for (const auto &f : factors_) {
      ConjPoly p = f.poly.shifted(a);
      Rational s = normal_scale(p);
      Rational inv = Rational(1) / s;
      for (unsigned e = 0; e < f.exp; ++e)
        r.num_ = r.num_.scaled(ExactComplex(inv));
      r.factors_.push_back({p.scaled(ExactComplex(inv)), f.exp});
    }
    return r;
  }

  template <typename C> C eval(const BasicQuat<C> &q) const {
    if constexpr (std::is_same_v<C, ExactComplex>) {
      ExactComplex d(1);
      for (const auto &f : factors_) {
        ExactComplex v = f.poly.eval(q);
        if (v.is_zero())
          throw PoleError();
        for (unsigned e = 0; e < f.exp; ++e)
          d *= v;
      }
      return num_.eval(q) / d;
    } else {
      return eval_numeric(q);
    }
  }

  cplx eval_numeric(const Quat &q) const;

  std::string to_string() const {
    if (factors_.empty())
      return num_.to_string();
    std::string s = num_.is_constant() || num_.size() == 1 ? num_.to_string()
                                                           : "(" + num_.to_string() + ")";
    s += " / ";
    const bool many = factors_.size() > 1;
    if (many)
      s += "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i)
        s += "*";
      const auto &f = factors_[i];
      s += "(" + f.poly.to_string() + ")";
      if (f.exp > 1)
        s += "^" + std::to_string(f.exp);
    }
    if (many)
      s += ")";
    return s;
  }

  /// Divide num by factors while the division is exact.
  void cancel() {
    if (num_.is_zero()) {
      factors_.clear();
      return;
    }
    for (std::size_t i = 0; i < factors_.size();) {
      auto &f = factors_[i];
      while (f.exp > 0) {
        auto q = num_.divide_exact(f.poly);
        if (!q)
          break;
        num_ = std::move(*q);
        --f.exp;
      }
      if (f.exp == 0)
        factors_.erase(factors_.begin() + std::ptrdiff_t(i));
      else
        ++i;
    }
  }

private:
  // Real scalar s with p = s * p_hat and p_hat in canonical form.
  static Rational normal_scale(const ConjPoly &p) {
    const auto &[m, c] = *p.terms().rbegin();
    if (conjugate_exponent(m) == m || sgn(c.re) != 0)
      return c.re;
    return c.im;
  }

  // Multiplies the denominator by `p` (a normalized real polynomial).
  void add_factor(const ConjPoly &p, unsigned e) {
    for (auto &f : factors_) {
      if (f.poly == p) {
        f.exp += e;
        return;
      }
    }
    factors_.push_back({p, e});
  }

  // this := this / p for a nonzero real polynomial p.
  void divide_by_real_poly(ConjPoly p) {
    // Real monomial content (z1 z̄1)^a (z2 z̄2)^b.
    std::array<unsigned, 4> g{~0u, ~0u, ~0u, ~0u};
    for (const auto &[e, c] : p.terms())
      for (int k = 0; k < 4; ++k)
        g[k] = std::min<unsigned>(g[k], e[k]);
    const unsigned a = std::min(g[0], g[1]), b = std::min(g[2], g[3]);
    if (a || b) {
      Exponent content{std::uint16_t(a), std::uint16_t(a), std::uint16_t(b), std::uint16_t(b)};
      p = *p.divide_exact(ConjPoly::monomial(content, ExactComplex(1)));
      if (a)
        add_factor(ConjPoly::monomial({1, 1, 0, 0}, ExactComplex(1)), a);
      if (b)
        add_factor(ConjPoly::monomial({0, 0, 1, 1}, ExactComplex(1)), b);
    }
    for (auto &f : factors_) {
      while (!p.is_constant()) {
        auto q = p.divide_exact(f.poly);
        if (!q)
          break;
        p = std::move(*q);
        ++f.exp;
      }
    }
    if (p.is_constant()) {
      num_ = num_.scaled(ExactComplex(1) / p.constant_term());
    } else {
      Rational s = normal_scale(p);
      num_ = num_.scaled(ExactComplex(Rational(1) / s));
      add_factor(p.scaled(ExactComplex(Rational(1) / s)), 1);
    }
    cancel();
  }

  static ConjRational combine(const ConjRational &a, const ConjRational &b, bool subtract) {
    if (b.is_zero())
      return a;
    if (a.is_zero())
      return subtract ? -b : b;
    // lcm of factor lists by maximum exponent.
    std::vector<Factor> lcm = a.factors_;
    for (const auto &f : b.factors_) {
      bool found = false;
      for (auto &l : lcm)
        if (l.poly == f.poly) {
          l.exp = std::max(l.exp, f.exp);
          found = true;
        }
      if (!found)
        lcm.push_back(f);
    }
    auto lift = [&lcm](const ConjRational &x) {
      ConjPoly n = x.num_;
      for (const auto &l : lcm) {
        unsigned have = 0;
        for (const auto &f : x.factors_)
          if (f.poly == l.poly)
            have = f.exp;
        if (l.exp > have)
          n *= l.poly.pow(l.exp - have);
      }
      return n;
    };
    ConjRational r;
    r.num_ = lift(a);
    if (subtract)
      r.num_ -= lift(b);
    else
      r.num_ += lift(b);
    r.factors_ = std::move(lcm);
    r.cancel();
    return r;
  }

  ConjPoly num_;
  std::vector<Factor> factors_;
};

/// Precompiled double-precision evaluator for a ConjRational.
class NumericRational {
public:
  NumericRational() = default;
  explicit NumericRational(const ConjRational &r) : num_(r.num()) {
    for (const auto &f : r.factors())
      factors_.push_back({NumericPoly(f.poly), f.exp});
  }

  /// Value at q; PoleError when a factor is below the relative floor.
  cplx operator()(const Quat &q, double pole_floor = 1e-12) const {
    cplx d = 1.0;
    for (const auto &[p, e] : factors_) {
      auto [v, scale] = p.eval_with_scale(q);
      if (std::abs(v) <= pole_floor * scale)
        throw PoleError();
      for (unsigned k = 0; k < e; ++k)
        d *= v;
    }
    return num_(q) / d;
  }

private:
  NumericPoly num_;
  std::vector<std::pair<NumericPoly, unsigned>> factors_;
};

inline cplx ConjRational::eval_numeric(const Quat &q) const { return NumericRational(*this)(q); }

} // namespace quatfun

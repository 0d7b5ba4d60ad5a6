#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quat.hpp"
#include "scalar.hpp"

namespace quatfun {

/// The four formally independent variables z1, conj(z1), z2, conj(z2).
enum class Var : int { z1 = 0, z1bar = 1, z2 = 2, z2bar = 3 };

inline constexpr std::array<Var, 4> all_vars{Var::z1, Var::z1bar, Var::z2, Var::z2bar};

inline Var conjugate_var(Var v) {
  switch (v) {
  case Var::z1: return Var::z1bar;
  case Var::z1bar: return Var::z1;
  case Var::z2: return Var::z2bar;
  default: return Var::z2;
  }
}

inline const char *var_name(Var v) {
  static constexpr const char *names[] = {"z1", "c1", "z2", "c2"};
  return names[static_cast<int>(v)];
}

using Exponent = std::array<std::uint16_t, 4>;

inline unsigned total_degree(const Exponent &e) { return unsigned(e[0]) + e[1] + e[2] + e[3]; }

// Swap z <-> conj(z) exponents.
inline Exponent conjugate_exponent(const Exponent &e) { return {e[1], e[0], e[3], e[2]}; }

/// Sparse polynomial in z1, z̄1, z2, z̄2 with exact complex coefficients.
///
/// Canonical form: no stored zero coefficients, so structural equality is
/// polynomial equality. Monomials are ordered lexicographically on the
/// exponent tuple, which is a monomial order; the leading term is the last.
class ConjPoly {
public:
  using Terms = std::map<Exponent, ExactComplex>;

  ConjPoly() = default;
  ConjPoly(ExactComplex c) { add_term({0, 0, 0, 0}, std::move(c)); }
  ConjPoly(long c) : ConjPoly(ExactComplex(c)) {}

  static ConjPoly variable(Var v) {
    Exponent e{0, 0, 0, 0};
    e[static_cast<int>(v)] = 1;
    return monomial(e, ExactComplex(1));
  }
  static ConjPoly monomial(const Exponent &e, ExactComplex c) {
    ConjPoly p;
    p.add_term(e, std::move(c));
    return p;
  }
  static ConjPoly z1() { return variable(Var::z1); }
  static ConjPoly z1bar() { return variable(Var::z1bar); }
  static ConjPoly z2() { return variable(Var::z2); }
  static ConjPoly z2bar() { return variable(Var::z2bar); }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  ExactComplex constant_term() const {
    auto it = terms_.find({0, 0, 0, 0});
    return it == terms_.end() ? ExactComplex{} : it->second;
  }
  std::size_t size() const { return terms_.size(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto &[e, c] : terms_)
      d = std::max(d, total_degree(e));
    return d;
  }

  /// Lowest total degree carrying a nonzero coefficient; nullopt for 0.
  std::optional<unsigned> lowest_degree() const {
    if (terms_.empty())
      return std::nullopt;
    unsigned d = std::numeric_limits<unsigned>::max();
    for (const auto &[e, c] : terms_)
      d = std::min(d, total_degree(e));
    return d;
  }

  void add_term(const Exponent &e, ExactComplex c) {
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(e, std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  ConjPoly &operator+=(const ConjPoly &o) {
    for (const auto &[e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }
  ConjPoly &operator-=(const ConjPoly &o) {
    for (const auto &[e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }
  friend ConjPoly operator+(ConjPoly a, const ConjPoly &b) { return a += b; }
  friend ConjPoly operator-(ConjPoly a, const ConjPoly &b) { return a -= b; }
  friend ConjPoly operator-(const ConjPoly &a) {
    ConjPoly r;
    for (const auto &[e, c] : a.terms_)
      r.terms_.emplace(e, -c);
    return r;
  }

  friend ConjPoly operator*(const ConjPoly &a, const ConjPoly &b) {
    ConjPoly r;
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_)
        r.add_term(add_exponents(ea, eb), ca * cb);
    return r;
  }
  ConjPoly &operator*=(const ConjPoly &o) { return *this = *this * o; }

  ConjPoly scaled(const ExactComplex &s) const {
    ConjPoly r;
    if (s.is_zero())
      return r;
    for (const auto &[e, c] : terms_)
      r.terms_.emplace(e, c * s);
    return r;
  }

  ConjPoly pow(unsigned n) const {
    ConjPoly r(1), base = *this;
    while (n) {
      if (n & 1u)
        r *= base;
      n >>= 1u;
      if (n)
        base *= base;
    }
    return r;
  }

  friend bool operator==(const ConjPoly &a, const ConjPoly &b) { return a.terms_ == b.terms_; }

  /// Formal complex conjugate: swap z <-> z̄ and conjugate coefficients.
  ConjPoly conjugate() const {
    ConjPoly r;
    for (const auto &[e, c] : terms_)
      r.terms_.emplace(conjugate_exponent(e), quatfun::conj(c));
    return r;
  }

  bool is_real() const { return conjugate() == *this; }

  /// Formal partial derivative, the four variables being independent.
  ConjPoly derive(Var v) const {
    const int k = static_cast<int>(v);
    ConjPoly r;
    for (const auto &[e, c] : terms_) {
      if (e[k] == 0)
        continue;
      Exponent d = e;
      d[k] -= 1;
      r.terms_.emplace(d, c * ExactComplex(long(e[k])));
    }
    return r;
  }

  /// Exact division; nullopt when `d` does not divide this polynomial.
  std::optional<ConjPoly> divide_exact(const ConjPoly &d) const {
    if (d.is_zero())
      return std::nullopt;
    const auto &[ld, lc] = *d.terms_.rbegin();
    ConjPoly rem = *this, quot;
    while (!rem.is_zero()) {
      const auto [lm, c] = *rem.terms_.rbegin();
      if (!divides(ld, lm))
        return std::nullopt;
      Exponent qe = sub_exponents(lm, ld);
      ExactComplex qc = c / lc;
      quot.add_term(qe, qc);
      for (const auto &[e, dc] : d.terms_)
        rem.add_term(add_exponents(qe, e), -(dc * qc));
    }
    return quot;
  }

  /// Substitute z_k -> z_k + a_k (and z̄_k -> z̄_k + conj(a_k)).
  ConjPoly shifted(const ExactQuat &a) const {
    const std::array<ExactComplex, 4> offs{a.z1, quatfun::conj(a.z1), a.z2, quatfun::conj(a.z2)};
    std::array<std::vector<ConjPoly>, 4> powers;
    for (int k = 0; k < 4; ++k) {
      unsigned maxe = 0;
      for (const auto &[e, c] : terms_)
        maxe = std::max<unsigned>(maxe, e[k]);
      ConjPoly lin = variable(all_vars[k]) + ConjPoly(offs[k]);
      powers[k].push_back(ConjPoly(1));
      for (unsigned n = 1; n <= maxe; ++n)
        powers[k].push_back(powers[k].back() * lin);
    }
    ConjPoly r;
    for (const auto &[e, c] : terms_) {
      ConjPoly t(c);
      for (int k = 0; k < 4; ++k)
        if (e[k])
          t *= powers[k][e[k]];
      r += t;
    }
    return r;
  }

  /// Evaluate at q = (z1, z2); works for both numeric and exact points.
  template <typename C> C eval(const BasicQuat<C> &q) const {
    using T = scalar_traits<C>;
    const std::array<C, 4> vals{q.z1, T::conj(q.z1), q.z2, T::conj(q.z2)};
    C sum{};
    for (const auto &[e, c] : terms_) {
      C t = coefficient_as<C>(c);
      for (int k = 0; k < 4; ++k)
        for (unsigned n = 0; n < e[k]; ++n)
          t *= vals[k];
      sum += t;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string t = term_string(it->first, it->second);
      if (first) {
        out = t;
        first = false;
      } else if (t[0] == '-') {
        out += " - " + t.substr(1);
      } else {
        out += " + " + t;
      }
    }
    return out;
  }

  static Exponent add_exponents(const Exponent &a, const Exponent &b) {
    return {std::uint16_t(a[0] + b[0]), std::uint16_t(a[1] + b[1]), std::uint16_t(a[2] + b[2]),
            std::uint16_t(a[3] + b[3])};
  }
  static Exponent sub_exponents(const Exponent &a, const Exponent &b) {
    return {std::uint16_t(a[0] - b[0]), std::uint16_t(a[1] - b[1]), std::uint16_t(a[2] - b[2]),
            std::uint16_t(a[3] - b[3])};
  }
  static bool divides(const Exponent &d, const Exponent &e) {
    return d[0] <= e[0] && d[1] <= e[1] && d[2] <= e[2] && d[3] <= e[3];
  }

private:
  template <typename C> static C coefficient_as(const ExactComplex &c) {
    if constexpr (std::is_same_v<C, ExactComplex>)
      return c;
    else
      return c.to_cplx();
  }

  static std::string term_string(const Exponent &e, const ExactComplex &c) {
    std::string mono;
    for (int k = 0; k < 4; ++k) {
      if (!e[k])
        continue;
      if (!mono.empty())
        mono += "*";
      mono += var_name(all_vars[k]);
      if (e[k] > 1)
        mono += "^" + std::to_string(e[k]);
    }
    // "1/2*i", not "1/2i", which would read as 1/(2i).
    auto imag = [](const Rational &v) {
      std::ostringstream os;
      os << v << (v.get_den() == 1 ? "i" : "*i");
      return os.str();
    };
    std::ostringstream cs;
    if (c.is_real()) {
      cs << c.re;
    } else if (sgn(c.re) == 0) {
      cs << imag(c.im);
    } else {
      cs << "(" << c.re << (sgn(c.im) > 0 ? "+" : "-") << imag(abs(c.im)) << ")";
    }
    std::string coef = cs.str();
    if (mono.empty())
      return coef;
    if (coef == "1")
      return mono;
    if (coef == "-1")
      return "-" + mono;
    return coef + "*" + mono;
  }

  Terms terms_;
};

/// Double-precision snapshot of a ConjPoly for fast repeated evaluation.
class NumericPoly {
public:
  NumericPoly() = default;
  explicit NumericPoly(const ConjPoly &p) {
    terms_.reserve(p.size());
    for (const auto &[e, c] : p.terms()) {
      terms_.push_back({e, c.to_cplx()});
      for (int k = 0; k < 4; ++k)
        max_exp_ = std::max<unsigned>(max_exp_, e[k]);
    }
  }

  bool is_zero() const { return terms_.empty(); }

  /// Value and the largest single-term magnitude (the local coefficient scale).
  std::pair<cplx, double> eval_with_scale(const Quat &q) const {
    std::array<std::array<cplx, 16>, 4> pw;
    std::vector<std::array<cplx, 4>> big;
    const std::array<cplx, 4> vals{q.z1, std::conj(q.z1), q.z2, std::conj(q.z2)};
    const bool small = max_exp_ < 16;
    if (small) {
      for (int k = 0; k < 4; ++k) {
        pw[k][0] = 1.0;
        for (unsigned n = 1; n <= max_exp_; ++n)
          pw[k][n] = pw[k][n - 1] * vals[k];
      }
    }
    cplx sum = 0.0;
    double scale = 0.0;
    for (const auto &[e, c] : terms_) {
      cplx t = c;
      for (int k = 0; k < 4; ++k) {
        if (small)
          t *= pw[k][e[k]];
        else
          t *= std::pow(vals[k], double(e[k]));
      }
      sum += t;
      scale = std::max(scale, std::abs(t));
    }
    return {sum, scale};
  }

  cplx operator()(const Quat &q) const { return eval_with_scale(q).first; }

private:
  std::vector<std::pair<Exponent, cplx>> terms_;
  unsigned max_exp_ = 0;
};

} // namespace quatfun

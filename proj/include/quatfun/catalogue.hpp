#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parse.hpp"
#include "qfunction.hpp"

namespace quatfun {

enum class ZeroSetKind { Empty, Point, RealPlane, ComplexHypersurface };

struct ZeroSet {
  ZeroSetKind kind = ZeroSetKind::Empty;
  std::string description;
  // Distance-like test: true when q lies within `tol` of the set.
  std::function<bool(const Quat &, double)> near;
};

struct KnownFlags {
  bool hyperholomorphic = false;
  bool hypermeromorphic = false;
};

struct CatalogueEntry {
  std::string name;
  std::vector<Rational> params;
  QFunction f;
  KnownFlags known_flags;
  ZeroSet zero_set;
  std::string role;
};

inline std::vector<std::string> catalogue_names() {
  return {"conj", "cauchy_kernel", "F", "prop34", "holo", "q_conj"};
}

namespace detail {

inline ZeroSet origin_only() {
  return {ZeroSetKind::Point, "{0}", [](const Quat &q, double tol) { return modulus(q) <= tol; }};
}

inline CatalogueEntry holo_entry(const ConjPoly &p, const std::string &text) {
  for (const auto &[e, c] : p.terms())
    if (e[1] || e[3])
      throw Error("holo: polynomial '" + text + "' depends on c1 or c2", false);
  if (p.is_zero())
    throw IdenticallyZero();
  CatalogueEntry e;
  e.name = "holo:" + text;
  e.f = QFunction(ConjRational(p), {}, e.name);
  e.known_flags = {true, true};
  if (p.is_constant()) {
    e.zero_set = {ZeroSetKind::Empty, "empty", [](const Quat &, double) { return false; }};
  } else {
    NumericPoly np(p);
    e.zero_set = {ZeroSetKind::ComplexHypersurface, "{" + text + " = 0}",
                  [np](const Quat &q, double tol) { return std::abs(np(q)) <= tol; }};
  }
  e.role = "holomorphic function of (z1, z2) lifted with zero j-component";
  return e;
}

} // namespace detail

/// Named example functions. `holo:POLY` lifts a holomorphic polynomial.
inline CatalogueEntry builtin(const std::string &name, const std::vector<Rational> &params = {}) {
  const ConjPoly z1 = ConjPoly::z1(), c1 = ConjPoly::z1bar(), z2 = ConjPoly::z2(),
                 c2 = ConjPoly::z2bar();
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw Error(name + " takes " + std::to_string(n) + " parameter(s), got " +
                      std::to_string(params.size()),
                  false);
  };
  CatalogueEntry e;
  e.name = name;
  e.params = params;
  if (name == "conj") {
    want(0);
    e.f = QFunction(c1, c2, name);
    e.known_flags = {true, false};
    e.zero_set = detail::origin_only();
    e.role = "conjugate coordinates z̄1 + z̄2 j";
  } else if (name == "cauchy_kernel") {
    want(0);
    ConjPoly n = z1 * c1 + z2 * c2;
    ConjRational inv_n2 = ConjRational::reciprocal(n) * ConjRational::reciprocal(n);
    e.f = QFunction(ConjRational(c1) * inv_n2, ConjRational(-c2) * inv_n2, name);
    e.known_flags = {true, false};
    e.zero_set = {ZeroSetKind::Empty, "empty (pole at 0)",
                  [](const Quat &, double) { return false; }};
    e.role = "Cauchy kernel (z1 z̄1 + z2 z̄2)^-2 (z̄1 - z̄2 j)";
  } else if (name == "F") {
    want(0);
    e.f = QFunction(z1, c2, name);
    e.known_flags = {false, false};
    e.zero_set = detail::origin_only();
    e.role = "z1 + z̄2 j, not hyperholomorphic";
  } else if (name == "prop34") {
    want(2);
    const ExactComplex a(params[0]), b(params[1]);
    e.f = QFunction(z1 + c1 + z2 + c2 + ConjPoly(a), -z1 - c1 + z2 + c2 + ConjPoly(b), name);
    e.known_flags = {true, true};
    // f1 = 2x1 + 2x2 + A, f2 = -2x1 + 2x2 + B.
    const double x1 = Rational(params[1] - params[0]).get_d() / 4.0;
    const double x2 = -Rational(params[0] + params[1]).get_d() / 4.0;
    e.zero_set = {ZeroSetKind::RealPlane,
                  "{x1 = " + Rational((params[1] - params[0]) / 4).get_str() +
                      ", x2 = " + Rational(-(params[0] + params[1]) / 4).get_str() + "}",
                  [x1, x2](const Quat &q, double tol) {
                    return std::hypot(q.z1.real() - x1, q.z2.real() - x2) <= tol;
                  }};
    e.role = "real-affine hypermeromorphic family";
  } else if (name == "holo") {
    want(0);
    return detail::holo_entry(z1, "z1");
  } else if (name.rfind("holo:", 0) == 0) {
    want(0);
    std::string text = name.substr(5);
    ConjRational r = parse_rational(text);
    if (!r.is_polynomial())
      throw Error("holo: expects a polynomial, got '" + text + "'", false);
    return detail::holo_entry(r.num(), text);
  } else if (name == "q_conj") {
    want(0);
    e.f = QFunction(c1, -z2, name);
    e.known_flags = {false, false};
    e.zero_set = detail::origin_only();
    e.role = "quaternion conjugate z̄1 - z2 j";
  } else {
    throw UnknownName(name);
  }
  return e;
}

/// Catalogue name, `holo:POLY`, or a literal "N1/D1 ; N2/D2".
inline QFunction resolve_function(const std::string &spec, const std::vector<Rational> &params = {}) {
  const auto names = catalogue_names();
  if (std::find(names.begin(), names.end(), spec) != names.end() || spec.rfind("holo:", 0) == 0)
    return builtin(spec, params).f;
  bool identifier = !spec.empty();
  for (char c : spec)
    identifier = identifier && (std::isalpha(static_cast<unsigned char>(c)) || c == '_');
  if (identifier && spec != "i")
    throw UnknownName(spec);
  return parse_function(spec).set_label(spec);
}

} // namespace quatfun

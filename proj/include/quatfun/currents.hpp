#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "errors.hpp"
#include "forms.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "qfunction.hpp"
#include "schedule.hpp"
#include "sphere.hpp"
#include "test_forms.hpp"

namespace quatfun {

/// Value and jet access for symbolic functions (compiled partials) and
/// samplers (central differences).
class FunctionProbe {
public:
  explicit FunctionProbe(const QFunction &f, double h = 1e-4) : f_(f), h_(h) {
    if (f.is_symbolic())
      compiled_ = CompiledFunction(f);
  }
  Quat value(const Quat &q) const { return f_.is_symbolic() ? compiled_(q) : f_(q); }
  WirtingerJet jet(const Quat &q) const {
    return f_.is_symbolic() ? compiled_.jet(q) : numeric_jet(f_, q, h_, true);
  }

private:
  QFunction f_;
  CompiledFunction compiled_;
  double h_;
};

/// ω = (1/f)(df1 + df2 j) at a point, as W1 + W2 j with 1-forms W1, W2.
inline QuatForm omega_at(const WirtingerJet &j) {
  const double n = modulus_sq(j.value);
  if (n == 0.0)
    throw PoleOnDomain("f vanishes at an integration node");
  const cplx g1 = std::conj(j.value.z1) / n, g2 = -j.value.z2 / n;
  auto df = [&](int i) {
    return one_form(j.d(i, Var::z1), j.d(i, Var::z1bar), j.d(i, Var::z2), j.d(i, Var::z2bar));
  };
  const Form df1 = df(1), df2 = df(2);
  return {g1 * df1 - g2 * conj(df2), g1 * df2 + g2 * conj(df1)};
}

/// Pullback of ω∧φ on the given tangent vectors; the result is the
/// quaternion (∫-density of the complex part) + (j-part) j.
inline Quat pair_density(const QuatForm &omega, const Form &phi, const std::vector<Quat> &tangents) {
  return {evaluate_on(wedge(omega.x, phi), tangents),
          evaluate_on(wedge(omega.y, conj(phi)), tangents)};
}

/// d|f|²(v) = 2 Re Σ_i conj(f_i) df_i(v).
inline double dmod_sq(const WirtingerJet &j, const Quat &v) {
  const auto g = generator_values(v);
  cplx s = 0.0;
  for (int i = 1; i <= 2; ++i) {
    cplx dfi = 0.0;
    for (int k = 0; k < 4; ++k)
      dfi += j.partials[i - 1][k] * g[k];
    s += std::conj(i == 1 ? j.value.z1 : j.value.z2) * dfi;
  }
  return 2.0 * s.real();
}

enum class Domain { Level, Ball };

inline const char *to_string(Domain d) { return d == Domain::Level ? "level" : "ball"; }

struct CurrentOptions {
  Domain domain = Domain::Level;
  // Radial panels for ball-type regions.
  int n_radial = 16;
  int outer_panels = 6;
  // Adaptive η integration on level sets.
  double gk_rel_tol = 1e-10;
  double gk_abs_tol = 1e-13;
  int gk_max_intervals = 200;
  // Ray root bracketing: geometric scan from 1e-6 R_out to R_out.
  int scan_points = 64;
  double jet_h = 1e-4;
};

namespace current_detail {

inline double quat_abs(const Quat &q) { return modulus(q); }

// Radius ρ(u) of the level set |f| = ε along the ray λ Θ(u), λ ∈ (0, R_out].
struct Ray {
  bool hit = false;
  double rho = 0.0;
  int crossings = 0;
};

inline Ray solve_ray(const FunctionProbe &probe, const Quat &theta, double eps, double f0_sq,
                     double R_out, int scan_points) {
  const double eps2 = eps * eps;
  auto G = [&](double lam) { return modulus_sq(probe.value(theta * lam)) - eps2; };
  Ray r;
  double lo = 0.0, glo = f0_sq - eps2;
  const double lmin = 1e-6 * R_out, step = std::pow(1e6, 1.0 / (scan_points - 1));
  double lam = lmin;
  double bracket_lo = 0, bracket_hi = 0, g_lo = 0, g_hi = 0;
  for (int i = 0; i < scan_points; ++i, lam *= step) {
    const double l = std::min(lam, R_out);
    const double g = G(l);
    if ((glo < 0) != (g < 0)) {
      if (r.crossings == 0) {
        bracket_lo = lo;
        bracket_hi = l;
        g_lo = glo;
        g_hi = g;
      }
      ++r.crossings;
    }
    lo = l;
    glo = g;
  }
  if (r.crossings == 0)
    return r;
  boost::uintmax_t iters = 100;
  auto [a, b] = boost::math::tools::toms748_solve(
      G, bracket_lo, bracket_hi, g_lo, g_hi, boost::math::tools::eps_tolerance<double>(50), iters);
  r.hit = true;
  r.rho = 0.5 * (a + b);
  return r;
}

// Level-set residue density at angular node (η, ξ1, ξ2).
inline Quat level_density(const FunctionProbe &probe, const TestForm2 &phi, double eta,
                          double xi1, double xi2, double eps, double f0_sq, double R_out,
                          int scan_points, double orient, int &multi) {
  const Quat theta = SphereChart::point(eta, xi1, xi2);
  Ray ray = solve_ray(probe, theta, eps, f0_sq, R_out, scan_points);
  if (ray.crossings > 1)
    ++multi;
  if (!ray.hit)
    return {};
  const Quat q = theta * ray.rho;
  const Form form = phi.at(q);
  bool any = false;
  for (const auto &c : form.c)
    any = any || c != 0.0;
  if (!any)
    return {};
  const WirtingerJet jet = probe.jet(q);
  const auto t = SphereChart::tangents(eta, xi1, xi2);
  const double g_lam = dmod_sq(jet, theta);
  std::vector<Quat> tang;
  for (int k = 0; k < 3; ++k) {
    const double rho_k = -dmod_sq(jet, t[k] * ray.rho) / g_lam;
    tang.push_back(theta * rho_k + t[k] * ray.rho);
  }
  return pair_density(omega_at(jet), form, tang) * orient;
}

} // namespace current_detail

/// ∫_{|f| = ε} ω∧φ (level domain) or ∫_{||q|| = ε} ω∧φ (ball domain),
/// oriented as the boundary of the inner region.
inline Quat residue_at(const QFunction &f, const TestForm2 &phi, const QuadratureRule &rule,
                       double eps, const CurrentOptions &opt = {},
                       std::vector<std::string> *notes = nullptr) {
  FunctionProbe probe(f, opt.jet_h);
  const double orient = SphereChart::orientation();
  const double R_out = phi.support.radius();
  const int nx = rule.n_xi;
  const double wxi2 = rule.w_xi * rule.w_xi;

  if (opt.domain == Domain::Ball) {
    // Metric sphere: tangents ε Θ_k.
    Quat total{};
    for (std::size_t i = 0; i < rule.eta.size(); ++i) {
      const double eta = rule.eta[i];
      auto rows = parallel_map<Quat>(std::size_t(nx), [&](std::size_t a) {
        Quat row{};
        for (int b = 0; b < nx; ++b) {
          const Quat theta = SphereChart::point(eta, rule.xi(int(a)), rule.xi(b));
          const Quat q = theta * eps;
          const Form form = phi.at(q);
          const auto t = SphereChart::tangents(eta, rule.xi(int(a)), rule.xi(b));
          WirtingerJet jet;
          try {
            jet = probe.jet(q);
          } catch (const PoleError &) {
            throw PoleOnDomain("pole of f on the integration sphere");
          }
          row += pair_density(omega_at(jet), form, {t[0] * eps, t[1] * eps, t[2] * eps});
        }
        return row;
      });
      Quat s{};
      for (const auto &r : rows)
        s += r;
      // rule.w_eta carries sin η cos η; the pullback already includes the
      // Jacobian, so divide it back out.
      total += s * (rule.w_eta[i] / SphereChart::measure(eta) * wxi2 * orient);
    }
    return total;
  }

  double f0_sq;
  try {
    f0_sq = modulus_sq(probe.value({}));
  } catch (const PoleError &) {
    throw PoleOnDomain("f has a pole at the origin; the level set is not a closed surface");
  }
  if (f0_sq >= eps * eps)
    throw PoleOnDomain("|f(0)| >= eps: the level set does not enclose the origin");
  int multi = 0;
  auto I = [&](double eta) {
    auto rows = parallel_map<std::pair<Quat, int>>(std::size_t(nx), [&](std::size_t a) {
      Quat row{};
      int m = 0;
      for (int b = 0; b < nx; ++b)
        row += current_detail::level_density(probe, phi, eta, rule.xi(int(a)), rule.xi(b), eps,
                                             f0_sq, R_out, opt.scan_points, orient, m);
      return std::pair{row, m};
    });
    Quat s{};
    for (const auto &[r, m] : rows) {
      s += r;
      multi += m;
    }
    return s * wxi2;
  };
  auto res = adaptive_gk<Quat>(I, 0.0, pi / 2, current_detail::quat_abs, opt.gk_abs_tol,
                               opt.gk_rel_tol, opt.gk_max_intervals);
  if (notes) {
    if (multi > 0)
      notes->push_back("rays crossing the level set more than once: " + std::to_string(multi));
    if (res.intervals >= opt.gk_max_intervals)
      notes->push_back("eta integration hit the interval cap at eps=" + std::to_string(eps));
  }
  return res.value;
}

/// Res[ω](φ) as the ε → 0 limit of residue_at.
inline CurrentEstimate residue_pair(const QFunction &f, const TestForm2 &phi,
                                    const QuadratureRule &rule, const EpsilonSchedule &s,
                                    const CurrentOptions &opt = {}) {
  s.check_within(phi.support.radius());
  CurrentEstimate e;
  e.eps = s.values();
  for (double eps : e.eps)
    e.values.push_back(residue_at(f, phi, rule, eps, opt, &e.notes));
  assess(e);
  return e;
}

namespace current_detail {

// ∫ over λ ∈ [a, b] and the sphere of the pulled-back 4-form ω∧ψ.
inline Quat pv_shell(const FunctionProbe &probe, const TestForm3 &psi, const QuadratureRule &rule,
                     double a, double b, int n_radial, double orient) {
  auto [lx, lw] = gauss_legendre(n_radial, a, b);
  const int nx = rule.n_xi;
  const double wxi2 = rule.w_xi * rule.w_xi;
  Quat total{};
  for (std::size_t i = 0; i < rule.eta.size(); ++i) {
    const double eta = rule.eta[i];
    auto rows = parallel_map<Quat>(std::size_t(nx), [&](std::size_t ai) {
      Quat row{};
      for (int bi = 0; bi < nx; ++bi) {
        const double x1 = rule.xi(int(ai)), x2 = rule.xi(bi);
        const Quat theta = SphereChart::point(eta, x1, x2);
        const auto t = SphereChart::tangents(eta, x1, x2);
        for (std::size_t r = 0; r < lx.size(); ++r) {
          const double lam = lx[r];
          const Quat q = theta * lam;
          const Form form = psi.at(q);
          bool any = false;
          for (const auto &c : form.c)
            any = any || c != 0.0;
          if (!any)
            continue;
          WirtingerJet jet;
          try {
            jet = probe.jet(q);
          } catch (const PoleError &) {
            throw PoleOnDomain("pole of f inside the integration region");
          }
          if (modulus(jet.value) <= 1e-12 * std::max(1.0, lam))
            throw PoleOnDomain("f vanishes inside the integration region");
          row += pair_density(omega_at(jet), form, {theta, t[0] * lam, t[1] * lam, t[2] * lam}) *
                 lw[r];
        }
      }
      return row;
    });
    Quat s{};
    for (const auto &r : rows)
      s += r;
    total += s * (rule.w_eta[i] / SphereChart::measure(eta) * wxi2 * orient);
  }
  return total;
}

} // namespace current_detail

/// Vp[ω](ψ) = lim ∫_{||q|| ≥ ε} ω∧ψ (ball domain, default) or over
/// {|f| ≥ ε} (level domain).
inline CurrentEstimate pv_pair(const QFunction &f, const TestForm3 &psi, const QuadratureRule &rule,
                               const EpsilonSchedule &s, CurrentOptions opt = {Domain::Ball}) {
  const double R_out = psi.support.radius();
  s.check_within(R_out);
  FunctionProbe probe(f, opt.jet_h);
  const double orient = SphereChart::orientation();
  CurrentEstimate e;
  e.eps = s.values();

  if (opt.domain == Domain::Ball) {
    // Outer shell once, then one annulus per schedule step.
    Quat acc{};
    const double h = (R_out - e.eps[0]) / opt.outer_panels;
    for (int p = 0; p < opt.outer_panels; ++p)
      acc += current_detail::pv_shell(probe, psi, rule, e.eps[0] + p * h, e.eps[0] + (p + 1) * h,
                                      opt.n_radial, orient);
    for (std::size_t k = 0; k < e.eps.size(); ++k) {
      if (k > 0)
        acc += current_detail::pv_shell(probe, psi, rule, e.eps[k], e.eps[k - 1], opt.n_radial,
                                        orient);
      e.values.push_back(acc);
    }
    assess(e);
    return e;
  }

  double f0_sq;
  try {
    f0_sq = modulus_sq(probe.value({}));
  } catch (const PoleError &) {
    throw PoleOnDomain("f has a pole at the origin");
  }
  const int nx = rule.n_xi;
  const double wxi2 = rule.w_xi * rule.w_xi;
  const auto [ref_x, ref_w] = gauss_legendre(opt.n_radial * opt.outer_panels, 0.0, 1.0);
  for (double eps : e.eps) {
    if (f0_sq >= eps * eps)
      throw PoleOnDomain("|f(0)| >= eps: the level set does not enclose the origin");
    Quat total{};
    int multi = 0;
    for (std::size_t i = 0; i < rule.eta.size(); ++i) {
      const double eta = rule.eta[i];
      auto rows = parallel_map<std::pair<Quat, int>>(std::size_t(nx), [&](std::size_t ai) {
        Quat row{};
        int m = 0;
        for (int bi = 0; bi < nx; ++bi) {
          const double x1 = rule.xi(int(ai)), x2 = rule.xi(bi);
          const Quat theta = SphereChart::point(eta, x1, x2);
          auto ray = current_detail::solve_ray(probe, theta, eps, f0_sq, R_out, opt.scan_points);
          if (ray.crossings > 1)
            ++m;
          if (!ray.hit)
            continue;
          const auto t = SphereChart::tangents(eta, x1, x2);
          const double len = R_out - ray.rho;
          for (std::size_t r = 0; r < ref_x.size(); ++r) {
            const double lam = ray.rho + len * ref_x[r];
            const Quat q = theta * lam;
            const Form form = psi.at(q);
            const WirtingerJet jet = probe.jet(q);
            row += pair_density(omega_at(jet), form,
                                {theta, t[0] * lam, t[1] * lam, t[2] * lam}) *
                   (len * ref_w[r]);
          }
        }
        return std::pair{row, m};
      });
      Quat sum{};
      for (const auto &[r, m] : rows) {
        sum += r;
        multi += m;
      }
      total += sum * (rule.w_eta[i] / SphereChart::measure(eta) * wxi2 * orient);
    }
    if (multi > 0)
      e.notes.push_back("rays crossing the level set more than once: " + std::to_string(multi));
    e.values.push_back(total);
  }
  assess(e);
  return e;
}

} // namespace quatfun

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "schedule.hpp"
#include "sphere.hpp"
#include "test_forms.hpp"

namespace quatfun {

/// g(z) = Σ_{l=1..k} a_{-l} z^{-l} + Σ_n c_n z^n.
struct Laurent1D {
  std::vector<cplx> principal; // a_{-1}, a_{-2}, ...
  std::vector<cplx> tail;      // c_0, c_1, ...

  static Laurent1D pole(int order, cplx a = 1.0) {
    Laurent1D g;
    g.principal.assign(std::size_t(order), 0.0);
    g.principal.back() = a;
    return g;
  }

  cplx operator()(cplx z) const {
    cplx v = 0.0, zi = 1.0 / z, p = zi;
    for (const cplx &a : principal) {
      v += a * p;
      p *= zi;
    }
    cplx h = 0.0;
    for (auto it = tail.rbegin(); it != tail.rend(); ++it)
      h = h * z + *it;
    return v + h;
  }
};

using TestFunction1D = std::function<cplx(cplx)>;

/// z^j / j! · b(|z - c| / R).
inline TestFunction1D monomial_bump(int j, double R = 1.0, cplx c = 0.0) {
  double fact = std::tgamma(j + 1.0);
  return [=](cplx z) { return std::pow(z, j) / fact * bump(std::abs(z - c) / R); };
}

/// ∫_{|z| = ε} g φ dz by the trapezoid rule in θ, z = ε e^{iθ}.
inline cplx residue_1d(const Laurent1D &g, const TestFunction1D &phi, double eps,
                       int n_theta = 256) {
  cplx sum = 0.0;
  const cplx I(0, 1);
  for (int k = 0; k < n_theta; ++k) {
    cplx z = std::polar(eps, 2.0 * pi * k / n_theta);
    sum += g(z) * phi(z) * I * z;
  }
  return sum * (2.0 * pi / n_theta);
}

inline CurrentEstimate res_limit_1d(const Laurent1D &g, const TestFunction1D &phi,
                                    const EpsilonSchedule &s, int n_theta = 256) {
  CurrentEstimate e;
  e.eps = s.values();
  for (double eps : e.eps)
    e.values.push_back({residue_1d(g, phi, eps, n_theta), 0.0});
  assess(e);
  return e;
}

/// Vp pairing ∫_{|z| ≥ ε} g dz ∧ ψ0 dz̄ = -2i ∫ g ψ0 dA over ε ≤ |z| ≤ R_out,
/// by shared Gauss-Legendre radial panels and a trapezoid in θ.
inline CurrentEstimate pv_1d(const Laurent1D &g, const TestFunction1D &psi0, double R_out,
                             const EpsilonSchedule &s, int n_theta = 256, int n_radial = 16,
                             int outer_panels = 6) {
  s.check_within(R_out);
  CurrentEstimate e;
  e.eps = s.values();
  const cplx factor(0, -2);
  auto panel = [&](double a, double b) {
    auto [x, w] = gauss_legendre(n_radial, a, b);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      cplx ring = 0.0;
      for (int k = 0; k < n_theta; ++k) {
        cplx z = std::polar(x[i], 2.0 * pi * k / n_theta);
        ring += g(z) * psi0(z);
      }
      sum += ring * (2.0 * pi / n_theta) * x[i] * w[i];
    }
    return factor * sum;
  };
  cplx acc = 0.0;
  const double h = (R_out - e.eps[0]) / outer_panels;
  for (int p = 0; p < outer_panels; ++p)
    acc += panel(e.eps[0] + p * h, e.eps[0] + (p + 1) * h);
  for (std::size_t k = 0; k < e.eps.size(); ++k) {
    if (k > 0)
      acc += panel(e.eps[k], e.eps[k - 1]);
    e.values.push_back({acc, 0.0});
  }
  assess(e);
  return e;
}

/// b_j from the pairing with φ_j = z^j / j! · bump: Res(φ_j) = b_j.
inline CurrentEstimate recover_b(const Laurent1D &g, int j, const EpsilonSchedule &s,
                                 double R = 1.0, int n_theta = 256) {
  return res_limit_1d(g, monomial_bump(j, R), s, n_theta);
}

} // namespace quatfun

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "errors.hpp"
#include "forms.hpp"
#include "quat.hpp"

namespace quatfun {

inline constexpr double pi = std::numbers::pi;

/// Hopf coordinates (η, ξ1, ξ2) ↦ (cos η e^{iξ1}, sin η e^{iξ2}) on the
/// unit sphere, η ∈ [0, π/2], ξ ∈ [0, 2π).
struct SphereChart {
  static Quat point(double eta, double xi1, double xi2) {
    return {std::polar(std::cos(eta), xi1), std::polar(std::sin(eta), xi2)};
  }

  /// ∂/∂η, ∂/∂ξ1, ∂/∂ξ2 of the unit chart.
  static std::array<Quat, 3> tangents(double eta, double xi1, double xi2) {
    const cplx e1 = std::polar(1.0, xi1), e2 = std::polar(1.0, xi2);
    const double c = std::cos(eta), s = std::sin(eta);
    const cplx I(0, 1);
    return {Quat{-s * e1, c * e2}, Quat{I * c * e1, 0.0}, Quat{0.0, I * s * e2}};
  }

  /// Sign of det[Θ, Θ_η, Θ_ξ1, Θ_ξ2]; +1 when (η, ξ1, ξ2) is the outward
  /// boundary orientation of the ball.
  static double orientation() {
    const double eta = 0.7, x1 = 0.3, x2 = 1.1;
    auto t = tangents(eta, x1, x2);
    return real_det({point(eta, x1, x2), t[0], t[1], t[2]}) > 0 ? 1.0 : -1.0;
  }

  /// Induced measure density: dσ = sin η cos η dη dξ1 dξ2.
  static double measure(double eta) { return std::sin(eta) * std::cos(eta); }

  /// Coefficient of dλ∧dη∧dξ1∧dξ2 in the pullback of dz1∧dz̄1∧dz2∧dz̄2
  /// under (λ, η, ξ1, ξ2) ↦ λ Θ(η, ξ1, ξ2).
  static cplx volume_pullback(double lambda, double eta, double xi1, double xi2) {
    Form vol;
    vol[15] = 1.0;
    auto t = tangents(eta, xi1, xi2);
    return evaluate_on(vol, {point(eta, xi1, xi2), t[0] * lambda, t[1] * lambda, t[2] * lambda});
  }
};

/// Gauss-Legendre nodes and weights on [a, b].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a,
                                                                          double b) {
  std::vector<double> x, w;
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto push = [&](double t) {
    const double dp = boost::math::legendre_p_prime(n, t);
    x.push_back(mid + half * t);
    w.push_back(half * 2.0 / ((1.0 - t * t) * dp * dp));
  };
  // Zeros come as the nonnegative half; mirror them.
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
    if (*it != 0.0)
      push(-*it);
  for (double z : zeros)
    push(z);
  return {x, w};
}

/// Product rule on S³: Gauss-Legendre in η times periodic trapezoid in ξ1, ξ2.
/// `w_eta` includes the sin η cos η density, so Σ over all nodes of
/// w_eta[i] * w_xi² integrates against dσ.
struct QuadratureRule {
  std::vector<double> eta, w_eta;
  int n_xi = 0;
  double w_xi = 0.0;

  double xi(int k) const { return 2.0 * pi * k / n_xi; }
  std::size_t size() const { return eta.size() * std::size_t(n_xi) * std::size_t(n_xi); }

  template <typename T, typename F> T integrate(F &&fn) const {
    T sum{};
    for (std::size_t i = 0; i < eta.size(); ++i) {
      T row{};
      for (int a = 0; a < n_xi; ++a)
        for (int b = 0; b < n_xi; ++b)
          row += fn(SphereChart::point(eta[i], xi(a), xi(b)));
      sum += row * (w_eta[i] * w_xi * w_xi);
    }
    return sum;
  }
};

inline QuadratureRule build_quadrature(int n_eta, int n_xi) {
  if (n_eta < 4)
    throw TooCoarse("n_eta must be at least 4");
  if (n_xi < 8)
    throw TooCoarse("n_xi must be at least 8");
  QuadratureRule r;
  auto [x, w] = gauss_legendre(n_eta, 0.0, pi / 2);
  r.eta = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    r.w_eta.push_back(w[i] * SphereChart::measure(x[i]));
  r.n_xi = n_xi;
  r.w_xi = 2.0 * pi / n_xi;
  return r;
}

/// Globally adaptive Gauss-Kronrod (7/15) for vector-valued integrands.
/// `T` needs +, -, scaling by double, and a norm via `size_of`.
template <typename T> struct AdaptiveResult {
  T value{};
  double error = 0.0;
  int intervals = 0;
};

template <typename T, typename F, typename Norm>
AdaptiveResult<T> adaptive_gk(F &&fn, double a, double b, Norm &&norm, double abs_tol,
                              double rel_tol, int max_intervals = 400) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto &xk = gauss_kronrod<double, 15>::abscissa();
  const auto &wk = gauss_kronrod<double, 15>::weights();
  const auto &wg = gauss<double, 7>::weights();

  struct Piece {
    double a, b;
    T value;
    double err;
    bool operator<(const Piece &o) const { return err < o.err; }
  };
  auto eval = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    T f0 = fn(mid);
    T k = f0 * wk[0], g = f0 * wg[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
      T s = fn(mid - half * xk[i]) + fn(mid + half * xk[i]);
      k += s * wk[i];
      if (i % 2 == 0)
        g += s * wg[i / 2];
    }
    k = k * half;
    g = g * half;
    return Piece{lo, hi, k, norm(k - g)};
  };

  std::priority_queue<Piece> heap;
  heap.push(eval(a, b));
  AdaptiveResult<T> res;
  for (;;) {
    T total{};
    double err = 0.0;
    std::vector<Piece> all;
    // Sum in interval order so the result does not depend on heap layout.
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece &p, const Piece &q) { return p.a < q.a; });
    for (const auto &p : all) {
      total += p.value;
      err += p.err;
    }
    res = {total, err, int(all.size())};
    if (err <= std::max(abs_tol, rel_tol * norm(total)) || int(heap.size()) >= max_intervals)
      return res;
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    heap.push(eval(worst.a, mid));
    heap.push(eval(mid, worst.b));
  }
}

} // namespace quatfun

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "quat.hpp"

namespace quatfun {

/// ε_k = ε_0 ρ^k, k = 0..count-1.
struct EpsilonSchedule {
  double eps0 = 0.5;
  double ratio = 0.7;
  int count = 12;

  static EpsilonSchedule for_support(double R) { return {R / 2, 0.7, 12}; }

  std::vector<double> values() const {
    if (!(eps0 > 0) || !(ratio > 0 && ratio < 1) || count < 1)
      throw Error("invalid schedule: need eps0 > 0, 0 < ratio < 1, count >= 1", false);
    std::vector<double> e;
    double x = eps0;
    for (int k = 0; k < count; ++k, x *= ratio)
      e.push_back(x);
    return e;
  }

  void check_within(double support_radius) const {
    if (eps0 >= support_radius)
      throw Error("schedule eps0 must be below the support radius", false);
  }
};

struct CurrentEstimate {
  std::vector<double> eps;
  std::vector<Quat> values;
  Quat extrapolated{};
  bool converged = false;
  // |v_k - v_{k-1}| / |v_{k-1} - v_{k-2}| for each k >= 2.
  std::vector<double> ratios;
  std::vector<std::string> notes;
};

inline double quat_norm(const Quat &q) { return modulus(q); }

/// Least-squares fit of c0 + c1 ε + c2 ε² on the last (up to) five points;
/// returns c0.
inline Quat extrapolate(const std::vector<double> &eps, const std::vector<Quat> &values) {
  const std::size_t n = values.size();
  if (n == 0)
    return {};
  if (n == 1)
    return values[0];
  const std::size_t m = std::min<std::size_t>(5, n);
  const std::size_t deg = m >= 3 ? 2 : 1;
  const double scale = eps[n - 1];
  Eigen::MatrixXd A(m, deg + 1);
  Eigen::MatrixXd B(m, 4);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t k = n - m + r;
    const double t = eps[k] / scale;
    for (std::size_t c = 0; c <= deg; ++c)
      A(r, c) = std::pow(t, double(c));
    B(r, 0) = values[k].z1.real();
    B(r, 1) = values[k].z1.imag();
    B(r, 2) = values[k].z2.real();
    B(r, 3) = values[k].z2.imag();
  }
  Eigen::MatrixXd X = A.colPivHouseholderQr().solve(B);
  return {cplx(X(0, 0), X(0, 1)), cplx(X(0, 2), X(0, 3))};
}

/// Successive-difference ratios and the convergence rule: the last four
/// ratios are below 0.8. A difference below 1e-13 (1 + |v|) counts as
/// converged at that step (it is pure rounding).
inline void assess(CurrentEstimate &e) {
  const auto &v = e.values;
  e.ratios.clear();
  std::vector<double> diff;
  for (std::size_t k = 1; k < v.size(); ++k)
    diff.push_back(quat_norm(v[k] - v[k - 1]));
  std::vector<bool> ok;
  for (std::size_t k = 1; k < diff.size(); ++k) {
    const double floor = 1e-13 * (1.0 + quat_norm(v[k + 1]));
    const double r = diff[k - 1] > 0 ? diff[k] / diff[k - 1] : (diff[k] > 0 ? INFINITY : 0.0);
    e.ratios.push_back(r);
    ok.push_back(diff[k] <= floor || r < 0.8);
  }
  e.converged = ok.size() >= 4;
  for (std::size_t k = ok.size() >= 4 ? ok.size() - 4 : 0; k < ok.size(); ++k)
    e.converged = e.converged && ok[k];
  e.extrapolated = extrapolate(e.eps, e.values);
}

} // namespace quatfun

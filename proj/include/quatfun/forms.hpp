#pragma once

#include <array>
#include <bit>
#include <vector>

#include "quat.hpp"
#include "scalar.hpp"

namespace quatfun {

/// Complex differential form in the generators dz1, dz̄1, dz2, dz̄2
/// (indices 0..3). Coefficients are indexed by bitmask; mask m stands for
/// the wedge of its generators in increasing index order.
struct Form {
  std::array<cplx, 16> c{};

  cplx &operator[](unsigned m) { return c[m]; }
  const cplx &operator[](unsigned m) const { return c[m]; }

  Form &operator+=(const Form &o) {
    for (unsigned m = 0; m < 16; ++m)
      c[m] += o.c[m];
    return *this;
  }
  Form &operator-=(const Form &o) {
    for (unsigned m = 0; m < 16; ++m)
      c[m] -= o.c[m];
    return *this;
  }
  friend Form operator+(Form a, const Form &b) { return a += b; }
  friend Form operator-(Form a, const Form &b) { return a -= b; }
  friend Form operator*(cplx s, Form a) {
    for (auto &x : a.c)
      x *= s;
    return a;
  }
};

namespace form_detail {

// Sign of e_a ∧ e_b relative to e_{a|b}: (-1)^{#(i in a, j in b, i > j)}.
constexpr int wedge_sign(unsigned a, unsigned b) {
  int inv = 0;
  for (unsigned i = 0; i < 4; ++i)
    if (a & (1u << i))
      for (unsigned j = 0; j < i; ++j)
        if (b & (1u << j))
          ++inv;
  return inv % 2 ? -1 : 1;
}

// Conjugation swaps generators 0<->1 and 2<->3; returns the image mask
// and the sign needed to restore increasing order.
constexpr std::pair<unsigned, int> conj_mask(unsigned m) {
  constexpr unsigned perm[4] = {1, 0, 3, 2};
  unsigned idx[4];
  int n = 0;
  for (unsigned i = 0; i < 4; ++i)
    if (m & (1u << i))
      idx[n++] = perm[i];
  int inv = 0;
  unsigned out = 0;
  for (int a = 0; a < n; ++a) {
    out |= 1u << idx[a];
    for (int b = a + 1; b < n; ++b)
      if (idx[a] > idx[b])
        ++inv;
  }
  return {out, inv % 2 ? -1 : 1};
}

} // namespace form_detail

inline Form wedge(const Form &a, const Form &b) {
  Form r;
  for (unsigned ma = 0; ma < 16; ++ma) {
    if (a.c[ma] == 0.0)
      continue;
    for (unsigned mb = 0; mb < 16; ++mb) {
      if ((ma & mb) || b.c[mb] == 0.0)
        continue;
      r.c[ma | mb] += double(form_detail::wedge_sign(ma, mb)) * a.c[ma] * b.c[mb];
    }
  }
  return r;
}

/// Complex conjugate of a form: conjugate coefficients, dz <-> dz̄.
inline Form conj(const Form &a) {
  Form r;
  for (unsigned m = 0; m < 16; ++m) {
    if (a.c[m] == 0.0)
      continue;
    auto [cm, s] = form_detail::conj_mask(m);
    r.c[cm] = double(s) * std::conj(a.c[m]);
  }
  return r;
}

inline Form one_form(cplx dz1, cplx dz1bar, cplx dz2, cplx dz2bar) {
  Form f;
  f[1] = dz1;
  f[2] = dz1bar;
  f[4] = dz2;
  f[8] = dz2bar;
  return f;
}

/// Quaternion-valued form X + Y j.
struct QuatForm {
  Form x, y;
};

// (X + Y j) ∧ (U + V j) = X∧U - Y∧V̄ + (X∧V + Y∧Ū) j, since j α = ᾱ j.
inline QuatForm wedge(const QuatForm &a, const QuatForm &b) {
  return {wedge(a.x, b.x) - wedge(a.y, conj(b.y)), wedge(a.x, b.y) + wedge(a.y, conj(b.x))};
}

/// Values of dz1, dz̄1, dz2, dz̄2 on a real tangent vector v ∈ ℂ².
inline std::array<cplx, 4> generator_values(const Quat &v) {
  return {v.z1, std::conj(v.z1), v.z2, std::conj(v.z2)};
}

/// Pullback coefficient of the degree-k part of `a` on k tangent vectors:
/// Σ_m a_m det[e_{m_i}(T_j)].
inline cplx evaluate_on(const Form &a, const std::vector<Quat> &tangents) {
  const unsigned k = static_cast<unsigned>(tangents.size());
  std::vector<std::array<cplx, 4>> g;
  for (const auto &t : tangents)
    g.push_back(generator_values(t));
  cplx sum = 0.0;
  for (unsigned m = 0; m < 16; ++m) {
    if (unsigned(std::popcount(m)) != k || a.c[m] == 0.0)
      continue;
    unsigned rows[4];
    unsigned n = 0;
    for (unsigned i = 0; i < 4; ++i)
      if (m & (1u << i))
        rows[n++] = i;
    cplx det;
    if (k == 1) {
      det = g[0][rows[0]];
    } else if (k == 2) {
      det = g[0][rows[0]] * g[1][rows[1]] - g[0][rows[1]] * g[1][rows[0]];
    } else if (k == 3) {
      auto e = [&](unsigned r, unsigned c) { return g[c][rows[r]]; };
      det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
            e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
            e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    } else {
      // 4x4 by cofactor expansion along the first tangent.
      auto e = [&](unsigned r, unsigned c) { return g[c][r]; };
      auto det3 = [&](unsigned skip) {
        unsigned rr[3], t = 0;
        for (unsigned r = 0; r < 4; ++r)
          if (r != skip)
            rr[t++] = r;
        auto x = [&](unsigned r, unsigned c) { return e(rr[r], c + 1); };
        return x(0, 0) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)) -
               x(0, 1) * (x(1, 0) * x(2, 2) - x(1, 2) * x(2, 0)) +
               x(0, 2) * (x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0));
      };
      det = 0.0;
      for (unsigned r = 0; r < 4; ++r)
        det += (r % 2 ? -1.0 : 1.0) * e(r, 0) * det3(r);
    }
    sum += a.c[m] * det;
  }
  return sum;
}

/// Real determinant of four tangent vectors in coordinates (x1, y1, x2, y2).
inline double real_det(const std::array<Quat, 4> &v) {
  double m[4][4];
  for (int c = 0; c < 4; ++c) {
    m[0][c] = v[c].z1.real();
    m[1][c] = v[c].z1.imag();
    m[2][c] = v[c].z2.real();
    m[3][c] = v[c].z2.imag();
  }
  double det = 1.0;
  for (int i = 0; i < 4; ++i) {
    int p = i;
    for (int r = i + 1; r < 4; ++r)
      if (std::abs(m[r][i]) > std::abs(m[p][i]))
        p = r;
    if (m[p][i] == 0.0)
      return 0.0;
    if (p != i) {
      for (int c = 0; c < 4; ++c)
        std::swap(m[i][c], m[p][c]);
      det = -det;
    }
    det *= m[i][i];
    for (int r = i + 1; r < 4; ++r) {
      double f = m[r][i] / m[i][i];
      for (int c = i; c < 4; ++c)
        m[r][c] -= f * m[i][c];
    }
  }
  return det;
}

} // namespace quatfun

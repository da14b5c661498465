#pragma once

// Closed-form moments used only as a test oracle. For W = U U^T with Haar U,
// W / sqrt(det W) = [[x, i y], [i y, conj(x)]] with (Re x, Im x, y) uniform on
// the unit sphere, and det W carries an independent uniform phase.

#include <cmath>
#include <complex>

#include "tetralab/multi_index.hpp"

namespace closed_form {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Integral over [0, 1] of (1 - y^2)^p y^s.
inline double sphere_integral(int p, int s) {
  double total = 0.0;
  for (int k = 0; k <= p; ++k) total += binomial(p, k) * ((k % 2) ? -1.0 : 1.0) / (2.0 * k + s + 1.0);
  return total;
}

inline std::complex<double> moment(const tetralab::MultiIndex& a, const tetralab::MultiIndex& b) {
  if (a.degree() != b.degree()) return 0.0;
  const int p = a.a1 + b.a2;
  if (p != a.a2 + b.a1) return 0.0;
  const int s = a.a3 + b.a3;
  if (s % 2 != 0) return 0.0;
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int e = ((a.a3 - b.a3) % 4 + 4) % 4;
  return ipow[e] * sphere_integral(p, s);
}

}  // namespace closed_form

#pragma once

// Reference computations written without the library's algorithms: subset
// enumeration for symmetric functions, explicit products, hand-chained
// generation forces, and plain random data.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

// e_m over all m-subsets of z, skipping index `skip` (0-based, -1 for none).
inline Cplx subset_sum(const CVec& z, std::size_t m, long skip = -1) {
  const std::size_t n = z.size();
  Cplx total = 0.0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) != m) continue;
    if (skip >= 0 && (mask >> skip) & 1ul) continue;
    Cplx prod = 1.0;
    for (std::size_t k = 0; k < n; ++k)
      if ((mask >> k) & 1ul) prod *= z[k];
    total += prod;
  }
  return total;
}

// y_m = (-1)^m e_m(x)
inline CVec coefficients(const CVec& x) {
  CVec y(x.size());
  for (std::size_t m = 1; m <= x.size(); ++m) y[m - 1] = (m % 2 ? -1.0 : 1.0) * subset_sum(x, m);
  return y;
}

// y_dot_m = d/dt of (-1)^m e_m(x(t)) expanded by the product rule.
inline CVec coefficient_velocity(const CVec& x, const CVec& xd) {
  const std::size_t n = x.size();
  CVec yd(n);
  for (std::size_t m = 1; m <= n; ++m) {
    Cplx s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += xd[k] * subset_sum(x, m - 1, static_cast<long>(k));
    yd[m - 1] = (m % 2 ? -1.0 : 1.0) * s;
  }
  return yd;
}

inline Cplx prefactor(const CVec& x, std::size_t n) {
  Cplx p = 1.0;
  for (std::size_t l = 0; l < x.size(); ++l)
    if (l != n) p *= x[n] - x[l];
  return 1.0 / p;
}

// Goldfish term plus the coefficient-acceleration transfer, written out.
inline CVec zeros_acc(const CVec& x, const CVec& xd, const CVec& ydd) {
  const std::size_t n = x.size();
  CVec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cplx g = 0.0;
    for (std::size_t l = 0; l < n; ++l)
      if (l != k) g += 2.0 * xd[k] * xd[l] / (x[k] - x[l]);
    Cplx s = 0.0;
    for (std::size_t m = 1; m <= n; ++m) s += std::pow(x[k], static_cast<int>(n - m)) * ydd[m - 1];
    out[k] = g - prefactor(x, k) * s;
  }
  return out;
}

inline CVec linear_force(const CVec& w, const CVec& wd, Cplx a, int sign) {
  const Cplx i(0.0, 1.0);
  CVec out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = (i - a) * wd[k] + double(sign) * i * a * w[k];
  return out;
}

// Generation-2 force on a linear seed with every intermediate level spelled out.
inline CVec generation2_linear(const CVec& x, const CVec& xd, Cplx a, int sign) {
  const CVec y = coefficients(x), yd = coefficient_velocity(x, xd);
  const CVec w = coefficients(y), wd = coefficient_velocity(y, yd);
  const CVec wdd = linear_force(w, wd, a, sign);
  const CVec ydd = zeros_acc(y, yd, wdd);
  return zeros_acc(x, xd, ydd);
}

inline CVec random_points(std::mt19937_64& rng, std::size_t n, double radius, double min_gap) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    CVec x(n);
    for (auto& z : x) z = {u(rng), u(rng)};
    double gap = 1e300;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
    if (gap >= min_gap) return x;
  }
}

inline double max_diff(const CVec& a, const CVec& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace oracle

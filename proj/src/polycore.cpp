#include "goldgen/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "goldgen/errors.hpp"
#include "goldgen/permgen.hpp"

namespace goldgen {

namespace {

void require_distinct(std::span<const Cplx> x, double sep_tol, const char* who) {
  const double gap = min_pairwise_gap(x);
  if (gap <= sep_tol * magnitude_scale(x))
    throw DegenerateZeros(std::string(who) + ": entries closer than sep_tol (gap " +
                          std::to_string(gap) + ")");
}

// Powers x^0..x^N.
CVec powers(Cplx x, std::size_t n) {
  CVec p(n + 1);
  p[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
  return p;
}

}  // namespace

CVec elem_sym_all(std::span<const Cplx> z) {
  CVec e(z.size() + 1, Cplx{0.0});
  e[0] = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += z[j] * e[k - 1];
  return e;
}

Cplx elem_sym(std::span<const Cplx> z, std::size_t m) {
  if (m < 1 || m > z.size()) throw DomainError("elem_sym: m out of range");
  return elem_sym_all(z)[m];
}

Cplx elem_sym_excl(std::span<const Cplx> z, std::size_t n, std::size_t m) {
  if (n < 1 || n > z.size() || m < 1 || m > z.size())
    throw DomainError("elem_sym_excl: index out of range");
  CVec rest;
  rest.reserve(z.size() - 1);
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j + 1 != n) rest.push_back(z[j]);
  // e_0 of the remaining entries is the delta_{1m} term.
  return elem_sym_all(rest)[m - 1];
}

CVec vieta(std::span<const Cplx> x) {
  CVec e = elem_sym_all(x);
  CVec y(x.size());
  for (std::size_t m = 1; m <= x.size(); ++m) y[m - 1] = (m % 2 == 0 ? 1.0 : -1.0) * e[m];
  return y;
}

MonicPoly coeffs_from_zeros(std::span<const Cplx> x, double sep_tol) {
  if (x.empty()) throw DomainError("coeffs_from_zeros: empty input");
  require_distinct(x, sep_tol, "coeffs_from_zeros");
  return MonicPoly(vieta(x));
}

MonicPoly coeffs_from_zeros(const ZeroSet& zs) { return MonicPoly(vieta(zs.values())); }

PolyValue eval_poly(const MonicPoly& p, Cplx z) noexcept {
  Cplx v = 1.0;
  Cplx d = 0.0;
  for (Cplx y : p.coeffs()) {
    d = d * z + v;
    v = v * z + y;
  }
  return {v, d};
}

double eval_scale(const MonicPoly& p, Cplx z) noexcept {
  const double r = std::abs(z);
  double s = 1.0;
  for (Cplx y : p.coeffs()) s = s * r + std::abs(y);
  return s;
}

CVec find_roots(const MonicPoly& p, const RootOptions& opts) {
  const auto& y = p.coeffs();
  const std::size_t n = y.size();
  if (n == 1) return {-y[0]};

  double ymax = 0.0;
  for (Cplx c : y) ymax = std::max(ymax, std::abs(c));
  const double radius = 1.0 + ymax;

  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double offset = 0.4 + 0.5 * unit(rng);

  CVec z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius, step * (static_cast<double>(k) + offset));

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [v, d] = eval_poly(p, z[k]);
      if (std::abs(v) <= 4.0 * eps * eval_scale(p, z[k])) continue;
      Cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      Cplx corr;
      if (d == Cplx{0.0}) {
        corr = Cplx{1e-3 * radius, 1e-3 * radius};
      } else {
        const Cplx ratio = v / d;
        const Cplx denom = 1.0 - ratio * repulsion;
        corr = denom == Cplx{0.0} ? ratio : ratio / denom;
      }
      if (!is_finite(corr)) corr = Cplx{1e-3 * radius, 0.0};
      z[k] -= corr;
      if (std::abs(corr) > 4.0 * eps * std::max(1.0, std::abs(z[k]))) all_done = false;
    }
    if (all_done) break;
  }

  // Newton polish; only accept steps that reduce the residual and stay well
  // inside the root's own neighbourhood.
  for (std::size_t k = 0; k < n; ++k) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) nearest = std::min(nearest, std::abs(z[k] - z[j]));
    for (int it = 0; it < 3; ++it) {
      const auto [v, d] = eval_poly(p, z[k]);
      if (d == Cplx{0.0} || v == Cplx{0.0}) break;
      const Cplx cand = z[k] - v / d;
      if (std::abs(cand - z[k]) >= 0.25 * nearest) break;
      if (std::abs(eval_poly(p, cand).value) >= std::abs(v)) break;
      z[k] = cand;
    }
  }

  return lexicographic_order(z, kDefaultSepTol);
}

ZeroSet zeros_from_coeffs(const MonicPoly& p, const RootOptions& opts) {
  if (p.degree() < 2) throw DomainError("zeros_from_coeffs: degree must be at least 2");
  CVec z = find_roots(p, opts);
  if (!all_finite(z)) throw RootSolveFailed("zeros_from_coeffs: iteration diverged");
  require_distinct(z, opts.sep_tol, "zeros_from_coeffs");

  // A multiple root comes back as a cluster split by rounding (about
  // eps^(1/k) for multiplicity k), which can exceed sep_tol. Such a pair is
  // within a small multiple of the roots' own forward-error bound.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> err(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double d = std::abs(eval_poly(p, z[k]).derivative);
    err[k] = d > 0.0 ? eps * eval_scale(p, z[k]) / d : std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) <= 100.0 * std::max(err[i], err[j]))
        throw DegenerateZeros("zeros_from_coeffs: zeros " + std::to_string(i + 1) + " and " +
                              std::to_string(j + 1) + " are not separable in double precision");

  double cnorm = 1.0;
  for (Cplx c : p.coeffs()) cnorm = std::max(cnorm, std::abs(c));
  for (Cplx r : z) {
    const double res = std::abs(eval_poly(p, r).value);
    const double scale = std::max(cnorm, eval_scale(p, r));
    if (res > opts.root_tol * scale)
      throw RootSolveFailed("zeros_from_coeffs: residual " + std::to_string(res) +
                            " above tolerance after " + std::to_string(opts.max_sweeps) + " sweeps");
  }
  return ZeroSet(std::move(z), opts.sep_tol);
}

CVec inverse_prefactors(std::span<const Cplx> x, double sep_tol) {
  require_distinct(x, sep_tol, "inverse_prefactors");
  CVec pre(x.size(), Cplx{1.0});
  for (std::size_t n = 0; n < x.size(); ++n)
    for (std::size_t l = 0; l < x.size(); ++l)
      if (l != n) pre[n] *= 1.0 / (x[n] - x[l]);
  return pre;
}

CMatrix r_matrix(std::span<const Cplx> x, double sep_tol) {
  const std::size_t n = x.size();
  const CVec pre = inverse_prefactors(x, sep_tol);
  CMatrix r(n);
  for (std::size_t row = 0; row < n; ++row) {
    const CVec pw = powers(x[row], n);
    for (std::size_t m = 1; m <= n; ++m) r(row, m - 1) = -pre[row] * pw[n - m];
  }
  return r;
}

CMatrix r_matrix_inverse(std::span<const Cplx> x, double sep_tol) {
  require_distinct(x, sep_tol, "r_matrix_inverse");
  const std::size_t n = x.size();
  CMatrix r(n);
  // Column m needs sigma_{m,.}(x), i.e. symmetric functions with x_m removed.
  for (std::size_t m = 0; m < n; ++m) {
    CVec rest;
    rest.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != m) rest.push_back(x[j]);
    const CVec e = elem_sym_all(rest);
    for (std::size_t row = 1; row <= n; ++row)
      r(row - 1, m) = (row % 2 == 0 ? 1.0 : -1.0) * e[row - 1];
  }
  return r;
}

CVec zeros_velocity(std::span<const Cplx> x, std::span<const Cplx> y_dot, double sep_tol) {
  if (x.size() != y_dot.size()) throw DomainError("zeros_velocity: size mismatch");
  return r_matrix(x, sep_tol).apply(y_dot);
}

CVec coeffs_velocity(std::span<const Cplx> x, std::span<const Cplx> x_dot) {
  const std::size_t n = x.size();
  if (x_dot.size() != n) throw DomainError("coeffs_velocity: size mismatch");
  CVec y_dot(n, Cplx{0.0});
  for (std::size_t j = 0; j < n; ++j) {
    CVec rest;
    rest.reserve(n - 1);
    for (std::size_t l = 0; l < n; ++l)
      if (l != j) rest.push_back(x[l]);
    const CVec e = elem_sym_all(rest);
    for (std::size_t m = 1; m <= n; ++m) y_dot[m - 1] += e[m - 1] * x_dot[j];
  }
  for (std::size_t m = 1; m <= n; m += 2) y_dot[m - 1] = -y_dot[m - 1];
  return y_dot;
}

CVec goldfish_term(std::span<const Cplx> x, std::span<const Cplx> x_dot) {
  const std::size_t n = x.size();
  CVec acc(n, Cplx{0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (l != i) acc[i] += 2.0 * x_dot[i] * x_dot[l] / (x[i] - x[l]);
  return acc;
}

CVec zeros_acceleration(std::span<const Cplx> x, std::span<const Cplx> x_dot,
                        std::span<const Cplx> y_ddot, double sep_tol) {
  const std::size_t n = x.size();
  if (x_dot.size() != n || y_ddot.size() != n)
    throw DomainError("zeros_acceleration: size mismatch");
  const CVec pre = inverse_prefactors(x, sep_tol);
  CVec acc = goldfish_term(x, x_dot);
  for (std::size_t i = 0; i < n; ++i) {
    // Horner for sum_m x_i^(N-m) y_ddot_m
    Cplx s = 0.0;
    for (std::size_t m = 0; m < n; ++m) s = s * x[i] + y_ddot[m];
    acc[i] -= pre[i] * s;
  }
  return acc;
}

IdentityResiduals identity_residuals(const MonicPoly& p, const ZeroSet& zs) {
  if (p.degree() != zs.size()) throw DomainError("identity_residuals: degree mismatch");
  const MonicPoly sym(vieta(zs.values()));
  IdentityResiduals r;
  for (Cplx x : zs.values()) {
    r.coefficient_form = std::max(r.coefficient_form, std::abs(eval_poly(p, x).value));
    r.symmetric_form = std::max(r.symmetric_form, std::abs(eval_poly(sym, x).value));
  }
  return r;
}

}  // namespace goldgen

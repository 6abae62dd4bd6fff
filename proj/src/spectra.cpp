#include "goldgen/spectra.hpp"

#include <cmath>
#include <limits>

#include "goldgen/errors.hpp"
#include "goldgen/permgen.hpp"

namespace goldgen {

std::vector<double> hermite_coefficients(std::size_t n) {
  // H_{k+1} = 2 z H_k - 2 k H_{k-1}; stored lowest power first while building.
  std::vector<double> prev{1.0};
  std::vector<double> cur{0.0, 2.0};
  if (n == 0) return prev;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= 2.0 * static_cast<double>(k) * prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur.rbegin(), cur.rend()};
}

namespace {

// H_n(x) and H_n'(x) = 2 n H_{n-1}(x) by the recurrence.
std::pair<double, double> hermite_eval(std::size_t n, double x) {
  double hm1 = 1.0;
  double h = 2.0 * x;
  for (std::size_t k = 1; k < n; ++k) {
    const double next = 2.0 * x * h - 2.0 * static_cast<double>(k) * hm1;
    hm1 = h;
    h = next;
  }
  return {h, 2.0 * static_cast<double>(n) * hm1};
}

}  // namespace

ZeroSet hermite_zeros(std::size_t n, const RootOptions& opts) {
  if (n < 2 || n > 12) throw DomainError("hermite_zeros: n must be in [2, 12]");
  const auto c = hermite_coefficients(n);
  CVec monic(n);
  for (std::size_t m = 1; m <= n; ++m) monic[m - 1] = c[m] / c[0];
  const CVec rough = find_roots(MonicPoly(monic), opts);

  CVec zeros(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x = rough[k].real();
    for (int it = 0; it < 8; ++it) {
      const auto [v, d] = hermite_eval(n, x);
      if (d == 0.0) break;
      const double step = v / d;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    zeros[k] = x;
  }
  return ZeroSet(std::move(zeros), opts.sep_tol);
}

double equilibrium_residual(std::span<const Cplx> x) {
  double r = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    Cplx s = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l)
      if (l != n) s += 1.0 / (x[n] - x[l]);
    r = std::max(r, std::abs(x[n] - s));
  }
  return r;
}

CMatrix m_matrix(std::span<const Cplx> x, double sep_tol) {
  if (min_pairwise_gap(x) <= sep_tol * magnitude_scale(x))
    throw DegenerateZeros("m_matrix: coincident entries");
  const std::size_t n = x.size();
  CMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) continue;
      const Cplx d = x[r] - x[c];
      m(r, c) = -1.0 / (d * d);
      m(r, r) -= m(r, c);
    }
  return m;
}

CMatrix similarity_m1(std::span<const Cplx> x, std::span<const Cplx> x_mu1, double sep_tol) {
  if (x.size() != x_mu1.size()) throw DomainError("similarity_m1: size mismatch");
  return r_matrix(x_mu1, sep_tol) * m_matrix(x, sep_tol) * r_matrix_inverse(x_mu1, sep_tol);
}

CMatrix jacobian_fd(const VectorField& f, std::span<const Cplx> x, double h) {
  const std::size_t n = x.size();
  CMatrix jac(n);
  CVec probe(x.begin(), x.end());
  for (std::size_t m = 0; m < n; ++m) {
    const double step = h > 0.0 ? h : 1e-6 * (1.0 + std::abs(x[m]));
    probe[m] = x[m] + step;
    const CVec fp = f(probe);
    probe[m] = x[m] - step;
    const CVec fm = f(probe);
    probe[m] = x[m];
    if (fp.size() != n || fm.size() != n) throw DomainError("jacobian_fd: field has wrong dimension");
    for (std::size_t r = 0; r < n; ++r) jac(r, m) = (fp[r] - fm[r]) / (2.0 * step);
  }
  return jac;
}

CVec hermite_flow(std::span<const Cplx> gamma) {
  const std::size_t n = gamma.size();
  CVec out(n);
  for (std::size_t m = 0; m < n; ++m) {
    Cplx s = 0.0;
    for (std::size_t l = 0; l < n; ++l)
      if (l != m) s += 1.0 / (gamma[m] - gamma[l]);
    out[m] = kI * (gamma[m] - s);
  }
  return out;
}

MonicPoly characteristic_polynomial(const CMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("characteristic_polynomial: empty matrix");
  // M_1 = I, c_{n-1} = -tr(A); M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
  CVec y(n);
  CMatrix mk = CMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const CMatrix am = a * mk;
    y[k - 1] = -am.trace() / static_cast<double>(k);
    mk = am + y[k - 1] * CMatrix::identity(n);
  }
  return MonicPoly(std::move(y));
}

namespace {

// A k-fold root of p is a simple root of p^(k-1): Newton on that derivative.
Cplx refine_multiple_root(const MonicPoly& p, Cplx z, std::size_t k) {
  std::vector<Cplx> c{1.0};  // highest power first
  c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
  for (std::size_t d = 1; d < k; ++d) {
    const std::size_t deg = c.size() - 1;
    std::vector<Cplx> dc(deg);
    for (std::size_t i = 0; i < deg; ++i) dc[i] = c[i] * static_cast<double>(deg - i);
    c = std::move(dc);
  }
  for (int it = 0; it < 30; ++it) {
    Cplx q = 0.0, dq = 0.0;
    for (Cplx ci : c) {
      dq = dq * z + q;
      q = q * z + ci;
    }
    if (dq == Cplx(0.0)) break;
    const Cplx step = q / dq;
    z -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

}  // namespace

SpectrumReport eig_small(const CMatrix& a, const RootOptions& opts) {
  if (a.size() > 12) throw DomainError("eig_small: matrix larger than 12x12");
  const MonicPoly p = characteristic_polynomial(a);
  SpectrumReport rep;
  rep.eigenvalues = find_roots(p, opts);
  if (!all_finite(rep.eigenvalues)) throw RootSolveFailed("eig_small: root iteration diverged");

  // A k-fold eigenvalue comes back as k roots spread by ~eps^(1/k); their
  // mean is accurate to working precision. Group roots that are closer than
  // their forward-error bounds allow and replace each group by its mean.
  CVec& ev = rep.eigenvalues;
  const std::size_t n = ev.size();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> err(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = std::abs(eval_poly(p, ev[k]).derivative);
    err[k] = d > 0.0 ? eps * eval_scale(p, ev[k]) / d : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> group(n);
  for (std::size_t k = 0; k < n; ++k) group[k] = k;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(ev[i] - ev[j]) <= 100.0 * std::max(err[i], err[j])) {
        const std::size_t from = group[j], to = group[i];
        for (auto& g : group)
          if (g == from) g = to;
      }
  CVec merged(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cplx sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (group[j] == group[k]) {
        sum += ev[j];
        ++count;
      }
    merged[k] = count == 1 ? ev[k] : refine_multiple_root(p, sum / static_cast<double>(count), count);
  }
  ev = lexicographic_order(std::move(merged));
  for (Cplx lam : rep.eigenvalues)
    rep.max_residual = std::max(rep.max_residual, std::abs(eval_poly(p, lam).value) / eval_scale(p, lam));
  return rep;
}

}  // namespace goldgen

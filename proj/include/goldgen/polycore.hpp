#pragma once

// Polynomial/zero algebra for monic polynomials: elementary symmetric
// functions, the Vieta map and its numerical inverse, the R matrices, and
// the identities transferring velocities/accelerations between the zeros
// and the coefficients of a time-dependent monic polynomial.
//
// Index arguments named `n`/`m` are 1-based, matching the usual notation
// y_1..y_N, x_1..x_N. Vectors themselves are ordinary 0-based containers.

#include <cstdint>
#include <span>
#include <utility>

#include "goldgen/types.hpp"

namespace goldgen {

// sigma_m(z): sum over m-subsets of the product of the selected entries.
Cplx elem_sym(std::span<const Cplx> z, std::size_t m);

// sigma_{n,m}(z) = delta_{1m} + sum over (m-1)-subsets avoiding index n.
Cplx elem_sym_excl(std::span<const Cplx> z, std::size_t n, std::size_t m);

// e_0..e_N of z in one O(N^2) pass (e_0 = 1).
CVec elem_sym_all(std::span<const Cplx> z);

// y_m = (-1)^m sigma_m(x), with no distinctness check.
CVec vieta(std::span<const Cplx> x);

MonicPoly coeffs_from_zeros(std::span<const Cplx> x, double sep_tol = kDefaultSepTol);
MonicPoly coeffs_from_zeros(const ZeroSet& zs);

struct RootOptions {
  double root_tol = kDefaultRootTol;
  double sep_tol = kDefaultSepTol;
  int max_sweeps = 200;
  std::uint64_t rng_seed = 0;  // rotates the initial guesses on the circle
};

// All N roots by Aberth-Ehrlich iteration + Newton polishing. Does not
// require distinct roots; results are in canonical order.
CVec find_roots(const MonicPoly& p, const RootOptions& opts = {});

// Zeros of a generic polynomial: find_roots plus the distinctness check.
ZeroSet zeros_from_coeffs(const MonicPoly& p, const RootOptions& opts = {});

struct PolyValue {
  Cplx value;
  Cplx derivative;
};
PolyValue eval_poly(const MonicPoly& p, Cplx z) noexcept;

// The backward-error yardstick sum_{m=0..N} |y_m| |z|^(N-m), with y_0 = 1.
double eval_scale(const MonicPoly& p, Cplx z) noexcept;

// prod_{l != n} (x_n - x_l)^(-1) for every n, built as a product of
// reciprocals. Throws DegenerateZeros when two entries are within sep_tol.
CVec inverse_prefactors(std::span<const Cplx> x, double sep_tol = kDefaultSepTol);

CMatrix r_matrix(std::span<const Cplx> x, double sep_tol = kDefaultSepTol);
// [R^-1]_{nm} = (-1)^n sigma_{m,n}(x).
CMatrix r_matrix_inverse(std::span<const Cplx> x, double sep_tol = kDefaultSepTol);

// x_dot = R(x) y_dot
CVec zeros_velocity(std::span<const Cplx> x, std::span<const Cplx> y_dot,
                    double sep_tol = kDefaultSepTol);
// y_dot_m = (-1)^m sum_n sigma_{n,m}(x) x_dot_n
CVec coeffs_velocity(std::span<const Cplx> x, std::span<const Cplx> x_dot);

// sum_{l != n} 2 x_dot_n x_dot_l / (x_n - x_l); caller guarantees distinct x.
CVec goldfish_term(std::span<const Cplx> x, std::span<const Cplx> x_dot);

// x_ddot_n = goldfish_term_n - prefactor_n * sum_m x_n^(N-m) y_ddot_m
CVec zeros_acceleration(std::span<const Cplx> x, std::span<const Cplx> x_dot,
                        std::span<const Cplx> y_ddot, double sep_tol = kDefaultSepTol);

struct IdentityResiduals {
  double coefficient_form = 0.0;  // max_n |x_n^N + sum_m y_m x_n^(N-m)|
  double symmetric_form = 0.0;    // same with y_m -> (-1)^m sigma_m(x)
};
IdentityResiduals identity_residuals(const MonicPoly& p, const ZeroSet& zs);

}  // namespace goldgen

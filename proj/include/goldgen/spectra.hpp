#pragma once

// Hermite zeros as an equilibrium configuration, the matrix M built from
// them, its similarity transforms by R, finite-difference Jacobians, and a
// small dense eigenvalue solver.

#include <functional>

#include "goldgen/polycore.hpp"
#include "goldgen/types.hpp"

namespace goldgen {

struct SpectrumReport {
  CVec eigenvalues;  // sorted by real part, then imaginary part
  double max_residual = 0.0;
};

// Coefficients of the physicists' Hermite polynomial H_n, highest power first.
std::vector<double> hermite_coefficients(std::size_t n);

// Zeros of H_n, 2 <= n <= 12, polished with the three-term recurrence.
ZeroSet hermite_zeros(std::size_t n, const RootOptions& opts = {});

// max_n |x_n - sum_{l != n} 1 / (x_n - x_l)|
double equilibrium_residual(std::span<const Cplx> x);

// M_nm = -(x_n - x_m)^-2 (n != m), M_nn = sum_{l != n} (x_n - x_l)^-2
CMatrix m_matrix(std::span<const Cplx> x, double sep_tol = kDefaultSepTol);

// R(x_mu1) M(x) R(x_mu1)^-1
CMatrix similarity_m1(std::span<const Cplx> x, std::span<const Cplx> x_mu1,
                      double sep_tol = kDefaultSepTol);

using VectorField = std::function<CVec(std::span<const Cplx>)>;

// Central differences; h <= 0 selects 1e-6 (1 + |x_m|) per coordinate.
CMatrix jacobian_fd(const VectorField& f, std::span<const Cplx> x, double h = 0.0);

// gamma_m' = i (gamma_m - sum_{l != m} 1 / (gamma_m - gamma_l)); Hermite zeros
// are its equilibria.
CVec hermite_flow(std::span<const Cplx> gamma);

// Characteristic polynomial det(z I - A) by the Faddeev-LeVerrier trace
// recursion, returned in monic form.
MonicPoly characteristic_polynomial(const CMatrix& a);

SpectrumReport eig_small(const CMatrix& a, const RootOptions& opts = {});

}  // namespace goldgen

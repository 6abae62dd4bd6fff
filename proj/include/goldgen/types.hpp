#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace goldgen {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

inline constexpr Cplx kI{0.0, 1.0};
inline constexpr double kDefaultSepTol = 1e-8;
inline constexpr double kDefaultRootTol = 1e-12;

bool is_finite(Cplx z) noexcept;
bool all_finite(std::span<const Cplx> v) noexcept;

// max(1, max_n |v_n|); the unit all relative tolerances are measured in.
double magnitude_scale(std::span<const Cplx> v) noexcept;

// Smallest |v_i - v_j| over i != j (+inf for fewer than two entries).
double min_pairwise_gap(std::span<const Cplx> v) noexcept;

// Degree-N monic polynomial z^N + sum_m y_m z^(N-m). The leading 1 is implicit.
class MonicPoly {
 public:
  explicit MonicPoly(CVec coeffs);

  std::size_t degree() const noexcept { return coeffs_.size(); }
  const CVec& coeffs() const noexcept { return coeffs_; }
  // y_m with the 1-based index used throughout the literature.
  Cplx y(std::size_t m) const { return coeffs_.at(m - 1); }

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

 private:
  CVec coeffs_;
};

// Unordered set of N pairwise-distinct zeros. Stored in canonical
// (lexicographic) order so equal sets compare equal entry by entry.
class ZeroSet {
 public:
  explicit ZeroSet(CVec zeros, double sep_tol = kDefaultSepTol);

  std::size_t size() const noexcept { return zeros_.size(); }
  const CVec& values() const noexcept { return zeros_; }
  double sep_tol() const noexcept { return sep_tol_; }
  const Cplx& operator[](std::size_t i) const { return zeros_[i]; }

 private:
  CVec zeros_;
  double sep_tol_;
};

// Dense row-major complex square matrix, sized for N <= 12.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Cplx& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  CVec apply(std::span<const Cplx> v) const;
  Cplx trace() const noexcept;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Cplx s, const CMatrix& a);

 private:
  std::size_t n_ = 0;
  CVec a_;
};

// max_{r,c} |a_rc - b_rc|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace goldgen

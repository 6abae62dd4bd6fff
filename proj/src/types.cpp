#include "goldgen/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "goldgen/errors.hpp"
#include "goldgen/permgen.hpp"

namespace goldgen {

bool is_finite(Cplx z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool all_finite(std::span<const Cplx> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](Cplx z) { return is_finite(z); });
}

double magnitude_scale(std::span<const Cplx> v) noexcept {
  double s = 1.0;
  for (Cplx z : v) s = std::max(s, std::abs(z));
  return s;
}

double min_pairwise_gap(std::span<const Cplx> v) noexcept {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) gap = std::min(gap, std::abs(v[i] - v[j]));
  return gap;
}

MonicPoly::MonicPoly(CVec coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("MonicPoly: degree must be at least 1");
  if (!all_finite(coeffs_)) throw DomainError("MonicPoly: non-finite coefficient");
}

ZeroSet::ZeroSet(CVec zeros, double sep_tol) : zeros_(std::move(zeros)), sep_tol_(sep_tol) {
  if (zeros_.empty()) throw DomainError("ZeroSet: empty");
  if (!(sep_tol_ > 0.0)) throw DomainError("ZeroSet: sep_tol must be positive");
  if (!all_finite(zeros_)) throw DomainError("ZeroSet: non-finite zero");
  zeros_ = canonical_sort(zeros_, sep_tol_);
  const double gap = min_pairwise_gap(zeros_);
  if (gap <= sep_tol_ * magnitude_scale(zeros_))
    throw DegenerateZeros("ZeroSet: zeros closer than sep_tol (gap " + std::to_string(gap) + ")");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CVec CMatrix::apply(std::span<const Cplx> v) const {
  if (v.size() != n_) throw DomainError("CMatrix::apply: size mismatch");
  CVec out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    Cplx s = 0.0;
    for (std::size_t c = 0; c < n_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

Cplx CMatrix::trace() const noexcept {
  Cplx s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.n_ != b.n_) throw DomainError("CMatrix product: size mismatch");
  const std::size_t n = a.n_;
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Cplx ark = a(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.n_ != b.n_) throw DomainError("CMatrix sum: size mismatch");
  CMatrix out(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
  return out;
}

CMatrix operator*(Cplx s, const CMatrix& a) {
  CMatrix out(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = s * a.a_[i];
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.size() != b.size()) throw DomainError("max_abs_diff: size mismatch");
  double d = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
  return d;
}

}  // namespace goldgen

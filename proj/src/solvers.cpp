#include "goldgen/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "goldgen/errors.hpp"
#include "goldgen/polycore.hpp"
#include "tracking_detail.hpp"

namespace goldgen {

PhaseState solve_linear_seed(std::span<const Cplx> x0, std::span<const Cplx> v0, Cplx a,
                             int ia_sign, double t) {
  if (x0.size() != v0.size()) throw DomainError("solve_linear_seed: size mismatch");
  if (ia_sign != 1 && ia_sign != -1) throw DomainError("solve_linear_seed: ia_sign must be +1 or -1");
  if (t == 0.0) return PhaseState{CVec(x0.begin(), x0.end()), CVec(v0.begin(), v0.end()), 0.0};

  // lambda^2 - (i - a) lambda - ia_sign * i a = 0
  const Cplx damping = kI - a;
  const Cplx disc = std::sqrt(damping * damping + 4.0 * static_cast<double>(ia_sign) * kI * a);
  const Cplx lp = 0.5 * (damping + disc);
  const Cplx lm = 0.5 * (damping - disc);
  const Cplx split = lp - lm;
  if (std::abs(split) <= 1e-10 * std::max(1.0, std::abs(lp) + std::abs(lm)))
    throw DegenerateModes("solve_linear_seed: characteristic roots coincide");

  const Cplx ep = std::exp(lp * t);
  const Cplx em = std::exp(lm * t);
  PhaseState s{CVec(x0.size()), CVec(x0.size()), t};
  for (std::size_t n = 0; n < x0.size(); ++n) {
    const Cplx cp = (v0[n] - lm * x0[n]) / split;
    const Cplx cm = (lp * x0[n] - v0[n]) / split;
    s.x[n] = cp * ep + cm * em;
    s.v[n] = lp * cp * ep + lm * cm * em;
  }
  return s;
}

ZeroSet solve_iso_goldfish_at(std::span<const Cplx> x0, std::span<const Cplx> v0, double omega,
                              double t, const RootOptions& opts) {
  const std::size_t n = x0.size();
  if (v0.size() != n || n < 2) throw DomainError("solve_iso_goldfish_at: need matching sizes, N >= 2");
  if (min_pairwise_gap(x0) <= opts.sep_tol * magnitude_scale(x0))
    throw DegenerateZeros("solve_iso_goldfish_at: initial positions coincide");

  const Cplx h = omega == 0.0 ? Cplx{t} : (std::exp(kI * omega * t) - 1.0) / (kI * omega);
  if (h == Cplx{0.0}) return ZeroSet(CVec(x0.begin(), x0.end()), opts.sep_tol);

  // prod_j (z - x_j) has coefficients vieta(x0); prod_{j != l} (z - x_j) has
  // coefficients (-1)^(m-1) sigma_{l,m}(x0) on z^(N-m).
  CVec coeffs = vieta(x0);
  for (std::size_t l = 0; l < n; ++l) {
    CVec rest;
    rest.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != l) rest.push_back(x0[j]);
    const CVec e = elem_sym_all(rest);
    for (std::size_t m = 1; m <= n; ++m) {
      const double sign = (m % 2 == 1) ? 1.0 : -1.0;
      coeffs[m - 1] -= h * v0[l] * sign * e[m - 1];
    }
  }
  return zeros_from_coeffs(MonicPoly(std::move(coeffs)), opts);
}

namespace {

void check_grid(std::span<const double> grid, double t0) {
  if (grid.empty() || grid.front() != t0)
    throw DomainError("solve_generation_path: grid must start at the initial time");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DomainError("solve_generation_path: grid must increase");
}

// Seed path on an already refined grid.
LabeledPath seed_path_fine(const SeedModel& seed, const PhaseState& s0, std::span<const double> fine,
                           const PathOptions& opts) {
  if (seed.kind == SeedKind::linear_seed) {
    LabeledPath p;
    p.times.assign(fine.begin(), fine.end());
    for (double t : fine) p.values.push_back(solve_linear_seed(s0.x, s0.v, seed.a, seed.ia_sign, t - s0.t).x);
    return p;
  }
  const double omega = seed.kind == SeedKind::iso_goldfish ? seed.omega : 0.0;
  std::vector<CVec> frames;
  frames.reserve(fine.size());
  for (double t : fine) frames.push_back(solve_iso_goldfish_at(s0.x, s0.v, omega, t - s0.t, opts.roots).values());
  return detail::track_refined(fine, frames, s0.x, opts.tracking);
}

}  // namespace

LabeledPath solve_seed_path(const SeedModel& seed, const PhaseState& seed_state0,
                            std::span<const double> grid, const PathOptions& opts) {
  return solve_generation_path(seed, seed_state0, MuAddress(seed_state0.x.size(), {}), grid, opts);
}

LabeledPath solve_generation_path(const SeedModel& seed, const PhaseState& seed_state0,
                                  const MuAddress& mu, std::span<const double> grid,
                                  const PathOptions& opts) {
  const std::size_t n = seed_state0.x.size();
  if (n < 2 || seed_state0.v.size() != n) throw DomainError("solve_generation_path: malformed seed state");
  if (mu.depth() > 0 && mu.n != n) throw DomainError("solve_generation_path: mu degree mismatch");
  check_grid(grid, seed_state0.t);

  const std::vector<double> fine = detail::with_midpoints(grid);
  LabeledPath path = seed_path_fine(seed, seed_state0, fine, opts);

  for (std::size_t level = 1; level <= mu.depth(); ++level) {
    // Coefficient m of this level follows label src[m] of the previous one.
    canonical_sort(path.values.front(), opts.roots.sep_tol);
    const auto order = lexicographic_indices(path.values.front(), opts.roots.sep_tol);
    const Permutation perm = mu_to_perm(mu.indices[level - 1], n);
    std::vector<std::size_t> src(n);
    for (std::size_t m = 0; m < n; ++m) src[m] = order[perm[m]];

    std::vector<CVec> frames;
    frames.reserve(fine.size());
    for (const CVec& prev : path.values) {
      CVec y(n);
      for (std::size_t m = 0; m < n; ++m) y[m] = prev[src[m]];
      try {
        frames.push_back(zeros_from_coeffs(MonicPoly(std::move(y)), opts.roots).values());
      } catch (const DegenerateZeros& e) {
        throw DegenerateZeros("solve_generation_path level " + std::to_string(level) + " at t=" +
                              std::to_string(fine[frames.size()]) + ": " + e.what());
      }
    }
    path = detail::track_refined(fine, frames, std::nullopt, opts.tracking);
  }
  return detail::decimate(path);
}

PeriodReport detect_period(const LabeledPath& path, double period, unsigned p_max,
                           double period_tol) {
  if (!(period > 0.0) || p_max == 0) throw DomainError("detect_period: need T > 0 and p_max >= 1");
  if (path.size() < 2) throw DomainError("detect_period: path too short");
  const auto& ts = path.times;
  const double t0 = ts.front();
  const double t_end = ts.back();
  const double match_tol = 1e-9 * std::max(1.0, period);

  double scale = 1.0;
  for (const auto& v : path.values) scale = std::max(scale, magnitude_scale(v));

  double best = std::numeric_limits<double>::infinity();
  for (unsigned p = 1; p <= p_max; ++p) {
    const double shift = p * period;
    double residual = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < ts.size() && ts[i] <= t0 + period + match_tol; ++i) {
      const double target = ts[i] + shift;
      if (target > t_end + match_tol) break;
      const auto it = std::lower_bound(ts.begin(), ts.end(), target - match_tol);
      if (it == ts.end() || std::abs(*it - target) > match_tol) continue;
      const auto& a = path.values[i];
      const auto& b = path.values[static_cast<std::size_t>(it - ts.begin())];
      for (std::size_t k = 0; k < a.size(); ++k) residual = std::max(residual, std::abs(b[k] - a[k]));
      ++pairs;
    }
    if (pairs == 0) continue;
    best = std::min(best, residual);
    if (residual < period_tol * scale) return PeriodReport{period, p, residual};
  }
  throw NoPeriodFound("detect_period: no multiplier p <= " + std::to_string(p_max) +
                      " closes the path (best residual " + std::to_string(best) + ")");
}

}  // namespace goldgen

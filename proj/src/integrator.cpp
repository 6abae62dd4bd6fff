#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "goldgen/dynamics.hpp"
#include "goldgen/errors.hpp"

namespace goldgen {

namespace {

// Dormand-Prince 5(4) tableau and the continuous extension of dopri5.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// Phase-space vector: first N entries positions, next N velocities.
struct System {
  const ModelSpec& spec;
  std::size_t n;
  double sep_tol;
  std::size_t* evals;

  CVec operator()(const CVec& y) const {
    ++*evals;
    std::span<const Cplx> x(y.data(), n), v(y.data() + n, n);
    CVec acc = rhs(spec, x, v, sep_tol);
    CVec dy(2 * n);
    std::copy(v.begin(), v.end(), dy.begin());
    std::copy(acc.begin(), acc.end(), dy.begin() + static_cast<std::ptrdiff_t>(n));
    return dy;
  }
};

CVec combine(const CVec& y, double h, std::initializer_list<std::pair<double, const CVec*>> terms) {
  CVec out = y;
  for (const auto& [w, k] : terms) {
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * w * (*k)[i];
  }
  return out;
}

// RMS over all real components, each scaled by abs + rel * max(|a|, |b|).
double scaled_norm(const CVec& e, const CVec& a, const CVec& b, double rel, double abs) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double sr = abs + rel * std::max(std::abs(a[i].real()), std::abs(b[i].real()));
    const double si = abs + rel * std::max(std::abs(a[i].imag()), std::abs(b[i].imag()));
    s += std::pow(e[i].real() / sr, 2) + std::pow(e[i].imag() / si, 2);
  }
  return std::sqrt(s / static_cast<double>(2 * e.size()));
}

std::span<const Cplx> positions(const CVec& y, std::size_t n) { return {y.data(), n}; }

// Shortest time for any pair to close its gap at current relative velocity.
double closing_time(const CVec& y, std::size_t n) {
  double tau = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dv = std::abs(y[n + i] - y[n + j]);
      if (dv > 0.0) tau = std::min(tau, std::abs(y[i] - y[j]) / dv);
    }
  return tau;
}

PhaseState unpack(const CVec& y, std::size_t n, double t) {
  return PhaseState{CVec(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n)),
                    CVec(y.begin() + static_cast<std::ptrdiff_t>(n), y.end()), t};
}

double initial_step(const System& f, const CVec& y0, const CVec& f0, double span,
                    const IntegratorOptions& opts) {
  const double d0 = scaled_norm(y0, y0, y0, opts.rel_tol, opts.abs_tol);
  const double d1 = scaled_norm(f0, y0, y0, opts.rel_tol, opts.abs_tol);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const CVec y1 = combine(y0, h0, {{1.0, &f0}});
  const CVec f1 = f(y1);
  CVec df(f0.size());
  for (std::size_t i = 0; i < df.size(); ++i) df[i] = f1[i] - f0[i];
  const double d2 = scaled_norm(df, y0, y0, opts.rel_tol, opts.abs_tol) / h0;
  const double dm = std::max(d1, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 > t0)) throw DomainError("uniform_grid: need t1 > t0 and dt > 0");
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
  std::vector<double> g;
  if (std::abs(static_cast<double>(steps) * dt - (t1 - t0)) <= 1e-9 * (t1 - t0)) {
    for (std::size_t k = 0; k <= steps; ++k)
      g.push_back(k == steps ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps));
  } else {
    for (double t = t0; t < t1; t += dt) g.push_back(t);
    g.push_back(t1);
  }
  return g;
}

Trajectory integrate(const ModelSpec& spec, const PhaseState& s0, std::span<const double> grid,
                     const IntegratorOptions& opts) {
  const std::size_t n = s0.x.size();
  if (n == 0 || s0.v.size() != n) throw DomainError("integrate: malformed initial state");
  if (grid.empty() || grid.front() != s0.t)
    throw DomainError("integrate: grid must start at the initial time");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw DomainError("integrate: grid must be strictly increasing");
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) || !(opts.sep_tol > 0.0))
    throw DomainError("integrate: tolerances must be positive");

  Trajectory traj;
  traj.model = spec;
  traj.times.assign(grid.begin(), grid.end());
  traj.states.reserve(grid.size());
  traj.states.push_back(s0);
  traj.stats.min_gap = min_pairwise_gap(s0.x);

  System f{spec, n, opts.sep_tol, &traj.stats.rhs_evals};
  CVec y(2 * n);
  std::copy(s0.x.begin(), s0.x.end(), y.begin());
  std::copy(s0.v.begin(), s0.v.end(), y.begin() + static_cast<std::ptrdiff_t>(n));

  CVec k1 = f(y);
  double t = grid.front();
  const double t_end = grid.back();
  if (grid.size() == 1) return traj;

  double h = opts.initial_step > 0.0 ? opts.initial_step : initial_step(f, y, k1, t_end - t, opts);
  double err_old = 1e-4;
  bool last_reject_collision = false;
  // Uncoupled linear-seed particles may pass through each other harmlessly.
  const bool guard = !(spec.depth == 0 && spec.seed.kind == SeedKind::linear_seed);
  std::size_t next_out = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  while (next_out < grid.size()) {
    if (traj.stats.steps + traj.stats.rejected >= opts.max_steps)
      throw StepSizeUnderflow("integrate: step limit reached at t=" + std::to_string(t));
    const double h_min = 10.0 * eps * std::max(1.0, std::abs(t));
    if (h < h_min) {
      if (last_reject_collision || (guard && closing_time(y, n) < 1e-6 * std::max(1.0, std::abs(t))))
        throw CollisionError("integrate: particles collide near t=" + std::to_string(t), 0, t);
      throw StepSizeUnderflow("integrate: step size underflow at t=" + std::to_string(t));
    }
    h = std::min(h, t_end - t);

    CVec k2, k3, k4, k5, k6, k7, y_new;
    bool collided = false;
    try {
      k2 = f(combine(y, h, {{a21, &k1}}));
      k3 = f(combine(y, h, {{a31, &k1}, {a32, &k2}}));
      k4 = f(combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      k5 = f(combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      k6 = f(combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      y_new = combine(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
      const auto xs = positions(y_new, n);
      if (guard && min_pairwise_gap(xs) < 10.0 * opts.sep_tol * magnitude_scale(xs)) {
        collided = true;
      } else {
        k7 = f(y_new);
      }
    } catch (const CollisionError&) {
      collided = true;
    }

    if (collided) {
      ++traj.stats.rejected;
      last_reject_collision = true;
      h *= 0.5;
      continue;
    }

    CVec e(y.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double err = scaled_norm(e, y, y_new, opts.rel_tol, opts.abs_tol);

    if (!std::isfinite(err) || !all_finite(y_new)) {
      ++traj.stats.rejected;
      last_reject_collision = false;
      h *= 0.5;
      continue;
    }

    constexpr double beta = 0.04, expo = 0.2 - 0.75 * beta, safe = 0.9;
    const double fac11 = std::pow(err, expo);
    if (err > 1.0) {
      ++traj.stats.rejected;
      last_reject_collision = false;
      h /= std::min(5.0, fac11 / safe);
      continue;
    }

    // Accepted: emit dense output for every grid time inside (t, t + h].
    const double t_new = t + h;
    while (next_out < grid.size() && grid[next_out] <= t_new + 1e-14 * std::max(1.0, std::abs(t_new))) {
      const double theta = (grid[next_out] - t) / h;
      CVec yo(y.size());
      if (grid[next_out] >= t_new) {
        yo = y_new;
      } else {
        const double th1 = 1.0 - theta;
        for (std::size_t i = 0; i < y.size(); ++i) {
          const Cplx ydiff = y_new[i] - y[i];
          const Cplx bspl = h * k1[i] - ydiff;
          const Cplx r4 = ydiff - h * k7[i] - bspl;
          const Cplx r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
          yo[i] = y[i] + theta * (ydiff + th1 * (bspl + theta * (r4 + th1 * r5)));
        }
      }
      traj.states.push_back(unpack(yo, n, grid[next_out]));
      ++next_out;
    }

    ++traj.stats.steps;
    last_reject_collision = false;
    t = t_new;
    y = std::move(y_new);
    k1 = std::move(k7);
    traj.stats.min_gap = std::min(traj.stats.min_gap, min_pairwise_gap(positions(y, n)));

    double fac = fac11 / std::pow(err_old, beta);
    fac = std::clamp(fac / safe, 0.1, 5.0);
    err_old = std::max(err, 1e-4);
    h /= fac;
  }
  return traj;
}

std::vector<Trajectory> integrate_many(const ModelSpec& spec, std::span<const PhaseState> starts,
                                       std::span<const double> grid, const IntegratorOptions& opts) {
  std::vector<Trajectory> out(starts.size());
  std::vector<std::exception_ptr> errors(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(starts.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = integrate(spec, starts[k], grid, opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Trajectory> integrate_many_serial(const ModelSpec& spec,
                                              std::span<const PhaseState> starts,
                                              std::span<const double> grid,
                                              const IntegratorOptions& opts) {
  std::vector<Trajectory> out;
  out.reserve(starts.size());
  for (const auto& s : starts) out.push_back(integrate(spec, s, grid, opts));
  return out;
}

}  // namespace goldgen

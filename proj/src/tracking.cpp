#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "goldgen/errors.hpp"
#include "goldgen/polycore.hpp"
#include "goldgen/solvers.hpp"
#include "tracking_detail.hpp"

namespace goldgen {

std::vector<std::size_t> optimal_assignment(const std::vector<std::vector<double>>& cost,
                                            double* total) {
  // Hungarian algorithm with potentials, O(n^3).
  const std::size_t n = cost.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assign(n);
  for (std::size_t j = 1; j <= n; ++j) assign[p[j] - 1] = j - 1;
  if (total) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cost[i][assign[i]];
    *total = s;
  }
  return assign;
}

double set_distance(std::span<const Cplx> a, std::span<const Cplx> b) {
  if (a.size() != b.size()) throw DomainError("set_distance: size mismatch");
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = std::norm(a[i] - b[j]);
  const auto assign = optimal_assignment(cost);
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[assign[i]]));
  return d;
}

namespace detail {

// Reorders `next` so entry n continues label n of `prev`.
CVec match_step(const CVec& prev, const CVec& next, double t_prev, double t_next,
                const TrackOptions& opts) {
  const std::size_t n = prev.size();
  if (next.size() != n) throw DomainError("track_zeros: frame sizes differ");
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::norm(prev[i] - next[j]);

  double best = 0.0;
  const auto assign = optimal_assignment(cost, &best);

  const auto where = [&] {
    return " between t=" + std::to_string(t_prev) + " and t=" + std::to_string(t_next) +
           "; refine the output grid (smaller dt_out)";
  };

  const double gap = std::min(min_pairwise_gap(prev), min_pairwise_gap(next));
  for (std::size_t i = 0; i < n; ++i)
    if (!(std::abs(prev[i] - next[assign[i]]) < 0.5 * gap))
      throw TrackingAmbiguity("track_zeros: displacement exceeds half the inter-particle gap" + where());

  // Second-best matching: best assignment avoiding at least one chosen edge.
  double second = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    auto banned = cost;
    banned[i][assign[i]] = 1e200;
    double alt = 0.0;
    optimal_assignment(banned, &alt);
    second = std::min(second, alt);
  }
  if (second - best <= opts.ambiguity_tol * second)
    throw TrackingAmbiguity("track_zeros: best and second-best matchings are indistinguishable" + where());

  CVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = next[assign[i]];
  return out;
}

LabeledPath track_frames(std::span<const double> times, const std::vector<CVec>& frames,
                         std::optional<CVec> first, const TrackOptions& opts) {
  if (times.size() != frames.size() || frames.empty())
    throw DomainError("track_zeros: need one frame per time");
  LabeledPath path;
  path.times.assign(times.begin(), times.end());
  path.values.reserve(frames.size());
  path.values.push_back(first ? *first : frames.front());
  for (std::size_t k = 1; k < frames.size(); ++k)
    path.values.push_back(match_step(path.values.back(), frames[k], times[k - 1], times[k], opts));
  return path;
}

std::vector<double> with_midpoints(std::span<const double> grid) {
  std::vector<double> fine;
  fine.reserve(2 * grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0) fine.push_back(0.5 * (grid[k - 1] + grid[k]));
    fine.push_back(grid[k]);
  }
  return fine;
}

// Tracks on the refined grid, then checks that each coarse step matches
// directly the way it matched through its midpoint. Returns the refined path.
LabeledPath track_refined(std::span<const double> fine, const std::vector<CVec>& frames,
                          std::optional<CVec> first, const TrackOptions& opts) {
  LabeledPath path = track_frames(fine, frames, std::move(first), opts);
  for (std::size_t k = 2; k < fine.size(); k += 2) {
    const CVec direct = match_step(path.values[k - 2], frames[k], fine[k - 2], fine[k], opts);
    for (std::size_t i = 0; i < direct.size(); ++i)
      if (direct[i] != path.values[k][i])
        throw TrackingAmbiguity("track_zeros: labels change between t=" + std::to_string(fine[k - 2]) +
                                " and t=" + std::to_string(fine[k]) +
                                " depending on sampling; refine the output grid (smaller dt_out)");
  }
  return path;
}

LabeledPath decimate(const LabeledPath& fine) {
  LabeledPath out;
  for (std::size_t k = 0; k < fine.size(); k += 2) {
    out.times.push_back(fine.times[k]);
    out.values.push_back(fine.values[k]);
  }
  return out;
}

}  // namespace detail

using detail::decimate;
using detail::track_frames;
using detail::track_refined;
using detail::with_midpoints;

LabeledPath track_zeros(std::span<const double> times, std::span<const MonicPoly> polys,
                        const TrackOptions& opts, const RootOptions& roots, std::optional<CVec> first) {
  std::vector<CVec> frames;
  frames.reserve(polys.size());
  for (const auto& p : polys) frames.push_back(zeros_from_coeffs(p, roots).values());
  return track_frames(times, frames, std::move(first), opts);
}

LabeledPath track_zeros(const std::function<MonicPoly(double)>& poly_at,
                        std::span<const double> grid, const TrackOptions& opts,
                        const RootOptions& roots, std::optional<CVec> first) {
  const std::vector<double> fine = with_midpoints(grid);
  std::vector<CVec> frames;
  frames.reserve(fine.size());
  for (double t : fine) frames.push_back(zeros_from_coeffs(poly_at(t), roots).values());
  return decimate(track_refined(fine, frames, std::move(first), opts));
}

}  // namespace goldgen

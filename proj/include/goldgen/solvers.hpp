#pragma once

// Algebraic solution paths: closed-form seed solutions, the generation-k
// solution by repeated root extraction, continuity tracking of zero labels,
// and detection of the period multiplier of a labelled path.

#include <functional>
#include <optional>
#include <vector>

#include "goldgen/dynamics.hpp"
#include "goldgen/permgen.hpp"
#include "goldgen/types.hpp"

namespace goldgen {

// Positions with labels carried consistently from sample to sample.
struct LabeledPath {
  std::vector<double> times;
  std::vector<CVec> values;

  std::size_t size() const noexcept { return times.size(); }
};

struct PeriodReport {
  double base_period = 0.0;
  unsigned multiplier = 0;
  double residual = 0.0;
};

// Exact two-mode solution of x'' = (i - a) x' + ia_sign * i a x at time t
// (initial data given at t = 0).
PhaseState solve_linear_seed(std::span<const Cplx> x0, std::span<const Cplx> v0, Cplx a,
                             int ia_sign, double t);

// Positions of the isochronous goldfish (omega = 0: plain goldfish) at time
// t, as the zeros of
//   prod_j (z - x_j(0)) - h(t) sum_l x'_l(0) prod_{j != l} (z - x_j(0)),
// h(t) = (exp(i omega t) - 1) / (i omega), or h = t when omega = 0.
ZeroSet solve_iso_goldfish_at(std::span<const Cplx> x0, std::span<const Cplx> v0, double omega,
                              double t, const RootOptions& opts = {});

struct TrackOptions {
  // Relative gap between best and second-best matching below which the
  // assignment is considered ambiguous.
  double ambiguity_tol = 1e-6;
};

// Frame-to-frame labelling by minimal total squared displacement. Labels
// start from `first` if given, else from the canonical order of frame 0.
LabeledPath track_zeros(std::span<const double> times, std::span<const MonicPoly> polys,
                        const TrackOptions& opts = {}, const RootOptions& roots = {},
                        std::optional<CVec> first = std::nullopt);

// As above but samples the polynomial path itself and also checks each grid
// interval against its midpoint, so a grid that skips over an exchange of
// zeros is reported instead of silently mislabelled.
LabeledPath track_zeros(const std::function<MonicPoly(double)>& poly_at,
                        std::span<const double> grid, const TrackOptions& opts = {},
                        const RootOptions& roots = {}, std::optional<CVec> first = std::nullopt);

struct PathOptions {
  RootOptions roots;
  TrackOptions tracking;
};

// Labelled zero path of generation mu.depth() for a seed whose solution is
// known in closed form (linear_seed, iso_goldfish, goldfish). Grid starts at
// seed_state0.t. Level-j coefficients are the level-(j-1) labelled paths
// arranged by the mu_j permutation fixed at the initial time.
LabeledPath solve_generation_path(const SeedModel& seed, const PhaseState& seed_state0,
                                  const MuAddress& mu, std::span<const double> grid,
                                  const PathOptions& opts = {});

// Closed-form seed path on the grid (labels follow the initial ordering).
LabeledPath solve_seed_path(const SeedModel& seed, const PhaseState& seed_state0,
                            std::span<const double> grid, const PathOptions& opts = {});

// Smallest p <= p_max with |x(t + pT) - x(t)| < period_tol * scale for every
// grid time t in the first period that has a partner sample.
PeriodReport detect_period(const LabeledPath& path, double period, unsigned p_max,
                           double period_tol = 1e-6);

// Minimal-cost assignment for a square cost matrix (row -> column).
std::vector<std::size_t> optimal_assignment(const std::vector<std::vector<double>>& cost,
                                            double* total = nullptr);

// max_n |a_n - b_{pi(n)}| minimised over permutations pi (set distance).
double set_distance(std::span<const Cplx> a, std::span<const Cplx> b);

}  // namespace goldgen

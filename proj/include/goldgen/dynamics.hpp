#pragma once

// Goldfish-type N-body dynamics: seed models, the generation-k hierarchy
// built on top of them, and an adaptive Dormand-Prince integrator with a
// collision guard.

#include <string>
#include <vector>

#include "goldgen/permgen.hpp"
#include "goldgen/types.hpp"

namespace goldgen {

struct PhaseState {
  CVec x;  // positions
  CVec v;  // velocities
  double t = 0.0;
};

enum class SeedKind { goldfish, iso_goldfish, linear_seed };

std::string to_string(SeedKind kind);
SeedKind seed_kind_from_string(const std::string& name);

struct SeedModel {
  SeedKind kind = SeedKind::goldfish;
  double omega = 0.0;  // iso_goldfish
  Cplx a = 0.0;        // linear_seed
  int ia_sign = +1;    // linear_seed: sign of the i*a*x force term
};

// depth 0 is the seed model itself; depth k >= 1 is generation k built on it.
// `mu` only labels which branch of initial data a run uses: the equations of
// motion do not depend on it.
struct ModelSpec {
  SeedModel seed;
  std::size_t depth = 0;
  MuAddress mu;
};

CVec rhs_goldfish(std::span<const Cplx> x, std::span<const Cplx> v,
                  double sep_tol = kDefaultSepTol);
CVec rhs_iso_goldfish(std::span<const Cplx> x, std::span<const Cplx> v, double omega,
                      double sep_tol = kDefaultSepTol);
CVec rhs_linear_seed(std::span<const Cplx> x, std::span<const Cplx> v, Cplx a, int ia_sign);
CVec rhs_seed(const SeedModel& seed, std::span<const Cplx> x, std::span<const Cplx> v,
              double sep_tol = kDefaultSepTol);

// Generation-`depth` acceleration. Coefficients and their velocities are
// recovered from (x, v) by the Vieta map, their accelerations come from the
// depth-1 model, and are pushed back onto the zeros.
CVec rhs_generation(const SeedModel& seed, std::size_t depth, std::span<const Cplx> x,
                    std::span<const Cplx> v, double sep_tol = kDefaultSepTol);

CVec rhs(const ModelSpec& spec, std::span<const Cplx> x, std::span<const Cplx> v,
         double sep_tol = kDefaultSepTol);

// First-generation linear-seed force after eliminating the coefficients:
// goldfish + (i - a) v_n + ia_sign * i a prefactor_n x_n^N.
CVec rhs_linear_generation1_simplified(std::span<const Cplx> x, std::span<const Cplx> v,
                                       Cplx a, int ia_sign, double sep_tol = kDefaultSepTol);

// Initial data for generation k = mu.depth() from seed data. Each level takes
// the canonical order of the previous positions, applies the mu_j permutation
// to positions and velocities, and maps them onto the new zeros (canonical
// order) with x_dot = R(x) y_dot.
PhaseState build_initial_state(const PhaseState& seed_state, const MuAddress& mu,
                               const RootOptions& opts = {});

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double sep_tol = kDefaultSepTol;
  double initial_step = 0.0;  // 0 -> automatic
  std::size_t max_steps = 5'000'000;
};

struct IntegratorStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  double min_gap = 0.0;
};

struct Trajectory {
  ModelSpec model;
  std::vector<double> times;
  std::vector<PhaseState> states;
  IntegratorStats stats;
};

// Integrates from s0 (at s0.t == grid.front()) and reports the state at every
// grid time by dense output. Grid must be strictly increasing.
Trajectory integrate(const ModelSpec& spec, const PhaseState& s0, std::span<const double> grid,
                     const IntegratorOptions& opts = {});

std::vector<double> uniform_grid(double t0, double t1, double dt);

// Independent runs, parallel over initial states.
std::vector<Trajectory> integrate_many(const ModelSpec& spec, std::span<const PhaseState> starts,
                                       std::span<const double> grid,
                                       const IntegratorOptions& opts = {});
// Single-threaded reference for integrate_many.
std::vector<Trajectory> integrate_many_serial(const ModelSpec& spec,
                                              std::span<const PhaseState> starts,
                                              std::span<const double> grid,
                                              const IntegratorOptions& opts = {});

}  // namespace goldgen

#include "goldgen/dynamics.hpp"

#include <cmath>

#include "goldgen/errors.hpp"
#include "goldgen/polycore.hpp"

namespace goldgen {

std::string to_string(SeedKind kind) {
  switch (kind) {
    case SeedKind::goldfish: return "goldfish";
    case SeedKind::iso_goldfish: return "iso_goldfish";
    case SeedKind::linear_seed: return "linear_seed";
  }
  return "unknown";
}

SeedKind seed_kind_from_string(const std::string& name) {
  if (name == "goldfish") return SeedKind::goldfish;
  if (name == "iso_goldfish") return SeedKind::iso_goldfish;
  if (name == "linear_seed") return SeedKind::linear_seed;
  throw ConfigError("unknown seed kind '" + name + "'");
}

namespace {

void check_separation(std::span<const Cplx> x, double sep_tol, std::size_t level) {
  const double gap = min_pairwise_gap(x);
  if (gap <= sep_tol * magnitude_scale(x))
    throw CollisionError("collision at generation level " + std::to_string(level) + " (gap " +
                             std::to_string(gap) + ")",
                         static_cast<int>(level));
}

void check_sizes(std::span<const Cplx> x, std::span<const Cplx> v) {
  if (x.size() != v.size() || x.empty()) throw DomainError("rhs: positions/velocities size mismatch");
}

}  // namespace

CVec rhs_goldfish(std::span<const Cplx> x, std::span<const Cplx> v, double sep_tol) {
  check_sizes(x, v);
  check_separation(x, sep_tol, 0);
  return goldfish_term(x, v);
}

CVec rhs_iso_goldfish(std::span<const Cplx> x, std::span<const Cplx> v, double omega,
                      double sep_tol) {
  CVec acc = rhs_goldfish(x, v, sep_tol);
  for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += kI * omega * v[n];
  return acc;
}

CVec rhs_linear_seed(std::span<const Cplx> x, std::span<const Cplx> v, Cplx a, int ia_sign) {
  check_sizes(x, v);
  const Cplx damping = kI - a;
  const Cplx spring = static_cast<double>(ia_sign) * kI * a;
  CVec acc(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) acc[n] = damping * v[n] + spring * x[n];
  return acc;
}

CVec rhs_seed(const SeedModel& seed, std::span<const Cplx> x, std::span<const Cplx> v,
              double sep_tol) {
  switch (seed.kind) {
    case SeedKind::goldfish: return rhs_goldfish(x, v, sep_tol);
    case SeedKind::iso_goldfish: return rhs_iso_goldfish(x, v, seed.omega, sep_tol);
    case SeedKind::linear_seed: return rhs_linear_seed(x, v, seed.a, seed.ia_sign);
  }
  throw DomainError("rhs_seed: unknown seed kind");
}

CVec rhs_generation(const SeedModel& seed, std::size_t depth, std::span<const Cplx> x,
                    std::span<const Cplx> v, double sep_tol) {
  if (depth == 0) return rhs_seed(seed, x, v, sep_tol);
  check_sizes(x, v);
  check_separation(x, sep_tol, depth);
  const CVec y = vieta(x);
  const CVec y_dot = coeffs_velocity(x, v);
  const CVec y_ddot = rhs_generation(seed, depth - 1, y, y_dot, sep_tol);
  return zeros_acceleration(x, v, y_ddot, sep_tol);
}

CVec rhs(const ModelSpec& spec, std::span<const Cplx> x, std::span<const Cplx> v, double sep_tol) {
  return rhs_generation(spec.seed, spec.depth, x, v, sep_tol);
}

CVec rhs_linear_generation1_simplified(std::span<const Cplx> x, std::span<const Cplx> v, Cplx a,
                                       int ia_sign, double sep_tol) {
  check_sizes(x, v);
  check_separation(x, sep_tol, 1);
  const CVec pre = inverse_prefactors(x, sep_tol);
  CVec acc = goldfish_term(x, v);
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k)
    acc[k] += (kI - a) * v[k] +
              static_cast<double>(ia_sign) * kI * a * pre[k] * std::pow(x[k], static_cast<int>(n));
  return acc;
}

PhaseState build_initial_state(const PhaseState& seed_state, const MuAddress& mu,
                               const RootOptions& opts) {
  const std::size_t n = seed_state.x.size();
  if (seed_state.v.size() != n) throw DomainError("build_initial_state: size mismatch");
  if (mu.depth() > 0 && mu.n != n) throw DomainError("build_initial_state: mu degree mismatch");

  PhaseState s = seed_state;
  for (std::size_t level = 1; level <= mu.depth(); ++level) {
    try {
      canonical_sort(s.x, opts.sep_tol);  // throws on coincident positions
      const auto order = lexicographic_indices(s.x, opts.sep_tol);
      const Permutation perm = mu_to_perm(mu.indices[level - 1], n);
      CVec y(n), y_dot(n);
      for (std::size_t m = 0; m < n; ++m) {
        y[m] = s.x[order[perm[m]]];
        y_dot[m] = s.v[order[perm[m]]];
      }
      ZeroSet zs = zeros_from_coeffs(MonicPoly(y), opts);
      s.x = zs.values();
      s.v = zeros_velocity(s.x, y_dot, opts.sep_tol);
    } catch (const DegenerateZeros& e) {
      throw DegenerateZeros("build_initial_state level " + std::to_string(level) + ": " + e.what());
    } catch (const RootSolveFailed& e) {
      throw RootSolveFailed("build_initial_state level " + std::to_string(level) + ": " + e.what());
    }
  }
  return s;
}

}  // namespace goldgen

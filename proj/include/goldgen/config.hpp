#pragma once

// Run configuration: JSON file (optionally patched by command-line flags),
// checked against the shipped schema, then against cross-field rules.

#include <filesystem>
#include <optional>
#include <string>

#include "goldgen/dynamics.hpp"
#include "goldgen/io.hpp"
#include "goldgen/solvers.hpp"

namespace goldgen {

struct Tolerances {
  double ode_rel = 1e-9;
  double ode_abs = 1e-12;
  double root_tol = kDefaultRootTol;
  double sep_tol = kDefaultSepTol;
  double period_tol = 1e-6;
};

struct RunConfig {
  std::size_t n = 0;  // 0 until known from a field
  SeedModel seed;
  std::optional<CVec> seed_coeffs;
  std::optional<std::size_t> depth;
  std::vector<std::uint64_t> mu;
  CVec positions;
  CVec velocities;
  double t0 = 0.0;
  double t1 = 6.283185307179586;
  double dt_out = 0.01;
  Tolerances tol;
  std::size_t node_budget = 1'000'000;
  std::uint64_t rng_seed = 0;
  std::optional<std::string> period_input;
  double base_period = 6.283185307179586;
  unsigned p_max = 0;  // 0 -> N!
  std::optional<std::string> output;

  RootOptions root_options() const;
  IntegratorOptions integrator_options() const;
  PathOptions path_options() const;
  std::optional<MuAddress> mu_address() const;  // empty when mu is empty
  PhaseState seed_state() const;                // positions/velocities at t0
};

// Throws ConfigError listing every schema violation, or the first
// cross-field inconsistency.
RunConfig parse_run_config(const Json& j);
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_config_json(const std::filesystem::path& file);

}  // namespace goldgen

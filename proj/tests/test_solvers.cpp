#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "goldgen/dynamics.hpp"
#include "goldgen/errors.hpp"
#include "goldgen/polycore.hpp"
#include "goldgen/solvers.hpp"
#include "oracles.hpp"

using namespace goldgen;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

const CVec kX0{Cplx(0.3, 0.1), Cplx(-0.5, 0.2), Cplx(0.1, -0.6)};
const CVec kV0{Cplx(0.2, 0.0), Cplx(0.0, -0.3), Cplx(-0.1, 0.1)};
}  // namespace

TEST_CASE("linear seed closed form") {
  const PhaseState s = solve_linear_seed(kX0, kV0, 0.5, 1, 0.0);
  CHECK(s.x == kX0);
  CHECK(s.v == kV0);

  const PhaseState p = solve_linear_seed(kX0, kV0, 0.0, 1, kTwoPi);
  CHECK(oracle::max_diff(p.x, kX0) < 1e-13);
  // a = 0: x(t) = x0 + i v0 (1 - e^{it})
  const double t = 1.1;
  const PhaseState q = solve_linear_seed(kX0, kV0, 0.0, 1, t);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(q.x[k] - (kX0[k] + kI * kV0[k] * (1.0 - std::exp(kI * t)))) < 1e-14);

  for (int sign : {-1, 1}) {
    const Cplx a(0.4, -0.2);
    double prev = 0.0;
    for (double h : {0.02, 0.01}) {
      double err = 0.0;
      for (double tt : {0.5, 1.7, 3.0}) {
        const auto m = solve_linear_seed(kX0, kV0, a, sign, tt - h).x;
        const auto c = solve_linear_seed(kX0, kV0, a, sign, tt);
        const auto pp = solve_linear_seed(kX0, kV0, a, sign, tt + h).x;
        const CVec acc = rhs_linear_seed(c.x, c.v, a, sign);
        for (std::size_t k = 0; k < 3; ++k)
          err = std::max(err, std::abs((pp[k] - 2.0 * c.x[k] + m[k]) / (h * h) - acc[k]));
      }
      if (prev > 0.0) CHECK(std::log2(prev / err) > 1.9);
      prev = err;
    }
  }
  // coincident modes: lambda^2 - (i - a) lambda - i a = (lambda - i)(lambda + a)
  CHECK_THROWS_AS(solve_linear_seed(kX0, kV0, Cplx(0.0, -1.0), 1, 1.0), DegenerateModes);
}

TEST_CASE("isochronous goldfish closed form") {
  const ZeroSet near0 = solve_iso_goldfish_at(kX0, kV0, 1.0, 1e-9);
  CHECK(set_distance(near0.values(), kX0) < 1e-8);
  CHECK(solve_iso_goldfish_at(kX0, kV0, 1.0, 0.0).values() == ZeroSet(kX0).values());
  CHECK(set_distance(solve_iso_goldfish_at(kX0, kV0, 1.0, kTwoPi).values(), kX0) < 1e-9);
  CHECK(set_distance(solve_iso_goldfish_at(kX0, kV0, 2.0, kPi).values(), kX0) < 1e-9);

  IntegratorOptions o;
  o.rel_tol = 1e-11;
  o.abs_tol = 1e-13;
  for (double omega : {0.0, 1.0}) {
    const ModelSpec spec{{SeedKind::iso_goldfish, omega}, 0, {}};
    const auto grid = uniform_grid(0.0, 2.5, 0.5);
    const auto tr = integrate(spec, {kX0, kV0, 0.0}, grid, o);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(set_distance(tr.states[i].x, solve_iso_goldfish_at(kX0, kV0, omega, grid[i]).values()) < 1e-8);
  }
}

TEST_CASE("assignment and set distance") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost)
      for (auto& c : row) c = u(rng);
    double total = 0.0;
    const auto match = optimal_assignment(cost, &total);
    std::vector<std::size_t> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = k;
    double best = 1e300;
    do {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += cost[k][p[k]];
      best = std::min(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(total == doctest::Approx(best).epsilon(1e-12));
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += cost[k][match[k]];
    CHECK(s == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK(set_distance(CVec{1.0, 2.0}, CVec{2.0, 1.0}) == 0.0);
  CHECK(set_distance(CVec{1.0, 2.0}, CVec{2.0, 1.5}) == doctest::Approx(0.5));
}

TEST_CASE("label tracking") {
  const auto grid = uniform_grid(0.0, kPi, kPi / 200.0);
  auto rotating = [](double t) {
    const Cplx e = std::exp(kI * t);
    return coeffs_from_zeros(CVec{e, -e});
  };

  SUBCASE("constant path keeps labels") {
    std::vector<MonicPoly> polys(grid.size(), MonicPoly({0.0, -1.0}));
    const auto path = track_zeros(grid, polys);
    for (const auto& v : path.values) CHECK(v == path.values.front());
  }

  SUBCASE("rotating pair ends negated") {
    const auto path = track_zeros(rotating, grid);
    REQUIRE(path.size() == grid.size());
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(path.values.back()[k] + path.values.front()[k]) < 1e-12);

    std::vector<MonicPoly> polys;
    for (double t : grid) polys.push_back(rotating(t));
    const auto plain = track_zeros(grid, polys);
    CHECK(oracle::max_diff(plain.values.back(), path.values.back()) < 1e-12);
  }

  SUBCASE("two samples cannot resolve the exchange") {
    CHECK_THROWS_AS(track_zeros(rotating, std::vector<double>{0.0, kPi}), TrackingAmbiguity);
  }

  SUBCASE("initial labels can be supplied") {
    const auto path = track_zeros(rotating, grid, {}, {}, CVec{1.0, -1.0});
    CHECK(std::abs(path.values.front()[0] - 1.0) < 1e-15);
    CHECK(std::abs(path.values.back()[0] + 1.0) < 1e-12);
  }
}

TEST_CASE("period detection") {
  const auto grid = uniform_grid(0.0, 3.0 * kTwoPi, kTwoPi / 100.0);

  SUBCASE("constant path") {
    LabeledPath p{grid, std::vector<CVec>(grid.size(), CVec{1.0, 2.0})};
    const auto rep = detect_period(p, kTwoPi, 6);
    CHECK(rep.multiplier == 1);
    CHECK(rep.residual == 0.0);
  }

  SUBCASE("coefficients of the isochronous goldfish") {
    LabeledPath p;
    for (double t : grid) {
      p.times.push_back(t);
      p.values.push_back(vieta(solve_iso_goldfish_at(kX0, kV0, 1.0, t).values()));
    }
    CHECK(detect_period(p, kTwoPi, 1).multiplier == 1);
  }

  SUBCASE("swapping pair has multiplier 2") {
    LabeledPath p;
    for (double t : grid) {
      p.times.push_back(t);
      p.values.push_back(CVec{std::exp(0.5 * kI * t), -std::exp(0.5 * kI * t)});
    }
    CHECK(detect_period(p, kTwoPi, 6).multiplier == 2);
    CHECK_THROWS_AS(detect_period(p, kTwoPi, 1), NoPeriodFound);
  }

  SUBCASE("drift never closes") {
    LabeledPath p;
    for (double t : grid) {
      p.times.push_back(t);
      p.values.push_back(CVec{t, -t});
    }
    CHECK_THROWS_AS(detect_period(p, kTwoPi, 2), NoPeriodFound);
  }
}

TEST_CASE("generation paths") {
  const SeedModel seed{SeedKind::linear_seed, 0.0, 0.5, 1};
  const PhaseState s0{{Cplx(0.8, 0.1), Cplx(-0.9, 0.5), Cplx(0.2, -1.1)}, kV0, 0.0};
  const auto grid = uniform_grid(0.0, kTwoPi, kTwoPi / 1000.0);

  SUBCASE("depth 0 is the closed form") {
    const auto path = solve_generation_path(seed, s0, MuAddress(3, {}), grid);
    for (std::size_t i = 0; i < grid.size(); i += 50)
      CHECK(oracle::max_diff(path.values[i], solve_linear_seed(s0.x, s0.v, 0.5, 1, grid[i]).x) < 1e-13);
  }

  SUBCASE("depth 1 follows the integrated generation model") {
    IntegratorOptions o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-13;
    for (std::uint64_t mu : {1u, 4u}) {
      const MuAddress addr(3, {mu});
      const auto path = solve_generation_path(seed, s0, addr, grid);
      const auto tr = integrate(ModelSpec{seed, 1, addr}, build_initial_state(s0, addr), grid, o);
      double err = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) err = std::max(err, oracle::max_diff(path.values[i], tr.states[i].x));
      CHECK(err < 1e-6);
    }
  }

  SUBCASE("a=0: generation-1 branches close within 3! periods") {
    const SeedModel iso{SeedKind::linear_seed, 0.0, 0.0, 1};
    const auto long_grid = uniform_grid(0.0, 7.0 * kTwoPi, kTwoPi / 300.0);
    for (std::uint64_t mu = 1; mu <= 6; ++mu) {
      const auto path = solve_generation_path(iso, s0, MuAddress(3, {mu}), long_grid);
      CHECK(detect_period(path, kTwoPi, 6).multiplier <= 6);
    }
  }

  SUBCASE("seed path for the goldfish family") {
    const SeedModel gold{SeedKind::iso_goldfish, 1.0};
    const auto path = solve_seed_path(gold, {kX0, kV0, 0.0}, grid);
    CHECK(path.values.front() == kX0);
    // labels may come back permuted; the set returns
    CHECK(set_distance(path.values.back(), kX0) < 1e-9);
  }
}

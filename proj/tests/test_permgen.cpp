#include <doctest.h>

#include <algorithm>
#include <set>

#include "goldgen/errors.hpp"
#include "goldgen/permgen.hpp"
#include "goldgen/polycore.hpp"
#include "oracles.hpp"

using namespace goldgen;

TEST_CASE("canonical order") {
  CHECK(canonical_sort(CVec{1.0, -1.0}) == CVec{-1.0, 1.0});
  CHECK(canonical_sort(CVec{Cplx(0, 1), Cplx(0, -1)}) == CVec{Cplx(0, -1), Cplx(0, 1)});
  CHECK_THROWS_AS(canonical_sort(CVec{1.0, 1.0}), DegenerateZeros);
  // real parts equal up to rounding still order by imaginary part
  const CVec pair{Cplx(0.5 + 1e-17, 2.0), Cplx(0.5, -2.0)};
  CHECK(canonical_sort(pair).front().imag() < 0.0);
  CHECK(lexicographic_indices(CVec{3.0, 1.0, 2.0}) == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("permutation ranks") {
  CHECK(mu_to_perm(1, 3) == Permutation{0, 1, 2});
  CHECK(mu_to_perm(2, 3) == Permutation{0, 2, 1});
  CHECK(mu_to_perm(6, 3) == Permutation{2, 1, 0});
  CHECK(perm_to_mu({0, 1, 2}) == 1);
  CHECK(perm_to_mu({0, 2, 1}) == 2);
  CHECK(perm_to_mu({2, 1, 0}) == 6);
  CHECK_THROWS_AS(mu_to_perm(0, 3), DomainError);
  CHECK_THROWS_AS(mu_to_perm(7, 3), DomainError);
  CHECK_THROWS_AS(perm_to_mu({0, 0, 1}), DomainError);
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == 2432902008176640000ull);
  CHECK_THROWS_AS(factorial(21), DomainError);

  for (std::size_t n = 1; n <= 7; ++n) {
    Permutation p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = k;
    std::uint64_t rank = 0;
    do {
      ++rank;
      REQUIRE(mu_to_perm(rank, n) == p);
      REQUIRE(perm_to_mu(p) == rank);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(rank == factorial(n));
  }
  CHECK(apply_permutation({2, 0, 1}, CVec{10.0, 20.0, 30.0}) == CVec{30.0, 10.0, 20.0});
}

TEST_CASE("branch addresses") {
  const MuAddress a(3, {2, 6});
  CHECK(a.depth() == 2);
  CHECK(a.to_string() == "(2,6)");
  CHECK(a.child(1).indices == std::vector<std::uint64_t>{2, 6, 1});
  CHECK(a.child(1).has_prefix(a));
  CHECK(!a.has_prefix(a.child(1)));
  CHECK(MuAddress(3, {}).to_string() == "()");
  CHECK_THROWS_AS(MuAddress(3, {7}), DomainError);
  CHECK_THROWS_AS(MuAddress(3, {0}), DomainError);
  CHECK_THROWS_AS(a.child(9), DomainError);
  CHECK(MuAddress(3, {1, 2}) < MuAddress(3, {2, 1}));
}

TEST_CASE("one generation step") {
  const GenerationNode seed = make_seed_node(MonicPoly({0.0, -1.0}));
  CHECK(seed.zeros.values() == CVec{-1.0, 1.0});

  const auto c1 = generation_step(seed, 1);
  CHECK(c1.poly.coeffs() == CVec{-1.0, 1.0});
  CHECK(c1.address == MuAddress(2, {1}));
  const auto c2 = generation_step(seed, 2);
  CHECK(c2.poly.coeffs() == CVec{1.0, -1.0});

  // zeros of z^2 - z + 1
  const double s3 = std::sqrt(3.0) / 2.0;
  CHECK(oracle::max_diff(c1.zeros.values(), CVec{Cplx(0.5, -s3), Cplx(0.5, s3)}) < 1e-14);

  // the two children as a set are the first quadratic family with b=0, c=-1
  const auto fam = appendix_a_family(0.0, -1.0);
  const std::set<std::vector<double>> got = {{c1.poly.y(1).real(), c1.poly.y(2).real()},
                                             {c2.poly.y(1).real(), c2.poly.y(2).real()}};
  std::set<std::vector<double>> want;
  for (const auto& p : fam.generation1) {
    CHECK(std::abs(p.y(1).imag()) < 1e-15);
    want.insert({p.y(1).real(), p.y(2).real()});
  }
  CHECK(got == want);
  CHECK_THROWS_AS(generation_step(seed, 3), DomainError);
}

TEST_CASE("children cover every ordering of the parent zeros") {
  std::mt19937_64 rng(6);
  for (std::size_t n = 2; n <= 4; ++n) {
    const ZeroSet zs(oracle::random_points(rng, n, 1.0, 0.2));
    const GenerationNode root = make_seed_node(coeffs_from_zeros(zs));
    std::vector<CVec> kids;
    for (std::uint64_t mu = 1; mu <= factorial(n); ++mu) kids.push_back(generation_step(root, mu).poly.coeffs());
    // every child is a rearrangement, and no two children coincide
    for (const auto& k : kids) {
      CVec a = k, b = root.zeros.values();
      auto lex = [](Cplx p, Cplx q) { return std::pair(p.real(), p.imag()) < std::pair(q.real(), q.imag()); };
      std::sort(a.begin(), a.end(), lex);
      std::sort(b.begin(), b.end(), lex);
      CHECK(a == b);
    }
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j) CHECK(kids[i] != kids[j]);
  }
}

TEST_CASE("generation tree") {
  const MonicPoly seed({0.0, -1.0});
  const auto t3 = generation_tree(seed, 3);
  CHECK(t3.nodes.size() == 14);
  CHECK(t3.level_size(1) == 2);
  CHECK(t3.level_size(2) == 4);
  CHECK(t3.level_size(3) == 8);
  CHECK(t3.failures.empty());

  const auto t0 = generation_tree(seed, 0);
  CHECK(t0.nodes.empty());
  CHECK(t0.seed.poly == seed);

  SUBCASE("budget") {
    CHECK(planned_node_count(3, 2, std::nullopt) == 6 + 36);
    TreeOptions o;
    o.node_budget = 13;
    CHECK_THROWS_AS(generation_tree(seed, 3, o), TreeBudgetExceeded);
    CHECK_THROWS_AS(generation_tree_serial(seed, 3, o), TreeBudgetExceeded);
    o.node_budget = 14;
    CHECK_NOTHROW(generation_tree(seed, 3, o));
  }

  SUBCASE("prefix filter") {
    TreeOptions o;
    o.filter = MuAddress(2, {2});
    const auto t = generation_tree(seed, 3, o);
    CHECK(t.nodes.size() == 1 + 2 + 4);
    for (const auto& [addr, node] : t.nodes) CHECK(addr.indices.front() == 2);
  }

  SUBCASE("level sets match the quadratic closed forms") {
    const Cplx b(0.35, -0.2), c(-0.4, 0.55);
    const auto fam = appendix_a_family(b, c);
    const auto t = generation_tree(MonicPoly({b, c}), 3);
    const std::vector<MonicPoly>* want[] = {&fam.generation1, &fam.generation2, &fam.generation3};
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto level = t.level(k);
      REQUIRE(level.size() == want[k - 1]->size());
      for (const auto* node : level) {
        double best = 1e300;
        for (const auto& p : *want[k - 1]) best = std::min(best, oracle::max_diff(node->poly.coeffs(), p.coeffs()));
        CHECK(best < 1e-9);
      }
    }
  }
}

TEST_CASE("parallel and serial tree expansion agree exactly") {
  const MonicPoly seed({Cplx(0.3, 0.2), Cplx(-0.5, 0.1), Cplx(0.2, -0.6)});
  const auto par = generation_tree(seed, 2);
  const auto ser = generation_tree_serial(seed, 2);
  REQUIRE(par.nodes.size() == ser.nodes.size());
  for (const auto& [addr, node] : par.nodes) {
    const auto it = ser.nodes.find(addr);
    REQUIRE(it != ser.nodes.end());
    CHECK(node.poly == it->second.poly);
    CHECK(node.zeros.values() == it->second.zeros.values());
  }
  CHECK(par.failures.size() == ser.failures.size());
}

TEST_CASE("degenerate children are recorded, not fatal") {
  // zeros (1, 2): branch 2 gives z^2 + 2z + 1, a double root
  const MonicPoly seed({-3.0, 2.0});
  CHECK_THROWS_AS(generation_step(make_seed_node(seed), 2), DegenerateZeros);
  for (const auto& t : {generation_tree(seed, 2), generation_tree_serial(seed, 2)}) {
    CHECK(t.failures.size() == 1);
    CHECK(t.failures.begin()->first == MuAddress(2, {2}));
    CHECK(t.nodes.size() == 1 + 2);
  }
}

TEST_CASE("quadratic closed forms") {
  const auto fam = appendix_a_family(0.0, -1.0);
  CHECK(fam.generation1.size() == 2);
  CHECK(fam.generation2.size() == 4);
  CHECK(fam.generation3.size() == 8);
  // b=0, c=-1 gives {z^2 + z - 1, z^2 - z + 1}
  std::set<std::pair<double, double>> g1;
  for (const auto& p : fam.generation1) g1.insert({p.y(1).real(), p.y(2).real()});
  CHECK(g1 == std::set<std::pair<double, double>>{{-1.0, 1.0}, {1.0, -1.0}});
  // a vanishing radicand is reported
  CHECK_THROWS_AS(appendix_a_family(2.0, 1.0), DegenerateZeros);
}

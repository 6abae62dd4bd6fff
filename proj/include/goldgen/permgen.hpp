#pragma once

// Generation trees of monic polynomials: the coefficients of a child are the
// zeros of its parent, arranged by one of the N! permutations. Permutations
// are addressed by an index mu in [1, N!] in lexicographic order, starting
// from the canonical (lexicographic) ordering of the parent's zeros.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goldgen/polycore.hpp"
#include "goldgen/types.hpp"

namespace goldgen {

// 0-based permutation: position m takes element perm[m].
using Permutation = std::vector<std::size_t>;

// Sort by real part, then imaginary part. Real parts within sep_tol*scale
// count as equal so rounding noise cannot flip the order of a conjugate pair.
// Never throws.
CVec lexicographic_order(CVec values, double sep_tol = kDefaultSepTol);

// Index sequence realising lexicographic_order (out[k] = values[idx[k]]).
std::vector<std::size_t> lexicographic_indices(std::span<const Cplx> values,
                                               double sep_tol = kDefaultSepTol);

// lexicographic_order, but two entries tied in both components is an error.
CVec canonical_sort(std::span<const Cplx> values, double sep_tol = kDefaultSepTol);
CVec canonical_sort(const ZeroSet& zs);

std::uint64_t factorial(std::size_t n);

Permutation mu_to_perm(std::uint64_t mu, std::size_t n);
std::uint64_t perm_to_mu(const Permutation& perm);

// out[m] = values[perm[m]]
CVec apply_permutation(const Permutation& perm, std::span<const Cplx> values);

struct MuAddress {
  std::size_t n = 0;
  std::vector<std::uint64_t> indices;

  MuAddress() = default;
  MuAddress(std::size_t degree, std::vector<std::uint64_t> mu);

  std::size_t depth() const noexcept { return indices.size(); }
  MuAddress child(std::uint64_t mu) const;
  bool has_prefix(const MuAddress& prefix) const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const MuAddress&, const MuAddress&) = default;
  friend bool operator==(const MuAddress&, const MuAddress&) = default;
};

struct GenerationNode {
  MuAddress address;
  MonicPoly poly;
  ZeroSet zeros;
};

GenerationNode make_seed_node(const MonicPoly& seed, const RootOptions& opts = {});

GenerationNode generation_step(const GenerationNode& parent, std::uint64_t mu,
                               const RootOptions& opts = {});

struct TreeOptions {
  std::optional<MuAddress> filter;  // restrict levels covered by the prefix
  std::size_t node_budget = 1'000'000;
  RootOptions roots;
};

struct GenerationTree {
  GenerationNode seed;
  std::size_t depth = 0;
  std::map<MuAddress, GenerationNode> nodes;   // excludes the seed
  std::map<MuAddress, std::string> failures;   // children that could not be built

  std::size_t level_size(std::size_t k) const;
  std::vector<const GenerationNode*> level(std::size_t k) const;
};

// Upper bound on the number of non-seed nodes a tree expansion will create.
std::size_t planned_node_count(std::size_t n, std::size_t depth,
                               const std::optional<MuAddress>& filter);

// Level-by-level expansion; siblings are built in parallel when OpenMP is on.
GenerationTree generation_tree(const MonicPoly& seed, std::size_t depth,
                               const TreeOptions& opts = {});

// Depth-first single-threaded reference. Produces the same tree.
GenerationTree generation_tree_serial(const MonicPoly& seed, std::size_t depth,
                                      const TreeOptions& opts = {});

// Closed-form generations 1..3 for the quadratic seed z^2 + b z + c.
struct QuadraticFamily {
  std::vector<MonicPoly> generation1;  // 2 members
  std::vector<MonicPoly> generation2;  // 4 members
  std::vector<MonicPoly> generation3;  // 8 members
};
QuadraticFamily appendix_a_family(Cplx b, Cplx c, double radicand_tol = 1e-12);

}  // namespace goldgen

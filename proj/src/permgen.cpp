#include "goldgen/permgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "goldgen/errors.hpp"

namespace goldgen {

std::vector<std::size_t> lexicographic_indices(std::span<const Cplx> values, double sep_tol) {
  const double tol = sep_tol * magnitude_scale(values);
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a].real() < values[b].real();
  });
  // Runs of (chained) equal real parts are ordered by imaginary part.
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    while (end < idx.size() && values[idx[end]].real() - values[idx[end - 1]].real() <= tol) ++end;
    std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(start),
                     idx.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return values[a].imag() < values[b].imag(); });
    start = end;
  }
  return idx;
}

CVec lexicographic_order(CVec values, double sep_tol) {
  const auto idx = lexicographic_indices(values, sep_tol);
  CVec out(values.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = values[idx[k]];
  return out;
}

CVec canonical_sort(std::span<const Cplx> values, double sep_tol) {
  CVec out = lexicographic_order(CVec(values.begin(), values.end()), sep_tol);
  const double tol = sep_tol * magnitude_scale(out);
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (std::abs(out[k].real() - out[k - 1].real()) <= tol &&
        std::abs(out[k].imag() - out[k - 1].imag()) <= tol)
      throw DegenerateZeros("canonical_sort: two entries coincide within sep_tol");
  }
  return out;
}

CVec canonical_sort(const ZeroSet& zs) { return zs.values(); }

std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw DomainError("factorial: n > 20 overflows 64 bits");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

Permutation mu_to_perm(std::uint64_t mu, std::size_t n) {
  if (n == 0) throw DomainError("mu_to_perm: n must be positive");
  const std::uint64_t total = factorial(n);
  if (mu < 1 || mu > total)
    throw DomainError("mu_to_perm: mu=" + std::to_string(mu) + " outside [1, " +
                      std::to_string(total) + "]");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::uint64_t rank = mu - 1;
  Permutation perm;
  perm.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::uint64_t block = factorial(n - 1 - pos);
    const auto digit = static_cast<std::size_t>(rank / block);
    rank %= block;
    perm.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return perm;
}

std::uint64_t perm_to_mu(const Permutation& perm) {
  const std::size_t n = perm.size();
  if (n == 0) throw DomainError("perm_to_mu: empty permutation");
  std::vector<bool> seen(n, false);
  for (std::size_t v : perm) {
    if (v >= n || seen[v]) throw DomainError("perm_to_mu: not a permutation");
    seen[v] = true;
  }
  std::uint64_t rank = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::size_t smaller_later = 0;
    for (std::size_t j = pos + 1; j < n; ++j)
      if (perm[j] < perm[pos]) ++smaller_later;
    rank += smaller_later * factorial(n - 1 - pos);
  }
  return rank + 1;
}

CVec apply_permutation(const Permutation& perm, std::span<const Cplx> values) {
  if (perm.size() != values.size()) throw DomainError("apply_permutation: size mismatch");
  CVec out(values.size());
  for (std::size_t m = 0; m < perm.size(); ++m) out[m] = values[perm[m]];
  return out;
}

MuAddress::MuAddress(std::size_t degree, std::vector<std::uint64_t> mu)
    : n(degree), indices(std::move(mu)) {
  const std::uint64_t total = factorial(n);
  for (auto m : indices)
    if (m < 1 || m > total)
      throw DomainError("MuAddress: index " + std::to_string(m) + " outside [1, " +
                        std::to_string(total) + "]");
}

MuAddress MuAddress::child(std::uint64_t mu) const {
  auto next = indices;
  next.push_back(mu);
  return MuAddress(n, std::move(next));
}

bool MuAddress::has_prefix(const MuAddress& prefix) const noexcept {
  if (prefix.indices.size() > indices.size()) return false;
  return std::equal(prefix.indices.begin(), prefix.indices.end(), indices.begin());
}

std::string MuAddress::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < indices.size(); ++k) os << (k ? "," : "") << indices[k];
  os << ')';
  return os.str();
}

GenerationNode make_seed_node(const MonicPoly& seed, const RootOptions& opts) {
  return GenerationNode{MuAddress(seed.degree(), {}), seed, zeros_from_coeffs(seed, opts)};
}

GenerationNode generation_step(const GenerationNode& parent, std::uint64_t mu,
                               const RootOptions& opts) {
  const std::size_t n = parent.poly.degree();
  const Permutation perm = mu_to_perm(mu, n);
  MonicPoly child(apply_permutation(perm, canonical_sort(parent.zeros)));
  ZeroSet zeros = zeros_from_coeffs(child, opts);
  return GenerationNode{parent.address.child(mu), std::move(child), std::move(zeros)};
}

std::size_t GenerationTree::level_size(std::size_t k) const {
  if (k == 0) return 1;
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [k](const auto& kv) { return kv.first.depth() == k; }));
}

std::vector<const GenerationNode*> GenerationTree::level(std::size_t k) const {
  std::vector<const GenerationNode*> out;
  if (k == 0) {
    out.push_back(&seed);
    return out;
  }
  for (const auto& [addr, node] : nodes)
    if (addr.depth() == k) out.push_back(&node);
  return out;
}

namespace {

// mu values allowed at `level` (1-based) under the filter.
std::vector<std::uint64_t> allowed_mus(std::size_t n, std::size_t level,
                                       const std::optional<MuAddress>& filter) {
  if (filter && level <= filter->depth()) return {filter->indices[level - 1]};
  std::vector<std::uint64_t> all(factorial(n));
  std::iota(all.begin(), all.end(), std::uint64_t{1});
  return all;
}

void validate_tree_request(const MonicPoly& seed, std::size_t depth, const TreeOptions& opts) {
  if (opts.filter && opts.filter->n != seed.degree())
    throw DomainError("generation_tree: filter degree does not match the seed");
  const std::size_t planned = planned_node_count(seed.degree(), depth, opts.filter);
  if (planned > opts.node_budget)
    throw TreeBudgetExceeded("generation_tree: " + std::to_string(planned) +
                             " nodes requested, budget is " + std::to_string(opts.node_budget));
}

void expand_serial(GenerationTree& tree, const GenerationNode& parent, std::size_t depth,
                   const TreeOptions& opts) {
  const std::size_t level = parent.address.depth() + 1;
  if (level > depth) return;
  for (std::uint64_t mu : allowed_mus(parent.poly.degree(), level, opts.filter)) {
    try {
      GenerationNode child = generation_step(parent, mu, opts.roots);
      auto [it, inserted] = tree.nodes.emplace(child.address, std::move(child));
      expand_serial(tree, it->second, depth, opts);
    } catch (const NumericalError& e) {
      tree.failures.emplace(parent.address.child(mu), e.what());
    }
  }
}

}  // namespace

std::size_t planned_node_count(std::size_t n, std::size_t depth,
                               const std::optional<MuAddress>& filter) {
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
  const std::uint64_t fan = factorial(n);
  std::size_t width = 1;
  std::size_t total = 0;
  for (std::size_t level = 1; level <= depth; ++level) {
    const std::size_t f = (filter && level <= filter->depth()) ? 1 : static_cast<std::size_t>(fan);
    width = (width > cap / f) ? cap : width * f;
    total = (total > cap - width) ? cap : total + width;
  }
  return total;
}

GenerationTree generation_tree(const MonicPoly& seed, std::size_t depth, const TreeOptions& opts) {
  validate_tree_request(seed, depth, opts);
  GenerationTree tree{make_seed_node(seed, opts.roots), depth, {}, {}};

  std::vector<const GenerationNode*> frontier{&tree.seed};
  for (std::size_t level = 1; level <= depth && !frontier.empty(); ++level) {
    const auto mus = allowed_mus(seed.degree(), level, opts.filter);
    const std::size_t tasks = frontier.size() * mus.size();
    std::vector<std::optional<GenerationNode>> built(tasks);
    std::vector<std::string> errors(tasks);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks); ++t) {
      const auto& parent = *frontier[static_cast<std::size_t>(t) / mus.size()];
      const std::uint64_t mu = mus[static_cast<std::size_t>(t) % mus.size()];
      try {
        built[static_cast<std::size_t>(t)] = generation_step(parent, mu, opts.roots);
      } catch (const NumericalError& e) {
        errors[static_cast<std::size_t>(t)] = e.what();
      }
    }

    std::vector<const GenerationNode*> next;
    next.reserve(tasks);
    for (std::size_t t = 0; t < tasks; ++t) {
      if (built[t]) {
        auto [it, inserted] = tree.nodes.emplace(built[t]->address, std::move(*built[t]));
        next.push_back(&it->second);
      } else {
        const auto& parent = *frontier[t / mus.size()];
        tree.failures.emplace(parent.address.child(mus[t % mus.size()]), errors[t]);
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

GenerationTree generation_tree_serial(const MonicPoly& seed, std::size_t depth,
                                      const TreeOptions& opts) {
  validate_tree_request(seed, depth, opts);
  GenerationTree tree{make_seed_node(seed, opts.roots), depth, {}, {}};
  expand_serial(tree, tree.seed, depth, opts);
  return tree;
}

namespace {

// Principal root; -0 imaginary parts are normalised so the negative real
// axis maps to the positive imaginary axis.
Cplx principal_sqrt(Cplx z) { return std::sqrt(Cplx{z.real() + 0.0, z.imag() + 0.0}); }

Cplx checked_root(Cplx radicand, double tol, const char* name) {
  if (std::abs(radicand) < tol)
    throw DegenerateZeros(std::string("appendix_a_family: radicand of ") + name + " vanishes");
  return principal_sqrt(radicand);
}

// z^2 + A (z + 1) + B (z - 1)
MonicPoly sum_diff_form(Cplx a, Cplx b) { return MonicPoly({a + b, a - b}); }

}  // namespace

QuadraticFamily appendix_a_family(Cplx b, Cplx c, double radicand_tol) {
  const double tol = radicand_tol * std::max({1.0, std::norm(b), std::abs(c)});
  const Cplx r0 = checked_root(b * b - 4.0 * c, tol, "r0");
  const Cplx r11 = checked_root(8.0 * b + 2.0 * b * b - 4.0 * c + 8.0 * r0 - 2.0 * b * r0, tol, "r11");
  const Cplx r12 = checked_root(8.0 * b + 2.0 * b * b - 4.0 * c - 8.0 * r0 + 2.0 * b * r0, tol, "r12");
  const Cplx base = -8.0 * b + 4.0 * b * b - 8.0 * c;
  const Cplx r21 = checked_root(base + 24.0 * r0 - 4.0 * b * r0 + 16.0 * r11 + 2.0 * b * r11 - 2.0 * r0 * r11, tol, "r21");
  const Cplx r22 = checked_root(base + 24.0 * r0 - 4.0 * b * r0 - 16.0 * r11 - 2.0 * b * r11 + 2.0 * r0 * r11, tol, "r22");
  const Cplx r23 = checked_root(base - 24.0 * r0 + 4.0 * b * r0 + 16.0 * r12 + 2.0 * b * r12 + 2.0 * r0 * r12, tol, "r23");
  const Cplx r24 = checked_root(base - 24.0 * r0 + 4.0 * b * r0 - 16.0 * r12 - 2.0 * b * r12 - 2.0 * r0 * r12, tol, "r24");

  QuadraticFamily f;
  // z^2 - b/2 (z+1) +- r0/2 (z-1)
  f.generation1 = {sum_diff_form(-b / 2.0, r0 / 2.0), sum_diff_form(-b / 2.0, -r0 / 2.0)};
  f.generation2 = {
      sum_diff_form((b - r0) / 4.0, r11 / 4.0), sum_diff_form((b - r0) / 4.0, -r11 / 4.0),
      sum_diff_form((b + r0) / 4.0, r12 / 4.0), sum_diff_form((b + r0) / 4.0, -r12 / 4.0)};
  f.generation3 = {
      sum_diff_form((-b + r0 - r11) / 8.0, r21 / 8.0), sum_diff_form((-b + r0 - r11) / 8.0, -r21 / 8.0),
      sum_diff_form((-b + r0 + r11) / 8.0, r22 / 8.0), sum_diff_form((-b + r0 + r11) / 8.0, -r22 / 8.0),
      sum_diff_form((-b - r0 - r12) / 8.0, r23 / 8.0), sum_diff_form((-b - r0 - r12) / 8.0, -r23 / 8.0),
      sum_diff_form((-b - r0 + r12) / 8.0, r24 / 8.0), sum_diff_form((-b - r0 + r12) / 8.0, -r24 / 8.0)};
  return f;
}

}  // namespace goldgen

#include "pmedian/instance.hpp"

#include <algorithm>
#include <limits>

#include "pmedian/errors.hpp"

namespace pmedian {

Instance::Instance(std::size_t clients, std::size_t sites, std::size_t open_count,
                   std::vector<std::int64_t> costs)
    : clients_(clients), sites_(sites), open_count_(open_count), costs_(std::move(costs)) {
  if (clients_ == 0) throw StructuralError("instance needs at least one client");
  if (sites_ == 0) throw StructuralError("instance needs at least one site");
  if (open_count_ < 1) throw DomainError("p must be >= 1");
  if (open_count_ >= sites_) throw DomainError("p must be < m");
  if (costs_.size() != clients_ * sites_) {
    throw StructuralError("cost matrix must be exactly n rows by m columns");
  }
  std::int64_t max_cost = 0;
  for (std::int64_t c : costs_) {
    if (c < 0) throw StructuralError("costs must be non-negative");
    max_cost = std::max(max_cost, c);
  }
  // Totals sum up to n entries; reject anything that could wrap 64 bits.
  if (max_cost > 0 && max_cost > std::numeric_limits<std::int64_t>::max() /
                                     static_cast<std::int64_t>(clients_)) {
    throw StructuralError("costs too large: n * max(cost) would overflow 64-bit totals");
  }
}

std::int64_t min_cost_sum(const Instance& inst, const Chromosome& c) {
  if (c.size() != inst.sites()) {
    throw StructuralError("chromosome length must equal the site count");
  }
  const std::vector<std::size_t> open = c.open_indices();
  if (open.empty()) throw ContractError("at least one site must be open");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < inst.clients(); ++i) {
    const auto row = inst.row(i);
    std::int64_t best = row[open[0]];
    for (std::size_t k = 1; k < open.size(); ++k) {
      best = std::min(best, row[open[k]]);
    }
    total += best;
  }
  return total;
}

std::int64_t direct_cost(const Instance& inst, const Chromosome& c) {
  if (c.size() != inst.sites()) {
    throw StructuralError("chromosome length must equal the site count");
  }
  if (c.popcount() != inst.open_count()) {
    throw ContractError("chromosome must open exactly p sites");
  }
  return min_cost_sum(inst, c);
}

namespace {

// C(m, p) saturated at cap + 1; exact while at or below cap.
std::uint64_t binomial_capped(std::uint64_t m, std::uint64_t p, std::uint64_t cap) {
  if (p > m) return 0;
  p = std::min(p, m - p);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= p; ++i) {
    r = r * (m - p + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

ExactOptimum exact_optimum_small(const Instance& inst, std::uint64_t subset_budget) {
  const std::size_t m = inst.sites();
  const std::size_t p = inst.open_count();
  const std::size_t n = inst.clients();
  if (binomial_capped(m, p, subset_budget) > subset_budget) {
    throw BudgetError("instance too large for the exhaustive oracle");
  }

  std::vector<std::size_t> pick(p);
  for (std::size_t j = 0; j < p; ++j) pick[j] = j;

  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  std::vector<std::size_t> best_pick;
  while (true) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = inst.row(i);
      std::int64_t best = row[pick[0]];
      for (std::size_t k = 1; k < p; ++k) {
        best = std::min(best, row[pick[k]]);
      }
      total += best;
    }
    // strict comparison: ties keep the lexicographically first subset
    if (total < best_cost) {
      best_cost = total;
      best_pick = pick;
    }
    std::size_t j = p;
    while (j > 0 && pick[j - 1] == m - p + (j - 1)) --j;
    if (j == 0) break;
    ++pick[j - 1];
    for (std::size_t k = j; k < p; ++k) pick[k] = pick[k - 1] + 1;
  }
  return {Chromosome::from_open(m, best_pick), best_cost};
}

}  // namespace pmedian

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmedian/chromosome.hpp"

namespace pmedian {

// A facility-location instance: an n x m client-to-site cost matrix plus the
// number p of sites to open, 1 <= p < m. Immutable after construction and
// safe to share across threads.
class Instance {
 public:
  Instance(std::size_t clients, std::size_t sites, std::size_t open_count,
           std::vector<std::int64_t> costs);

  std::size_t clients() const { return clients_; }
  std::size_t sites() const { return sites_; }
  std::size_t open_count() const { return open_count_; }

  std::int64_t cost(std::size_t i, std::size_t j) const { return costs_[i * sites_ + j]; }
  std::span<const std::int64_t> row(std::size_t i) const {
    return {costs_.data() + i * sites_, sites_};
  }
  const std::vector<std::int64_t>& costs() const { return costs_; }

 private:
  std::size_t clients_;
  std::size_t sites_;
  std::size_t open_count_;
  std::vector<std::int64_t> costs_;
};

// Sum over clients of the cheapest open site. Requires at least one open bit
// but puts no constraint on how many.
std::int64_t min_cost_sum(const Instance& inst, const Chromosome& c);

// As min_cost_sum, but enforces the exactly-p-open contract.
std::int64_t direct_cost(const Instance& inst, const Chromosome& c);

struct ExactOptimum {
  Chromosome best;
  std::int64_t cost = 0;
};

// Exhaustive search over all p-subsets; ties keep the lexicographically
// smallest open set. Refuses instances whose subset count exceeds the budget.
ExactOptimum exact_optimum_small(const Instance& inst, std::uint64_t subset_budget = 10'000'000);

}  // namespace pmedian

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmedian/chromosome.hpp"
#include "pmedian/instance.hpp"

namespace pmedian {

// Per-client site orderings by ascending cost (ties toward the lower site
// index) with the matching first-difference cost increments. Both tables are
// truncated to m-p+1 columns: with exactly p open sites, any m-p+1 ordered
// candidates must contain an open one, so later columns are never scanned.
struct OrderingTables {
  std::size_t clients = 0;
  std::size_t sites = 0;
  std::size_t open_count = 0;
  std::size_t width = 0;  // m - p + 1
  std::vector<std::uint32_t> site_order;  // clients x width, row-major
  std::vector<std::int64_t> increments;   // clients x width, row-major

  std::span<const std::uint32_t> order_row(std::size_t i) const {
    return {site_order.data() + i * width, width};
  }
  std::span<const std::int64_t> increment_row(std::size_t i) const {
    return {increments.data() + i * width, width};
  }
};

OrderingTables build_ordering(const Instance& inst);

// Total service cost of the open set: per client, accumulate increments in
// table order up to and including the first open site. The scan provably
// terminates within the table width when the chromosome opens p sites;
// running off the end means the caller broke that contract.
std::int64_t fitness(const OrderingTables& tables, const Chromosome& c);

}  // namespace pmedian

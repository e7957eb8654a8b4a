#include "pmedian/ordering.hpp"

#include <algorithm>
#include <numeric>

#include "pmedian/errors.hpp"

namespace pmedian {

OrderingTables build_ordering(const Instance& inst) {
  const std::size_t n = inst.clients();
  const std::size_t m = inst.sites();
  OrderingTables t;
  t.clients = n;
  t.sites = m;
  t.open_count = inst.open_count();
  t.width = m - t.open_count + 1;
  t.site_order.resize(n * t.width);
  t.increments.resize(n * t.width);

  std::vector<std::uint32_t> order(m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = inst.row(i);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (row[a] != row[b]) return row[a] < row[b];
      return a < b;  // deterministic tie-break
    });
    std::int64_t prev = 0;
    for (std::size_t k = 0; k < t.width; ++k) {
      const std::uint32_t site = order[k];
      t.site_order[i * t.width + k] = site;
      t.increments[i * t.width + k] = row[site] - prev;
      prev = row[site];
    }
  }
  return t;
}

std::int64_t fitness(const OrderingTables& t, const Chromosome& c) {
  if (c.size() != t.sites) {
    throw StructuralError("chromosome length must equal the site count");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < t.clients; ++i) {
    const std::uint32_t* order = t.site_order.data() + i * t.width;
    const std::int64_t* inc = t.increments.data() + i * t.width;
    std::int64_t acc = 0;
    for (std::size_t k = 0;; ++k) {
      if (k == t.width) {
        throw ContractError("no open site within the scan width; exactly p sites must be open");
      }
      acc += inc[k];
      if (c.test(order[k])) break;
    }
    total += acc;
  }
  return total;
}

}  // namespace pmedian

#include "pmedian/combinatorics.hpp"

#include <algorithm>

#include "pmedian/errors.hpp"

namespace pmedian {

BigInt binomial(std::size_t m, std::size_t p) {
  if (p > m) throw DomainError("binomial: p must not exceed m");
  p = std::min(p, m - p);
  BigInt result = 1;
  for (std::size_t i = 1; i <= p; ++i) {
    result *= static_cast<std::uint64_t>(m - p + i);
    result /= static_cast<std::uint64_t>(i);  // exact at every step
  }
  return result;
}

Chromosome unrank_combination(std::size_t m, std::size_t p, const BigInt& rank) {
  if (p > m) throw DomainError("unrank: p must not exceed m");
  if (rank < 0 || rank >= binomial(m, p)) throw DomainError("unrank: rank out of range");

  Chromosome out(m);
  if (p == 0) return out;

  // cur = C(a, k): the number of completions that take the current candidate
  // site, where a sites and k picks remain after it. Updated in O(1) per
  // candidate instead of recomputing a binomial.
  BigInt r = rank;
  std::size_t a = m - 1;
  std::size_t k = p - 1;
  BigInt cur = binomial(a, k);
  std::size_t candidate = 0;
  std::size_t remaining = p;
  while (remaining > 0) {
    if (cur > r) {
      out.set(candidate, true);
      --remaining;
      if (remaining == 0) break;
      cur = cur * k / a;  // C(a-1, k-1)
      --a;
      --k;
    } else {
      r -= cur;
      cur = cur * (a - k) / a;  // C(a-1, k)
      --a;
    }
    ++candidate;
  }
  return out;
}

BigInt random_below(const BigInt& bound, RandomStream& rng) {
  if (bound <= 0) throw DomainError("random_below: bound must be positive");
  if (bound == 1) return 0;
  const std::size_t bits = boost::multiprecision::msb(bound - 1) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << top_bits) - 1;
  while (true) {
    BigInt value = rng.next() & top_mask;
    for (std::size_t w = 1; w < words; ++w) {
      value <<= 64;
      value |= rng.next();
    }
    if (value < bound) return value;
  }
}

Chromosome random_chromosome(std::size_t m, std::size_t p, RandomStream& rng) {
  if (p >= m) throw DomainError("random_chromosome: p must be < m");
  return unrank_combination(m, p, random_below(binomial(m, p), rng));
}

}  // namespace pmedian

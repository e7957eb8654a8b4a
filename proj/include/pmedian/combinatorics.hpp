#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

#include "pmedian/chromosome.hpp"
#include "pmedian/rng.hpp"

namespace pmedian {

using BigInt = boost::multiprecision::cpp_int;

// Exact binomial coefficient C(m, p).
BigInt binomial(std::size_t m, std::size_t p);

// The rank-th p-subset of {0..m-1} in lexicographic order of sorted index
// tuples, returned as an m-bit chromosome with exactly p open bits.
Chromosome unrank_combination(std::size_t m, std::size_t p, const BigInt& rank);

// Uniform integer in [0, bound), assembled from 64-bit draws with rejection
// so the distribution stays exact for bounds wider than one word.
BigInt random_below(const BigInt& bound, RandomStream& rng);

// Uniform p-subset chromosome via a single logical rank draw.
Chromosome random_chromosome(std::size_t m, std::size_t p, RandomStream& rng);

}  // namespace pmedian

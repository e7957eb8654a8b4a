#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pmedian/chromosome.hpp"
#include "pmedian/instance.hpp"
#include "pmedian/ordering.hpp"
#include "pmedian/rng.hpp"

namespace pmedian {

enum class ShiftDirection { Left, Right };

// Where each block's best lands in the next population: its own block's
// first slot, or all bests packed into the first block.
enum class MigrationMode { BlockToSameBlock, TeamToFirstBlock };

struct GaConfig {
  std::size_t nb = 60;           // independent blocks per kernel
  std::size_t nt = 256;          // chromosomes per block; power of two >= 2
  std::size_t evolve_limit = 100;  // hard cap on kernel launches
  std::size_t saturation = 10;   // stop after this many kernels without improvement
  std::uint64_t seed = 1;
  // Overrides for the per-kernel cycle lengths; both default to lg(nt).
  // The crossover stride pattern restarts when it runs out; 0 disables the
  // respective cycle.
  std::optional<std::size_t> crossover_iters;
  std::optional<std::size_t> mutation_iters;
  MigrationMode migration = MigrationMode::BlockToSameBlock;

  void validate() const;
};

struct Population {
  std::size_t nb = 0;
  std::size_t nt = 0;
  std::vector<Chromosome> members;  // nb * nt, block-major

  std::span<Chromosome> block(std::size_t b) { return {members.data() + b * nt, nt}; }
  std::span<const Chromosome> block(std::size_t b) const { return {members.data() + b * nt, nt}; }
};

struct RunResult {
  Chromosome best;
  std::int64_t best_cost = 0;
  std::size_t kernels_executed = 0;
  std::size_t kernel_of_best = 0;  // 1-based kernel that first reached best_cost
  std::vector<std::int64_t> per_kernel_best_costs;
  std::chrono::duration<double> wall_time{};
};

// Balanced gene exchange. The offspring starts as a copy of a; scanning from
// start_index and wrapping once around, it adopts b's gene at differing
// positions while the direction quota lasts: exchange_count/2 genes may flip
// closed-to-open and as many open-to-closed, so success preserves popcount
// and lands exactly exchange_count positions away from a. Returns nothing
// when the quotas cannot be balanced within one full cycle; the caller keeps
// the parent. exchange_count must be even, between 2 and 2*(popcount(a)/2).
std::optional<Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                    std::size_t start_index, std::size_t exchange_count);

// Rotate the whole vector by k positions, 0 <= k < size.
Chromosome circular_shift(const Chromosome& c, std::size_t k, ShiftDirection direction);

// Rotate the subsequence [lo, hi] by k positions, 0 <= k <= hi - lo.
Chromosome block_shift(const Chromosome& c, std::size_t lo, std::size_t hi, std::size_t k,
                       ShiftDirection direction);

// One mutation drawn from the engine's distribution: a fair coin picks whole
// vs subsequence rotation, direction is a fair coin, distances and bounds are
// uniform over their valid ranges. Both shapes preserve popcount.
Chromosome random_shift_mutation(const Chromosome& c, RandomStream& rng);

// Partner of `thread` in the given crossover round for a block of nt threads
// (nt a power of two, 0 <= round < lg(nt)). Threads pair at stride nt/2 in
// round 0 and the stride halves each round; the relation is an involution
// with no fixed points.
std::size_t crossover_couple(std::size_t thread, std::size_t round, std::size_t nt);

// Stride-halving min-reduction; ties resolve to the lower index, so the
// result always equals a left-to-right scan. Size must be a power of two.
std::pair<std::int64_t, std::size_t> block_min_reduce(std::span<const std::int64_t> costs);

struct BlockResult {
  Chromosome best;
  std::int64_t cost = 0;
  std::size_t thread = 0;
};

// One kernel pass over a single block: fitness, crossover cycle, mutation
// cycle, min-reduction. The block is evolved in place; every random draw is
// keyed by (seed, kernel, block, ...) so the result is a function of the
// arguments alone.
BlockResult evolve_block(std::span<Chromosome> block, const OrderingTables& tables,
                         const GaConfig& cfg, std::uint64_t kernel_index,
                         std::size_t block_index);

// Full run: random initial population, evolve kernels until the best cost
// has not improved for cfg.saturation consecutive kernels or evolve_limit is
// reached, migrating block bests into each freshly generated population.
// workers = 0 uses the hardware concurrency; any worker count yields the
// identical RunResult for the same instance, config, and seed.
RunResult run_ga(const Instance& inst, const GaConfig& cfg, unsigned workers = 0);

}  // namespace pmedian

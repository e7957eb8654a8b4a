#include "pmedian/ga.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "pmedian/combinatorics.hpp"
#include "pmedian/errors.hpp"

namespace pmedian {

namespace {

// Key prefixes keeping the host, couple, and mutation streams disjoint.
constexpr std::uint64_t kHostTag = 1;
constexpr std::uint64_t kCoupleTag = 2;
constexpr std::uint64_t kMutationTag = 3;

}  // namespace

void GaConfig::validate() const {
  if (nb < 1) throw DomainError("nb must be >= 1");
  if (nt < 2 || (nt & (nt - 1)) != 0) throw DomainError("nt must be a power of two >= 2");
  if (evolve_limit < 1) throw DomainError("evolve_limit must be >= 1");
  if (saturation < 1) throw DomainError("saturation must be >= 1");
  if (migration == MigrationMode::TeamToFirstBlock && nb > nt) {
    throw DomainError("team migration needs nb <= nt");
  }
}

std::optional<Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                    std::size_t start_index, std::size_t exchange_count) {
  if (a.size() != b.size()) throw StructuralError("parents must have equal length");
  const std::size_t m = a.size();
  const std::size_t p = a.popcount();
  if (start_index >= m) throw DomainError("crossover start index out of range");
  if (exchange_count < 2 || exchange_count % 2 != 0 || exchange_count / 2 > p / 2) {
    throw DomainError("exchange count must be even, between 2 and 2*(popcount/2)");
  }

  Chromosome child = a;
  std::size_t open_quota = exchange_count / 2;   // closed-to-open flips left
  std::size_t close_quota = exchange_count / 2;  // open-to-closed flips left
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t j = (start_index + step) % m;
    const bool in_a = a.test(j);
    const bool in_b = b.test(j);
    if (in_a == in_b) continue;
    if (!in_a && open_quota > 0) {
      child.set(j, true);
      --open_quota;
    } else if (in_a && close_quota > 0) {
      child.set(j, false);
      --close_quota;
    }
    if (open_quota == 0 && close_quota == 0) return child;
  }
  return std::nullopt;  // quotas cannot balance from this start; keep the parent
}

Chromosome circular_shift(const Chromosome& c, std::size_t k, ShiftDirection direction) {
  const std::size_t m = c.size();
  if (k >= m) throw DomainError("shift distance must be < the vector length");
  if (k == 0) return c;
  Chromosome out(m);
  const std::size_t offset = direction == ShiftDirection::Right ? k : m - k;
  for (std::size_t j = 0; j < m; ++j) {
    if (c.test(j)) out.set((j + offset) % m, true);
  }
  return out;
}

Chromosome block_shift(const Chromosome& c, std::size_t lo, std::size_t hi, std::size_t k,
                       ShiftDirection direction) {
  const std::size_t m = c.size();
  if (lo > hi || hi >= m) throw DomainError("subsequence bounds out of range");
  const std::size_t len = hi - lo + 1;
  if (k >= len) throw DomainError("shift distance must not exceed the subsequence span");
  if (k == 0) return c;
  Chromosome out = c;
  const std::size_t offset = direction == ShiftDirection::Right ? k : len - k;
  for (std::size_t t = 0; t < len; ++t) {
    out.set(lo + (t + offset) % len, c.test(lo + t));
  }
  return out;
}

Chromosome random_shift_mutation(const Chromosome& c, RandomStream& rng) {
  const std::size_t m = c.size();
  const bool whole_vector = rng.coin();
  const ShiftDirection direction = rng.coin() ? ShiftDirection::Left : ShiftDirection::Right;
  if (whole_vector) {
    return circular_shift(c, 1 + rng.below(m - 1), direction);
  }
  std::size_t a = rng.below(m);
  std::size_t b = rng.below(m - 1);
  if (b >= a) ++b;  // distinct pair, still uniform
  const auto [lo, hi] = std::minmax(a, b);
  return block_shift(c, lo, hi, rng.below(hi - lo + 1), direction);
}

std::size_t crossover_couple(std::size_t thread, std::size_t round, std::size_t nt) {
  const std::size_t sub_block = nt >> round;  // threads still coupled together
  const std::size_t stride = sub_block / 2;
  const std::size_t rtx = thread % sub_block;
  return rtx >= stride ? thread - stride : thread + stride;
}

std::pair<std::int64_t, std::size_t> block_min_reduce(std::span<const std::int64_t> costs) {
  const std::size_t nt = costs.size();
  if (nt == 0 || (nt & (nt - 1)) != 0) {
    throw DomainError("reduction size must be a power of two");
  }
  std::vector<std::int64_t> min_cost(costs.begin(), costs.end());
  std::vector<std::size_t> min_thread(nt);
  std::iota(min_thread.begin(), min_thread.end(), std::size_t{0});
  for (std::size_t stride = nt / 2; stride > 0; stride /= 2) {
    for (std::size_t tx = 0; tx < stride; ++tx) {
      // compare (cost, index) pairs so ties always keep the lower index
      const bool take = min_cost[tx + stride] < min_cost[tx] ||
                        (min_cost[tx + stride] == min_cost[tx] &&
                         min_thread[tx + stride] < min_thread[tx]);
      if (take) {
        min_cost[tx] = min_cost[tx + stride];
        min_thread[tx] = min_thread[tx + stride];
      }
    }
  }
  return {min_cost[0], min_thread[0]};
}

BlockResult evolve_block(std::span<Chromosome> block, const OrderingTables& tables,
                         const GaConfig& cfg, std::uint64_t kernel_index,
                         std::size_t block_index) {
  const std::size_t nt = block.size();
  if (nt != cfg.nt) throw StructuralError("block size must equal cfg.nt");
  if (nt < 2 || (nt & (nt - 1)) != 0) throw DomainError("nt must be a power of two >= 2");
  const std::size_t m = tables.sites;
  const std::size_t p = tables.open_count;
  const std::size_t cycle_length = static_cast<std::size_t>(std::countr_zero(nt));  // lg(nt)

  std::vector<std::int64_t> cost(nt);
  for (std::size_t t = 0; t < nt; ++t) cost[t] = fitness(tables, block[t]);

  // Crossover cycle. Couples are stride-halving pairs; both members share one
  // (start, exchange count) draw keyed by the lower thread index. Each round
  // reads the block as it stood at the round barrier, so evaluation order
  // within the round cannot matter. With p < 2 no balanced exchange exists.
  const std::size_t rounds = cfg.crossover_iters.value_or(cycle_length);
  if (p >= 2) {
    std::vector<Chromosome> before;
    for (std::size_t round = 0; round < rounds; ++round) {
      before.assign(block.begin(), block.end());
      for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t couple = crossover_couple(t, round % cycle_length, nt);
        RandomStream pair_rng = RandomStream::derive(
            cfg.seed, {kCoupleTag, kernel_index, block_index, round, std::min(t, couple)});
        const std::size_t start = pair_rng.below(m);
        const std::size_t exchanges = 2 * (1 + pair_rng.below(p / 2));
        std::optional<Chromosome> child = crossover(before[t], before[couple], start, exchanges);
        if (!child) continue;
        const std::int64_t child_cost = fitness(tables, *child);
        if (child_cost < cost[t]) {
          block[t] = *std::move(child);
          cost[t] = child_cost;
        }
      }
    }
  }

  // Mutation cycle: bounded shift attempts per thread, stopping at the first
  // strict improvement.
  const std::size_t attempts = cfg.mutation_iters.value_or(cycle_length);
  for (std::size_t t = 0; t < nt; ++t) {
    RandomStream rng =
        RandomStream::derive(cfg.seed, {kMutationTag, kernel_index, block_index, t});
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
      Chromosome child = random_shift_mutation(block[t], rng);
      const std::int64_t child_cost = fitness(tables, child);
      if (child_cost < cost[t]) {
        block[t] = std::move(child);
        cost[t] = child_cost;
        break;
      }
    }
  }

  const auto [best_cost, best_thread] = block_min_reduce(cost);
  return {block[best_thread], best_cost, best_thread};
}

namespace {

unsigned resolve_workers(unsigned requested, std::size_t blocks) {
  unsigned w = requested != 0 ? requested : std::thread::hardware_concurrency();
  if (w == 0) w = 1;
  return static_cast<unsigned>(std::min<std::size_t>(w, blocks));
}

void migrate(const std::vector<BlockResult>& bests, Population& next, MigrationMode mode) {
  if (mode == MigrationMode::BlockToSameBlock) {
    for (std::size_t b = 0; b < bests.size(); ++b) {
      next.block(b)[0] = bests[b].best;
    }
  } else {
    const auto first = next.block(0);
    for (std::size_t b = 0; b < bests.size(); ++b) {
      first[b] = bests[b].best;
    }
  }
}

}  // namespace

RunResult run_ga(const Instance& inst, const GaConfig& cfg, unsigned workers) {
  cfg.validate();
  const auto start_time = std::chrono::steady_clock::now();
  const OrderingTables tables = build_ordering(inst);
  const std::size_t m = inst.sites();
  const std::size_t p = inst.open_count();

  RandomStream host = RandomStream::derive(cfg.seed, {kHostTag});
  const auto generate_population = [&](Population& pop) {
    pop.nb = cfg.nb;
    pop.nt = cfg.nt;
    pop.members.clear();
    pop.members.reserve(cfg.nb * cfg.nt);
    for (std::size_t i = 0; i < cfg.nb * cfg.nt; ++i) {
      pop.members.push_back(random_chromosome(m, p, host));
    }
  };

  Population current;
  generate_population(current);

  RunResult result;
  result.best_cost = std::numeric_limits<std::int64_t>::max();
  std::vector<BlockResult> block_bests(cfg.nb);
  std::size_t stale_kernels = 0;
  const unsigned worker_count = resolve_workers(workers, cfg.nb);

  for (std::uint64_t kernel = 0;; ++kernel) {
    Population next;
    if (worker_count <= 1) {
      for (std::size_t b = 0; b < cfg.nb; ++b) {
        block_bests[b] = evolve_block(current.block(b), tables, cfg, kernel, b);
      }
      generate_population(next);
    } else {
      // Blocks evolve on the pool while this thread builds the next random
      // population. Every result lands in its block's slot and every draw is
      // keyed by block, so scheduling cannot change the outcome.
      std::atomic<std::size_t> dispenser{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      std::vector<std::thread> pool;
      pool.reserve(worker_count);
      for (unsigned w = 0; w < worker_count; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::size_t b; (b = dispenser.fetch_add(1)) < cfg.nb;) {
              block_bests[b] = evolve_block(current.block(b), tables, cfg, kernel, b);
            }
          } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        });
      }
      generate_population(next);
      for (std::thread& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
    }

    std::size_t best_block = 0;
    for (std::size_t b = 1; b < cfg.nb; ++b) {
      if (block_bests[b].cost < block_bests[best_block].cost) best_block = b;
    }
    const std::int64_t kernel_best = block_bests[best_block].cost;
    result.per_kernel_best_costs.push_back(kernel_best);
    if (kernel_best < result.best_cost) {
      result.best_cost = kernel_best;
      result.best = block_bests[best_block].best;
      result.kernel_of_best = static_cast<std::size_t>(kernel) + 1;
      stale_kernels = 0;
    } else {
      ++stale_kernels;
    }
    if (stale_kernels >= cfg.saturation || kernel + 1 >= cfg.evolve_limit) {
      result.kernels_executed = static_cast<std::size_t>(kernel) + 1;
      break;
    }
    migrate(block_bests, next, cfg.migration);
    current = std::move(next);
  }

  result.wall_time = std::chrono::steady_clock::now() - start_time;
  return result;
}

}  // namespace pmedian

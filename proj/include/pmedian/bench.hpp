#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmedian/combinatorics.hpp"
#include "pmedian/ga.hpp"
#include "pmedian/instance.hpp"

namespace pmedian {

enum class InstanceFormat { Dense, OrLib };
enum class ReportStyle { Table, Structured };

struct BenchmarkRecord {
  std::string instance_code;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t p = 0;
  BigInt search_space;  // C(m, p)
  std::int64_t best_cost = 0;
  std::optional<std::int64_t> reference_cost;
  std::optional<double> approximation_ratio;  // reference / best
  std::size_t kernel_calls = 0;               // kernel that first reached best_cost
  double wall_time = 0.0;                     // seconds
  std::uint64_t seed = 0;

  friend bool operator==(const BenchmarkRecord&, const BenchmarkRecord&) = default;
};

// "n m p" header line, then n lines of m non-negative integer costs.
Instance parse_dense(std::string_view text);

// "n edges p" header, then one "u v cost" triple per undirected edge with
// 1-based vertices; the instance's cost matrix is the all-pairs shortest-path
// closure of the graph, so n = m. The graph must be connected.
Instance parse_orlib(std::string_view text);

struct BenchOptions {
  std::size_t repeats = 1;
  std::optional<std::size_t> p_override;
  unsigned workers = 0;
};

// Parse, run (repeats times, seeds derived from cfg.seed when repeats > 1),
// and aggregate into one record. Across repeats the reported best cost,
// kernel count, and wall time are component-wise lower medians.
BenchmarkRecord run_benchmark(const std::filesystem::path& instance_path, InstanceFormat format,
                              const GaConfig& cfg, std::optional<std::int64_t> reference_cost,
                              const BenchOptions& options = {});

// Table: one aligned human-readable row per record. Structured: one JSON
// object per line, field names matching BenchmarkRecord, search_space as a
// decimal string; parse_structured_report inverts it exactly.
std::string emit_report(std::span<const BenchmarkRecord> records, ReportStyle style);
std::vector<BenchmarkRecord> parse_structured_report(std::string_view text);

// "7.53E+07"-style rendering with exact decimal-string rounding.
std::string to_scientific(const BigInt& value, int significant_digits);

}  // namespace pmedian

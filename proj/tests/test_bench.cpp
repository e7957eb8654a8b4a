#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pmedian/bench.hpp"
#include "pmedian/errors.hpp"
#include "test_support.hpp"

using pmedian::BenchmarkRecord;
using pmedian::BigInt;
using pmedian::Instance;

namespace {

constexpr const char* kSampleDense =
    "5 4 2\n"
    "7 10 16 11\n"
    "15 17 7 7\n"
    "10 4 6 6\n"
    "7 11 18 12\n"
    "10 22 14 8\n";

struct TempFile {
  std::filesystem::path path;

  TempFile(const std::string& name, const std::string& contents) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("dense parser reads the sample instance") {
  const Instance inst = pmedian::parse_dense(kSampleDense);
  CHECK(inst.clients() == 5);
  CHECK(inst.sites() == 4);
  CHECK(inst.open_count() == 2);
  CHECK(inst.cost(0, 0) == 7);
  CHECK(inst.cost(2, 1) == 4);
  CHECK(inst.cost(4, 3) == 8);
}

TEST_CASE("dense parser accepts a minimal instance and odd spacing") {
  const Instance inst = pmedian::parse_dense("  1   2 1 \n\n  0\t4 \n");
  CHECK(inst.clients() == 1);
  CHECK(inst.sites() == 2);
  CHECK(inst.cost(0, 1) == 4);
}

TEST_CASE("dense parser diagnostics are distinct") {
  CHECK_THROWS_WITH_AS(pmedian::parse_dense(""), "dense format: empty input",
                       pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_dense("1 2\n0 1\n"), "dense format: header must be 'n m p'",
                       pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_dense("2 2 1\n0 1\n"),
                       "dense format: expected 2 cost rows, found 1", pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_dense("1 3 1\n0 1\n"),
                       "dense format: row 1 has 2 values, expected 3", pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_dense("1 2 1\n0 -4\n"),
                       "dense format: negative cost at row 1, column 2", pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_dense("1 2 2\n0 4\n"), "p must be < m",
                       pmedian::DomainError);
  CHECK_THROWS_AS(pmedian::parse_dense("1 2 x\n0 4\n"), pmedian::StructuralError);
}

TEST_CASE("graph parser closes a triangle with a shortcut") {
  const Instance inst = pmedian::parse_orlib("3 3 1\n1 2 3\n2 3 4\n1 3 10\n");
  CHECK(inst.clients() == 3);
  CHECK(inst.sites() == 3);
  const std::vector<std::int64_t> expected = {0, 3, 7, 3, 0, 4, 7, 4, 0};
  CHECK(inst.costs() == expected);  // 1-3 goes through 2, not the direct edge
}

TEST_CASE("graph parser handles a single edge and parallel edges") {
  const Instance two = pmedian::parse_orlib("2 1 1\n1 2 5\n");
  CHECK(two.costs() == std::vector<std::int64_t>{0, 5, 5, 0});
  const Instance dup = pmedian::parse_orlib("2 2 1\n1 2 9\n2 1 4\n");
  CHECK(dup.costs() == std::vector<std::int64_t>{0, 4, 4, 0});
}

TEST_CASE("graph parser diagnostics") {
  CHECK_THROWS_AS(pmedian::parse_orlib(""), pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_orlib("3 1 1\n1 2 5\n"),
                       "graph format: disconnected graph, no path between vertices 1 and 3",
                       pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_orlib("2 1 1\n1 3 5\n"),
                       "graph format: vertex index out of range in edge 1",
                       pmedian::StructuralError);
  CHECK_THROWS_WITH_AS(pmedian::parse_orlib("2 1 1\n1 2 -5\n"),
                       "graph format: negative cost on edge 1", pmedian::StructuralError);
  CHECK_THROWS_AS(pmedian::parse_orlib("2 2 1\n1 2 5\n"), pmedian::StructuralError);
}

TEST_CASE("graph closure is a metric on random connected graphs") {
  pmedian::RandomStream rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + rng.below(10);
    std::string text;
    std::size_t edges = 0;
    std::string body;
    // random spanning tree keeps it connected, extra edges add shortcuts
    for (std::size_t v = 2; v <= n; ++v) {
      const std::size_t u = 1 + rng.below(v - 1);
      body += std::to_string(u) + " " + std::to_string(v) + " " +
              std::to_string(1 + rng.below(20)) + "\n";
      ++edges;
    }
    for (int extra = 0; extra < 4; ++extra) {
      const std::size_t u = 1 + rng.below(n);
      const std::size_t v = 1 + rng.below(n);
      if (u == v) continue;
      body += std::to_string(u) + " " + std::to_string(v) + " " +
              std::to_string(1 + rng.below(20)) + "\n";
      ++edges;
    }
    text = std::to_string(n) + " " + std::to_string(edges) + " 1\n" + body;
    const Instance inst = pmedian::parse_orlib(text);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(inst.cost(i, i) == 0);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(inst.cost(i, j) == inst.cost(j, i));
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(inst.cost(i, j) <= inst.cost(i, k) + inst.cost(k, j));
        }
      }
    }
  }
}

TEST_CASE("scientific rendering uses exact decimal rounding") {
  CHECK(pmedian::to_scientific(0, 3) == "0.00E+00");
  CHECK(pmedian::to_scientific(6, 3) == "6.00E+00");
  CHECK(pmedian::to_scientific(75287520, 3) == "7.53E+07");
  CHECK(pmedian::to_scientific(BigInt("93343021201262177400"), 5) == "9.3343E+19");
  CHECK(pmedian::to_scientific(BigInt("93343021201262177400"), 3) == "9.33E+19");
  CHECK(pmedian::to_scientific(99951, 3) == "1.00E+05");  // carry ripples past the top digit
  CHECK(pmedian::to_scientific(99949, 3) == "9.99E+04");
  CHECK(pmedian::to_scientific(1, 1) == "1E+00");
  CHECK(pmedian::to_scientific(pmedian::binomial(900, 90), 3) == "5.13E+125");
  CHECK_THROWS_AS(pmedian::to_scientific(5, 0), pmedian::DomainError);
  CHECK_THROWS_AS(pmedian::to_scientific(-5, 3), pmedian::DomainError);
}

TEST_CASE("structured report round-trips exactly") {
  BenchmarkRecord a;
  a.instance_code = "sample_5x4";
  a.n = 5;
  a.m = 4;
  a.p = 2;
  a.search_space = 6;
  a.best_cost = 35;
  a.reference_cost = 35;
  a.approximation_ratio = 1.0;
  a.kernel_calls = 1;
  a.wall_time = 0.0123456789;
  a.seed = 42;
  BenchmarkRecord b;
  b.instance_code = "huge";
  b.n = 900;
  b.m = 900;
  b.p = 90;
  b.search_space = pmedian::binomial(900, 90);
  b.best_cost = 5128;
  b.kernel_calls = 17;
  b.wall_time = 812.25;
  b.seed = 18446744073709551615ULL;  // the full unsigned range survives

  const std::vector<BenchmarkRecord> records = {a, b};
  const std::string text = pmedian::emit_report(records, pmedian::ReportStyle::Structured);
  const std::vector<BenchmarkRecord> parsed = pmedian::parse_structured_report(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == a);
  CHECK(parsed[1] == b);
  CHECK_THROWS_AS(pmedian::parse_structured_report("{\"n\": 1}"), pmedian::StructuralError);
  CHECK(pmedian::parse_structured_report("\n\n").empty());
}

TEST_CASE("table report lines up and marks optimal hits") {
  BenchmarkRecord r;
  r.instance_code = "sample_5x4";
  r.n = 5;
  r.m = 4;
  r.p = 2;
  r.search_space = 6;
  r.best_cost = 35;
  r.reference_cost = 35;
  r.approximation_ratio = 1.0;
  r.kernel_calls = 1;
  r.wall_time = 0.25;
  r.seed = 7;
  const std::string table = pmedian::emit_report({&r, 1}, pmedian::ReportStyle::Table);
  CHECK(table.find("Instance Code") != std::string::npos);
  CHECK(table.find("Potential Solutions") != std::string::npos);
  CHECK(table.find("6.00E+00") != std::string::npos);
  CHECK(table.find("Optimal") != std::string::npos);

  r.reference_cost = 34;  // best known better than ours: a ratio below one
  r.approximation_ratio = 34.0 / 35.0;
  const std::string ratio_table = pmedian::emit_report({&r, 1}, pmedian::ReportStyle::Table);
  CHECK(ratio_table.find("0.971428571") != std::string::npos);

  r.reference_cost.reset();
  r.approximation_ratio.reset();
  const std::string blank_table = pmedian::emit_report({&r, 1}, pmedian::ReportStyle::Table);
  CHECK(blank_table.find("Optimal") == std::string::npos);
}

TEST_CASE("run_benchmark solves the sample file and fills the record") {
  const TempFile file("pmedian_test_sample.dense", kSampleDense);
  pmedian::GaConfig cfg;
  cfg.nb = 2;
  cfg.nt = 4;
  cfg.evolve_limit = 10;
  cfg.saturation = 5;
  cfg.seed = 7;
  const BenchmarkRecord record = pmedian::run_benchmark(
      file.path, pmedian::InstanceFormat::Dense, cfg, 35, {});
  CHECK(record.instance_code == "pmedian_test_sample");
  CHECK(record.n == 5);
  CHECK(record.m == 4);
  CHECK(record.p == 2);
  CHECK(record.search_space == 6);
  CHECK(record.best_cost == 35);
  REQUIRE(record.approximation_ratio.has_value());
  CHECK(*record.approximation_ratio == doctest::Approx(1.0));
  CHECK(record.kernel_calls >= 1);
  CHECK(record.seed == 7);
  CHECK(record.wall_time >= 0.0);
}

TEST_CASE("run_benchmark without a reference leaves the ratio empty") {
  const TempFile file("pmedian_test_noref.dense", kSampleDense);
  pmedian::GaConfig cfg;
  cfg.nb = 2;
  cfg.nt = 4;
  cfg.evolve_limit = 5;
  cfg.saturation = 5;
  const BenchmarkRecord record = pmedian::run_benchmark(
      file.path, pmedian::InstanceFormat::Dense, cfg, std::nullopt, {});
  CHECK(!record.reference_cost.has_value());
  CHECK(!record.approximation_ratio.has_value());
}

TEST_CASE("run_benchmark p override reshapes the instance") {
  const TempFile file("pmedian_test_override.dense", kSampleDense);
  pmedian::GaConfig cfg;
  cfg.nb = 2;
  cfg.nt = 4;
  cfg.evolve_limit = 8;
  cfg.saturation = 8;
  pmedian::BenchOptions options;
  options.p_override = 1;
  const BenchmarkRecord record = pmedian::run_benchmark(
      file.path, pmedian::InstanceFormat::Dense, cfg, std::nullopt, options);
  CHECK(record.p == 1);
  CHECK(record.search_space == 4);
  CHECK(record.best_cost == 44);  // best single site is site 4: 11+7+6+12+8
}

TEST_CASE("run_benchmark aggregates repeats with the lower median") {
  const TempFile file("pmedian_test_repeats.dense", kSampleDense);
  pmedian::GaConfig cfg;
  cfg.nb = 2;
  cfg.nt = 4;
  cfg.evolve_limit = 10;
  cfg.saturation = 5;
  cfg.seed = 3;
  pmedian::BenchOptions options;
  options.repeats = 5;
  const BenchmarkRecord record = pmedian::run_benchmark(
      file.path, pmedian::InstanceFormat::Dense, cfg, 35, options);
  CHECK(record.best_cost == 35);
  CHECK(record.seed == 3);  // the master seed, not a derived one
  const BenchmarkRecord again = pmedian::run_benchmark(
      file.path, pmedian::InstanceFormat::Dense, cfg, 35, options);
  CHECK(record.best_cost == again.best_cost);
  CHECK(record.kernel_calls == again.kernel_calls);
}

TEST_CASE("run_benchmark rejects a missing file and bad repeats") {
  pmedian::GaConfig cfg;
  CHECK_THROWS_AS(pmedian::run_benchmark("/nonexistent/no.dense", pmedian::InstanceFormat::Dense,
                                         cfg, std::nullopt, {}),
                  pmedian::StructuralError);
  const TempFile file("pmedian_test_badrep.dense", kSampleDense);
  pmedian::BenchOptions options;
  options.repeats = 0;
  CHECK_THROWS_AS(pmedian::run_benchmark(file.path, pmedian::InstanceFormat::Dense, cfg,
                                         std::nullopt, options),
                  pmedian::DomainError);
}

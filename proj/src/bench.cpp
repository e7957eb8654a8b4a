#include "pmedian/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pmedian/errors.hpp"

namespace pmedian {

namespace {

constexpr std::uint64_t kRepeatTag = 4;

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::int64_t parse_int(std::string_view token, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw StructuralError(std::string("could not parse ") + what + ": '" + std::string(token) +
                          "'");
  }
  return value;
}

}  // namespace

Instance parse_dense(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view line : split_lines(text)) {
    if (!is_blank(line)) lines.push_back(line);
  }
  if (lines.empty()) throw StructuralError("dense format: empty input");

  const std::vector<std::string_view> header = split_tokens(lines[0]);
  if (header.size() != 3) throw StructuralError("dense format: header must be 'n m p'");
  const std::int64_t n = parse_int(header[0], "n");
  const std::int64_t m = parse_int(header[1], "m");
  const std::int64_t p = parse_int(header[2], "p");
  if (n < 1) throw StructuralError("dense format: n must be positive");
  if (m < 1) throw StructuralError("dense format: m must be positive");
  if (p < 1) throw DomainError("p must be >= 1");

  if (lines.size() - 1 != static_cast<std::size_t>(n)) {
    throw StructuralError("dense format: expected " + std::to_string(n) + " cost rows, found " +
                          std::to_string(lines.size() - 1));
  }
  std::vector<std::int64_t> costs;
  costs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::vector<std::string_view> row = split_tokens(lines[static_cast<std::size_t>(i) + 1]);
    if (row.size() != static_cast<std::size_t>(m)) {
      throw StructuralError("dense format: row " + std::to_string(i + 1) + " has " +
                            std::to_string(row.size()) + " values, expected " + std::to_string(m));
    }
    for (std::int64_t j = 0; j < m; ++j) {
      const std::int64_t c = parse_int(row[static_cast<std::size_t>(j)], "cost");
      if (c < 0) {
        throw StructuralError("dense format: negative cost at row " + std::to_string(i + 1) +
                              ", column " + std::to_string(j + 1));
      }
      costs.push_back(c);
    }
  }
  return Instance(static_cast<std::size_t>(n), static_cast<std::size_t>(m),
                  static_cast<std::size_t>(p), std::move(costs));
}

Instance parse_orlib(std::string_view text) {
  // token stream, not lines: published graph files wrap freely
  const std::vector<std::string_view> tokens = split_tokens(text);
  if (tokens.size() < 3) throw StructuralError("graph format: header must be 'n edges p'");
  const std::int64_t n = parse_int(tokens[0], "vertex count");
  const std::int64_t edges = parse_int(tokens[1], "edge count");
  const std::int64_t p = parse_int(tokens[2], "p");
  if (n < 1) throw StructuralError("graph format: vertex count must be positive");
  if (edges < 0) throw StructuralError("graph format: edge count must be non-negative");
  if (tokens.size() != 3 + 3 * static_cast<std::size_t>(edges)) {
    throw StructuralError("graph format: expected " + std::to_string(edges) +
                          " 'u v cost' triples, found " +
                          std::to_string((tokens.size() - 3) / 3) + " plus stray tokens");
  }

  const std::size_t count = static_cast<std::size_t>(n);
  // headroom so closure sums never wrap
  constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> dist(count * count, kUnreachable);
  for (std::size_t i = 0; i < count; ++i) dist[i * count + i] = 0;

  for (std::int64_t e = 0; e < edges; ++e) {
    const std::size_t base = 3 + 3 * static_cast<std::size_t>(e);
    const std::int64_t u = parse_int(tokens[base], "edge endpoint");
    const std::int64_t v = parse_int(tokens[base + 1], "edge endpoint");
    const std::int64_t w = parse_int(tokens[base + 2], "edge cost");
    if (u < 1 || u > n || v < 1 || v > n) {
      throw StructuralError("graph format: vertex index out of range in edge " +
                            std::to_string(e + 1));
    }
    if (w < 0) {
      throw StructuralError("graph format: negative cost on edge " + std::to_string(e + 1));
    }
    const std::size_t a = static_cast<std::size_t>(u - 1);
    const std::size_t b = static_cast<std::size_t>(v - 1);
    // parallel edges keep the cheapest
    dist[a * count + b] = std::min(dist[a * count + b], w);
    dist[b * count + a] = std::min(dist[b * count + a], w);
  }

  for (std::size_t k = 0; k < count; ++k) {
    const std::int64_t* row_k = dist.data() + k * count;
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t d_ik = dist[i * count + k];
      if (d_ik == kUnreachable) continue;
      std::int64_t* row_i = dist.data() + i * count;
      for (std::size_t j = 0; j < count; ++j) {
        const std::int64_t through = d_ik + row_k[j];
        if (through < row_i[j]) row_i[j] = through;
      }
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (dist[i * count + j] >= kUnreachable) {
        throw StructuralError("graph format: disconnected graph, no path between vertices " +
                              std::to_string(i + 1) + " and " + std::to_string(j + 1));
      }
    }
  }
  return Instance(count, count, static_cast<std::size_t>(p), std::move(dist));
}

std::string to_scientific(const BigInt& value, int significant_digits) {
  if (significant_digits < 1) throw DomainError("significant digits must be >= 1");
  if (value < 0) throw DomainError("negative values are not supported");

  std::string digits = value.str();
  int exponent = static_cast<int>(digits.size()) - 1;
  if (value == 0) {
    digits = "0";
    exponent = 0;
  }

  std::string mantissa = digits.substr(0, static_cast<std::size_t>(significant_digits));
  const bool round_up = digits.size() > static_cast<std::size_t>(significant_digits) &&
                        digits[static_cast<std::size_t>(significant_digits)] >= '5';
  if (round_up) {
    int i = static_cast<int>(mantissa.size()) - 1;
    while (i >= 0 && mantissa[static_cast<std::size_t>(i)] == '9') {
      mantissa[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      mantissa.insert(mantissa.begin(), '1');
      mantissa.pop_back();
      ++exponent;
    } else {
      ++mantissa[static_cast<std::size_t>(i)];
    }
  }
  while (mantissa.size() < static_cast<std::size_t>(significant_digits)) {
    mantissa.push_back('0');
  }

  std::ostringstream out;
  out << mantissa[0];
  if (significant_digits > 1) out << '.' << mantissa.substr(1);
  char exp_buf[16];
  std::snprintf(exp_buf, sizeof exp_buf, "%+03d", exponent);
  out << 'E' << exp_buf;
  return out.str();
}

namespace {

template <typename T>
T lower_median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

std::string ratio_cell(const BenchmarkRecord& r) {
  if (!r.reference_cost) return "-";
  if (*r.reference_cost == r.best_cost) return "Optimal";
  if (!r.approximation_ratio) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", *r.approximation_ratio);
  return buf;
}

}  // namespace

BenchmarkRecord run_benchmark(const std::filesystem::path& instance_path, InstanceFormat format,
                              const GaConfig& cfg, std::optional<std::int64_t> reference_cost,
                              const BenchOptions& options) {
  if (options.repeats < 1) throw DomainError("repeats must be >= 1");
  std::ifstream in(instance_path);
  if (!in) throw StructuralError("cannot open instance file: " + instance_path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Instance inst = format == InstanceFormat::Dense ? parse_dense(text) : parse_orlib(text);
  if (options.p_override) {
    inst = Instance(inst.clients(), inst.sites(), *options.p_override, inst.costs());
  }

  std::vector<std::int64_t> costs;
  std::vector<std::size_t> kernels;
  std::vector<double> times;
  for (std::size_t r = 0; r < options.repeats; ++r) {
    GaConfig run_cfg = cfg;
    if (options.repeats > 1) {
      run_cfg.seed = RandomStream::derive(cfg.seed, {kRepeatTag, r}).next();
    }
    const RunResult result = run_ga(inst, run_cfg, options.workers);
    costs.push_back(result.best_cost);
    kernels.push_back(result.kernel_of_best);
    times.push_back(result.wall_time.count());
  }

  BenchmarkRecord record;
  record.instance_code = instance_path.stem().string();
  record.n = inst.clients();
  record.m = inst.sites();
  record.p = inst.open_count();
  record.search_space = binomial(record.m, record.p);
  record.best_cost = lower_median(costs);
  record.reference_cost = reference_cost;
  if (reference_cost) {
    if (record.best_cost > 0) {
      record.approximation_ratio =
          static_cast<double>(*reference_cost) / static_cast<double>(record.best_cost);
    } else if (*reference_cost == 0) {
      record.approximation_ratio = 1.0;
    }
  }
  record.kernel_calls = lower_median(kernels);
  record.wall_time = lower_median(times);
  record.seed = cfg.seed;
  return record;
}

std::string emit_report(std::span<const BenchmarkRecord> records, ReportStyle style) {
  if (style == ReportStyle::Structured) {
    std::string out;
    for (const BenchmarkRecord& r : records) {
      nlohmann::ordered_json j;
      j["instance_code"] = r.instance_code;
      j["n"] = r.n;
      j["m"] = r.m;
      j["p"] = r.p;
      j["search_space"] = r.search_space.str();
      j["best_cost"] = r.best_cost;
      if (r.reference_cost) j["reference_cost"] = *r.reference_cost;
      if (r.approximation_ratio) j["approximation_ratio"] = *r.approximation_ratio;
      j["kernel_calls"] = r.kernel_calls;
      j["wall_time"] = r.wall_time;
      j["seed"] = r.seed;
      out += j.dump();
      out += '\n';
    }
    return out;
  }

  std::size_t code_width = 13;
  for (const BenchmarkRecord& r : records) {
    code_width = std::max(code_width, r.instance_code.size() + 2);
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(code_width)) << "Instance Code" << std::right
      << std::setw(6) << "n" << std::setw(6) << "m" << std::setw(6) << "p" << std::setw(22)
      << "Potential Solutions" << std::setw(15) << "Approx. Ratio" << std::setw(14)
      << "Kernel Calls" << std::setw(13) << "Time (Sec.)" << std::setw(14) << "Best Cost"
      << std::setw(22) << "Seed" << '\n';
  for (const BenchmarkRecord& r : records) {
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.3f", r.wall_time);
    out << std::left << std::setw(static_cast<int>(code_width)) << r.instance_code << std::right
        << std::setw(6) << r.n << std::setw(6) << r.m << std::setw(6) << r.p << std::setw(22)
        << to_scientific(r.search_space, 3) << std::setw(15) << ratio_cell(r) << std::setw(14)
        << r.kernel_calls << std::setw(13) << time_buf << std::setw(14) << r.best_cost
        << std::setw(22) << r.seed << '\n';
  }
  return out.str();
}

std::vector<BenchmarkRecord> parse_structured_report(std::string_view text) {
  std::vector<BenchmarkRecord> records;
  for (std::string_view line : split_lines(text)) {
    if (is_blank(line)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      BenchmarkRecord r;
      r.instance_code = j.at("instance_code").get<std::string>();
      r.n = j.at("n").get<std::size_t>();
      r.m = j.at("m").get<std::size_t>();
      r.p = j.at("p").get<std::size_t>();
      r.search_space = BigInt(j.at("search_space").get<std::string>());
      r.best_cost = j.at("best_cost").get<std::int64_t>();
      if (j.contains("reference_cost")) r.reference_cost = j["reference_cost"].get<std::int64_t>();
      if (j.contains("approximation_ratio")) {
        r.approximation_ratio = j["approximation_ratio"].get<double>();
      }
      r.kernel_calls = j.at("kernel_calls").get<std::size_t>();
      r.wall_time = j.at("wall_time").get<double>();
      r.seed = j.at("seed").get<std::uint64_t>();
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw StructuralError(std::string("structured report: ") + e.what());
    }
  }
  return records;
}

}  // namespace pmedian

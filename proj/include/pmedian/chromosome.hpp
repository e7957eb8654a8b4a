#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pmedian {

// Fixed-length open/closed site vector: bit j set means site j is open.
// Unused bits of the top word stay zero, so equality works on raw words.
class Chromosome {
 public:
  Chromosome() = default;
  explicit Chromosome(std::size_t size);

  static Chromosome from_open(std::size_t size, const std::vector<std::size_t>& open);
  // "1011" opens sites 0, 2, 3. Convenient in tests and logs.
  static Chromosome from_bits(std::string_view bits);

  std::size_t size() const { return size_; }

  bool test(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1; }

  void set(std::size_t j, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value) {
      words_[j >> 6] |= mask;
    } else {
      words_[j >> 6] &= ~mask;
    }
  }

  std::size_t popcount() const;
  std::vector<std::size_t> open_indices() const;
  std::string to_bits() const;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace pmedian

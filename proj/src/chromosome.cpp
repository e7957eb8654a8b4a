#include "pmedian/chromosome.hpp"

#include <bit>

#include "pmedian/errors.hpp"

namespace pmedian {

Chromosome::Chromosome(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

Chromosome Chromosome::from_open(std::size_t size, const std::vector<std::size_t>& open) {
  Chromosome c(size);
  for (std::size_t j : open) {
    if (j >= size) {
      throw DomainError("open site index out of range");
    }
    c.set(j, true);
  }
  return c;
}

Chromosome Chromosome::from_bits(std::string_view bits) {
  Chromosome c(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      c.set(j, true);
    } else if (bits[j] != '0') {
      throw DomainError("bit string must contain only 0 and 1");
    }
  }
  return c;
}

std::size_t Chromosome::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

std::vector<std::size_t> Chromosome::open_indices() const {
  std::vector<std::size_t> open;
  open.reserve(popcount());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      open.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return open;
}

std::string Chromosome::to_bits() const {
  std::string s(size_, '0');
  for (std::size_t j = 0; j < size_; ++j) {
    if (test(j)) s[j] = '1';
  }
  return s;
}

}  // namespace pmedian

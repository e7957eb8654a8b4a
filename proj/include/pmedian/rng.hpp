#pragma once

#include <cstdint>
#include <initializer_list>

namespace pmedian {

namespace detail {

// splitmix64 finalizer: full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Deterministic splitmix64 sequence. Independent components never share a
// sequence: each derives its own stream from the master seed plus an integer
// key path, so results cannot depend on scheduling or evaluation order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  static RandomStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> key) {
    std::uint64_t s = detail::mix64(master ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t k : key) {
      s = detail::mix64(s ^ detail::mix64(k + 0x9e3779b97f4a7c15ULL));
    }
    return RandomStream(s);
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(state_);
  }

  // Uniform in [0, bound), bound >= 1. Rejection keeps the draw exact when
  // bound does not divide 2^64.
  std::uint64_t below(std::uint64_t bound) {
    if ((bound & (bound - 1)) == 0) {
      return next() & (bound - 1);
    }
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t v = next();
    while (v < threshold) v = next();
    return v % bound;
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace pmedian

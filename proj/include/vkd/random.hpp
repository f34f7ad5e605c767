#pragma once

#include <cstdint>
#include <string_view>

namespace vkd {

// Counter-based SplitMix64: the k-th output is mix(seed + (k+1)*gamma), so a
// stream is fully determined by (seed, counter) on every platform. The
// standard library distributions are avoided because their output is not
// portable across implementations.
class SplitMix64 {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t operator()() {
    ++counter_;
    std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t const limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t r;
    do {
      r = (*this)();
    } while (r >= limit);
    return r % n;
  }

  std::uint64_t counter() const { return counter_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace vkd

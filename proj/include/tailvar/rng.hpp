#pragma once

#include <cstdint>

namespace tailvar {

// SplitMix64 finalizer (public domain constants).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based uniform stream: draw i of stream s under seed k is a pure
// function of (k, s, i), so blocks can be generated on any worker in any
// order with identical results.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : base_(splitmix64(seed ^ splitmix64(stream * 0x9E3779B97F4A7C15ULL +
                                           0xD1B54A32D192ED03ULL))) {}

  // uniform draw in the open interval (0,1)
  double uniform(std::uint64_t i) const {
    const std::uint64_t z = splitmix64(base_ + i * 0x9E3779B97F4A7C15ULL);
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t base_;
};

}  // namespace tailvar

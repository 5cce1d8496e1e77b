#pragma once

#include <cstdint>

namespace morreykit {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so parallel case execution stays reproducible. Core mixer is
// splitmix64.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t stream)
      : base_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next_u64() { return splitmix64(base_ + counter_++); }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace morreykit

#pragma once

#include <cstdint>

namespace gln {

/// SplitMix64 finalizer; full-avalanche 64-bit mixing.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Derive a child seed from (seed, a, b). Used to hand independent streams to
/// sub-computations (per trial, per row) without shared RNG state.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
  return mix64(mix64(seed + golden) ^ mix64(a * golden + 1) ^ mix64(b * golden + 2));
}

/// Counter-based random stream keyed by (seed, stream). The j-th output is a
/// pure function of (seed, stream, j), so any sample index can be regenerated
/// independently of execution order or thread scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(derive_seed(seed, stream)) {}

  std::uint64_t next_u64() {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    return mix64(base_ + golden * ++counter_);
  }

  /// Uniform double in the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; pairs are cached.
  double gaussian();

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace gln

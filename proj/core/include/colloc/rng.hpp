#pragma once

#include <cstdint>
#include <random>

namespace colloc {

/// All randomness in the toolkit flows through this wrapper around
/// std::mt19937_64. Draws are derived from the raw 64-bit output stream
/// only (never from distribution adaptors, whose algorithms vary between
/// standard libraries), so a given seed produces the same sequence on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, n). Requires n >= 1.
  std::size_t uniform_index(std::size_t n) {
    const auto idx = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return idx < n ? idx : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent sub-stream seeds from
/// one top-level seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace colloc

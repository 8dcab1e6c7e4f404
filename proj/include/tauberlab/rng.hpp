#pragma once
// Deterministic seed-splitting RNG.  One 64-bit master seed; every consumer derives
// an independent stream from (seed, label), so adding or reordering subtasks never
// perturbs the draws of another.  Core mixer is splitmix64.

#include <cstdint>
#include <string_view>

namespace tauberlab {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t state = 0;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state); }

  // 53-bit mantissa in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // Fixed-point multiply reduction: exactly one draw per call (no rejection loop),
  // so call counts are input-independent.  Bias is O(n/2^64), irrelevant here.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Inclusive on both ends.
  int uniform_int(int a, int b) {
    return a + static_cast<int>(below(static_cast<std::uint64_t>(b - a) + 1));
  }
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Independent stream for a named subtask.  Both the seed and the label hash pass
// through the splitmix finalizer, so streams stay decorrelated even for adjacent
// seeds like 0 and 1.
inline Rng stream(std::uint64_t seed, std::string_view label) {
  std::uint64_t s = seed;
  std::uint64_t mixed_seed = splitmix64_next(s);
  std::uint64_t t = mixed_seed ^ fnv1a64(label);
  return Rng(splitmix64_next(t));
}

}  // namespace tauberlab

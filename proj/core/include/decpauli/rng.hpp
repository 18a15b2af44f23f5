#pragma once

#include <cstdint>

namespace decpauli {

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream seed derived from a base seed, stable across runs and
/// independent of any work partitioning.
constexpr uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(stream * 0xD1B54A32D192ED03ULL + 1));
}

}  // namespace decpauli

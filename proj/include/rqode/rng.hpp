#pragma once

#include <cstdint>

namespace rqode {

// splitmix64 finalizer; decorrelates nearby keys.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic substream key: depends only on (a, b), never on call order,
// so results are identical under any evaluation schedule.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return splitmix64(a ^ (0x9E3779B97F4A7C15ULL + splitmix64(b)));
}

}  // namespace rqode

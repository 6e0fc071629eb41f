#ifndef DGKIT_UTIL_STABLE_HASH_H_
#define DGKIT_UTIL_STABLE_HASH_H_

#include <cstdint>
#include <string_view>

namespace dgkit {

// FNV-1a. Unlike std::hash the value is fixed across platforms and runs, so
// it can key reproducible random streams.
constexpr uint64_t StableHash(std::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<uint8_t>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// splitmix64 finalizer applied to the combination of two 64-bit values.
constexpr uint64_t MixSeed(uint64_t seed, uint64_t key) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (key + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace dgkit

#endif  // DGKIT_UTIL_STABLE_HASH_H_

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lp {

// splitmix64; used to derive independent sub-seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed for a named purpose (e.g. "split", "cocluster") plus an index.
// All randomness in a benchmark run flows from the master seed through here.
inline std::uint64_t deriveSeed(std::uint64_t master, std::string_view purpose,
                                std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ fnv1a(purpose)) ^ index);
}

using Rng = std::mt19937_64;

}  // namespace lp

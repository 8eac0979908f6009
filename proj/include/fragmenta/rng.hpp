#pragma once

#include <cstdint>
#include <random>

namespace fragmenta {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic stream derivation: seed -> (command, sector, realization) lanes.
inline std::mt19937_64 derive_rng(uint64_t seed, uint64_t lane0, uint64_t lane1 = 0,
                                  uint64_t lane2 = 0) {
    uint64_t s = splitmix64(seed ^ splitmix64(lane0));
    s = splitmix64(s ^ splitmix64(lane1 + 0x736f6d6570736575ULL));
    s = splitmix64(s ^ splitmix64(lane2 + 0x646f72616e646f6dULL));
    return std::mt19937_64(s);
}

}  // namespace fragmenta

#pragma once

#include <cstdint>
#include <random>

namespace mq {

// splitmix64; used to derive independent child seeds from a root seed so
// randomized trials can run concurrently yet stay reproducible.
inline uint64_t mix_seed(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t root, uint64_t index) {
    return mix_seed(root ^ mix_seed(index + 1));
}

using Rng = std::mt19937_64;

inline bool coin(Rng& rng) { return (rng() >> 32) & 1ULL; }

}  // namespace mq

#pragma once

#include <cstdint>
#include <random>

namespace folkreg {

/// splitmix64 step; used to derive independent per-pair / per-round seeds
/// from one base seed so results do not depend on evaluation order.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    return mix64(mix64(mix64(base ^ mix64(a)) ^ mix64(b)) ^ mix64(c));
}

/// Bounded draw that does not go through std::uniform_int_distribution, whose
/// output differs across standard library implementations.
inline int draw_below(std::mt19937_64& rng, int bound) {
    return bound <= 1 ? 0 : static_cast<int>(rng() % static_cast<uint64_t>(bound));
}

/// Uniform draw in [lo, hi] inclusive.
inline int draw_range(std::mt19937_64& rng, int lo, int hi) {
    return lo + draw_below(rng, hi - lo + 1);
}

} // namespace folkreg

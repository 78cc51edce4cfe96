#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ridgelab {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

/// Derives an independent stream seed from a master seed and a tuple of
/// integer labels: h <- splitmix64(h ^ label) folded left to right,
/// starting from h = splitmix64(master).
inline std::uint64_t split_seed(std::uint64_t master, std::initializer_list<std::uint64_t> labels) noexcept {
    std::uint64_t h = splitmix64(master);
    for (auto l : labels) h = splitmix64(h ^ l);
    return h;
}

/// Uniform double in [0, 1) built from the top 53 bits, identical on every platform.
inline double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection on the raw 64-bit stream.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace ridgelab

#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace swarm {

// All randomness flows through mt19937_64 streams derived with splitmix64.
// Raw 64-bit draws are mapped to doubles by hand so that results depend only
// on the engine, not on the standard library's distribution internals.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
    return splitmix64(a ^ splitmix64(b));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    return mix_seed(mix_seed(a, b), c);
}

inline Rng make_stream(std::uint64_t seed)
{
    return Rng(splitmix64(seed));
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

// True with probability p. Consumes exactly one draw.
inline bool chance(Rng& rng, double p)
{
    return uniform01(rng) < p;
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
    assert(bound > 0);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

} // namespace swarm

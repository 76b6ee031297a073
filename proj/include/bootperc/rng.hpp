// Seeded randomness helpers shared by the generators and the Monte Carlo code.
//
// Every stochastic routine in the library draws from std::mt19937_64 seeded
// explicitly by the caller, and converts raw 64-bit outputs to doubles with
// the 53-bit trick, so a fixed seed reproduces results exactly. Substreams
// are derived with splitmix64 so that trials indexed by (stream, member) are
// decorrelated and independent of scheduling order.
#pragma once

#include <cstdint>
#include <random>

namespace bootperc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed for substream (stream, member) under a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t member) {
    return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ splitmix64(~member));
}

// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace bootperc

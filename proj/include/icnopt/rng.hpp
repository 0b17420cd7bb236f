#ifndef ICNOPT_RNG_HPP
#define ICNOPT_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace icnopt {

/// splitmix64 finalizer; decorrelates seeds that differ in a few bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derives an independent, reproducible stream seed from a master seed and a
/// textual key (e.g. "Ellipsoid/10/icn/3/train").
inline std::uint64_t sub_seed(std::uint64_t master, std::string_view key) {
    return mix64(master ^ fnv1a(key));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

} // namespace icnopt

#endif

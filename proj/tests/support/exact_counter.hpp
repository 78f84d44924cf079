#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "dphh/types.hpp"

namespace dphh::testing {

// Ordered exact counts, independent of the library's hash-based counters.
inline std::map<Label, std::uint64_t> count_exact(StreamView s) {
    std::map<Label, std::uint64_t> f;
    for (Label x : s) ++f[x];
    return f;
}

inline Stream uniform_stream(std::mt19937_64& rng, std::size_t length, std::size_t universe) {
    std::uniform_int_distribution<Label> d(0, universe - 1);
    Stream s(length);
    for (auto& x : s) x = d(rng);
    return s;
}

// Labels with geometric-ish popularity so heavy hitters exist.
inline Stream skewed_stream(std::mt19937_64& rng, std::size_t length, std::size_t universe) {
    std::geometric_distribution<Label> d(0.15);
    Stream s(length);
    for (auto& x : s) x = d(rng) % universe;
    return s;
}

}  // namespace dphh::testing

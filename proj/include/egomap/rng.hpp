#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace egomap {

// All randomness in the pipeline flows through these helpers on top of
// std::mt19937_64 (whose output sequence is fixed by the standard).
// std::uniform_*_distribution is implementation-defined, so we map raw
// draws ourselves to keep outputs bit-identical across toolchains.

inline double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa draw in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Modulo bias is irrelevant here (n << 2^64).
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace egomap

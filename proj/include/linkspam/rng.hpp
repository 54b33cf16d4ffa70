#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace linkspam {

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// Used instead of std::uniform_real_distribution so that seeded sequences
// are identical across standard library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n). n must be > 0.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    auto i = static_cast<std::size_t>(uniform_unit(rng) * static_cast<double>(n));
    return i < n ? i : n - 1;
}

// Uniform integer in [lo, hi] inclusive.
inline std::size_t uniform_range(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + uniform_index(rng, hi - lo + 1);
}

// In-place Fisher-Yates shuffle with a pinned sequence.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[uniform_index(rng, i)]);
    }
}

} // namespace linkspam

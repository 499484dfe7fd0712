#pragma once

#include <cstdint>
#include <string_view>

#include "treeharm/psdo.hpp"

namespace treeharm {

/// SplitMix64: the fixed 64-bit generator behind every seeded test family.
/// state += 0x9E3779B97F4A7C15; z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
/// z = (z ^ z>>27) * 0x94D049BB133111EB; output z ^ z>>31.
/// Uniform doubles take the top 53 bits: (z >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform01() - 1.0; }
    Complex complex_symmetric() {
        const double re = symmetric();
        return {re, symmetric()};
    }

private:
    std::uint64_t state_;
};

/// FNV-1a over the bytes of s.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Substream seed for a named check: fnv1a64(tag) XOR master.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    return fnv1a64(tag) ^ master;
}

/// Vertex values drawn in index order, real part before imaginary part,
/// each uniform in [-1, 1).
inline TreeFunction random_tree_function(const TreeBall& ball, SplitMix64& rng) {
    auto f = TreeFunction::zero(ball);
    for (auto& v : f.values) v = rng.complex_symmetric();
    return f;
}

/// Pairs drawn in order; within a pair f_k before g_k.
inline NuclearDecomposition random_decomposition(const TreeBall& ball, int pairs, SplitMix64& rng) {
    NuclearDecomposition dec;
    dec.pairs.reserve(static_cast<std::size_t>(pairs));
    for (int k = 0; k < pairs; ++k) {
        auto f = random_tree_function(ball, rng);
        auto g = random_tree_function(ball, rng);
        dec.pairs.emplace_back(std::move(f), std::move(g));
    }
    return dec;
}

/// Dense n-by-n complex matrix filled row-major.
inline KernelMatrix random_kernel(int n, SplitMix64& rng) {
    KernelMatrix K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) K(i, j) = rng.complex_symmetric();
    return K;
}

}  // namespace treeharm

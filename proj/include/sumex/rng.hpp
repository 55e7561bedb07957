#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace sumex {

// Deterministic random source. mt19937_64 has a standard-mandated output
// sequence, and all bounded draws below avoid std::uniform_*_distribution
// (whose algorithms are implementation-defined), so every seeded run is
// reproducible across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, bound) via rejection sampling; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // k distinct values from {0, ..., n-1} by partial Fisher-Yates,
    // returned sorted ascending.
    std::vector<int> sample_indices(int n, int k) {
        if (k < 0 || k > n) throw std::invalid_argument("sample size out of range");
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        for (int j = 0; j < k; ++j) {
            const auto r = j + static_cast<int>(below(static_cast<std::uint64_t>(n - j)));
            std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(r)]);
        }
        idx.resize(static_cast<std::size_t>(k));
        std::sort(idx.begin(), idx.end());
        return idx;
    }

private:
    std::mt19937_64 eng_;
};

// splitmix64 finalizer; used to derive independent seeds from a master seed
// plus structural coordinates (cell, run, method).
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (auto p : parts) h = mix_seed(h ^ p);
    return h;
}

} // namespace sumex

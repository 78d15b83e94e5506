#pragma once

#include <cstdint>
#include <vector>

namespace cesaro {

/// Small deterministic generator (splitmix64). Used for randomized property
/// sweeps only; results are reproducible across platforms for a fixed seed,
/// unlike the standard <random> distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection-free modulo; bias is negligible
    /// for the small n used here but we reject to stay exact.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    /// Sorted sample of `j` distinct values from {0, ..., m-1}
    /// (Floyd's algorithm followed by an insertion sort).
    std::vector<std::size_t> increasing_sample(std::size_t m, std::size_t j) {
        std::vector<std::size_t> out;
        out.reserve(j);
        for (std::size_t t = m - j; t < m; ++t) {
            std::size_t v = static_cast<std::size_t>(below(t + 1));
            bool present = false;
            for (std::size_t x : out) present = present || (x == v);
            out.push_back(present ? t : v);
        }
        for (std::size_t a = 1; a < out.size(); ++a) {
            std::size_t v = out[a];
            std::size_t b = a;
            while (b > 0 && out[b - 1] > v) {
                out[b] = out[b - 1];
                --b;
            }
            out[b] = v;
        }
        return out;
    }

private:
    std::uint64_t state_;
};

} // namespace cesaro

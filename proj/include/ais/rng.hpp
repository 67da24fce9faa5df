#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ais {

// Deterministic random source backed by std::mt19937_64. The helper
// draws are hand-rolled instead of using std::uniform_*_distribution,
// whose output sequences are not pinned by the standard; identical
// seeds must give identical sequences on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform in [-1, 1].
    double uniform_signed() { return 2.0 * uniform01() - 1.0; }

    // Uniform integer in [0, n), n >= 1. Rejection sampling keeps the
    // result unbiased and platform-independent.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Independent child stream; the splitmix64 finalizer decorrelates
    // consecutive indices.
    RandomSource derive(std::uint64_t index) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return RandomSource(z ^ (z >> 31));
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

// FNV-1a over a byte string; used to derive per-experiment-cell seeds
// from human-readable keys.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace ais

#pragma once

#include <cstdint>

namespace wv {

// SplitMix64. Streams for distinct sample indices are derived from
// (seed, index) so that serial and parallel sweeps visit identical points.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

inline std::uint64_t split_stream(std::uint64_t seed, std::uint64_t index, std::uint32_t salt = 0) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)) ^ (0xda942042e4dd58b5ULL * salt));
    return g.next();
}

// Default sampling seed ("WALK" in ASCII).
inline constexpr std::uint64_t kDefaultSeed = 0x57414C4BULL;

} // namespace wv

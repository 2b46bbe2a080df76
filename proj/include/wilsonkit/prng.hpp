#pragma once

#include <cstdint>

namespace wilsonkit {

// splitmix64: the single documented PRNG behind every seeded draw, so that
// reports are bit-reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    int uniform_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // deterministic per-trial substream
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0xA24BAED4963EE407ULL * (index + 1)));
        return g.next_u64();
    }

private:
    std::uint64_t state_;
};

}  // namespace wilsonkit

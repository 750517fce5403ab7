#ifndef MATCOUNT_RNG_HPP
#define MATCOUNT_RNG_HPP

#include <cstdint>

namespace matcount {

// SplitMix64. Used instead of std::mt19937 + distributions so that
// seeded generation is bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is negligible for the small ranges
    // used here and keeps the stream platform-independent.
    uint64_t below(uint64_t n) { return next() % n; }

    // Uniform in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

private:
    uint64_t state_;
};

} // namespace matcount

#endif

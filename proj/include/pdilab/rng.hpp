#pragma once

#include <cstdint>

namespace pdilab {

// 64-bit finalizer (splitmix64). Used both as a hash for stream keying and
// as the output function of the per-trial generator.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Counter-based substream keyed by (seed, stream, index). Two substreams with
// different keys are statistically independent; the same key always produces
// the same sequence, so trial-level parallelism cannot change results.
class SubStream {
public:
    SubStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : state_(mix64(seed + 0x9e3779b97f4a7c15ULL * (mix64(stream) + mix64(index)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // uniform in (0, 1]
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal, Box-Muller
    double next_normal();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace pdilab
